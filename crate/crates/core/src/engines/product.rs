use super::{check_pos, Engine};
use crate::algebra::Elem;
use crate::error::{Error, Result};

/// Runs one engine per factor of a direct product. Letters are tuple codes in
/// mixed radix, first component most significant, matching
/// [`direct_product`](crate::algebra::direct_product).
pub struct ProductEngine {
    parts: Vec<Box<dyn Engine>>,
    sizes: Vec<usize>,
    ops: u64,
}

impl ProductEngine {
    pub fn new(parts: Vec<Box<dyn Engine>>, sizes: Vec<usize>) -> Result<Self> {
        if parts.len() != sizes.len() || parts.is_empty() {
            return Err(Error::TupleArity { expected: sizes.len(), got: parts.len() });
        }
        let n = parts[0].len();
        if let Some(p) = parts.iter().find(|p| p.len() != n) {
            return Err(Error::PositionOutOfRange { pos: p.len(), len: n });
        }
        Ok(ProductEngine { parts, sizes, ops: 0 })
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn encode(&self, tuple: &[Elem]) -> Result<Elem> {
        if tuple.len() != self.sizes.len() {
            return Err(Error::TupleArity { expected: self.sizes.len(), got: tuple.len() });
        }
        let mut code = 0;
        for (&c, &k) in tuple.iter().zip(&self.sizes) {
            if c >= k {
                return Err(Error::UnknownLetter(c.to_string()));
            }
            code = code * k + c;
        }
        Ok(code)
    }

    pub fn decode(&self, mut code: Elem) -> Vec<Elem> {
        let mut out = vec![0; self.sizes.len()];
        for (slot, &k) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = code % k;
            code /= k;
        }
        out
    }

    pub fn update_tuple(&mut self, pos: usize, tuple: &[Elem]) -> Result<()> {
        let code = self.encode(tuple)?;
        self.update(pos, code)
    }
}

impl Engine for ProductEngine {
    fn kind(&self) -> String {
        let names: Vec<String> = self.parts.iter().map(|p| p.kind()).collect();
        format!("product({})", names.join(","))
    }

    fn len(&self) -> usize {
        self.parts[0].len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.len())?;
        if letter >= self.sizes.iter().product() {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        let tuple = self.decode(letter);
        for (p, c) in self.parts.iter_mut().zip(tuple) {
            p.update(pos, c)?;
        }
        self.ops += 1;
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += 1;
        let mut code = 0;
        for (p, &k) in self.parts.iter_mut().zip(&self.sizes) {
            code = code * k + p.query()?;
        }
        Some(code)
    }

    fn ops(&self) -> u64 {
        self.ops + self.parts.iter().map(|p| p.ops()).sum::<u64>()
    }

    fn word(&self) -> Vec<Elem> {
        let words: Vec<Vec<Elem>> = self.parts.iter().map(|p| p.word()).collect();
        (0..self.len())
            .map(|i| words.iter().zip(&self.sizes).fold(0, |code, (w, &k)| code * k + w[i]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::engines::{CountEngine, NaiveEngine};
    use crate::gallery;

    #[test]
    fn componentwise() {
        let a = gallery::cyclic(2);
        let b = gallery::s3();
        let p = direct_product(&a, &b);
        let word: Vec<Elem> = (0..30).map(|i| (i * 5) % p.size()).collect();
        let wa: Vec<Elem> = word.iter().map(|&c| c / 6).collect();
        let wb: Vec<Elem> = word.iter().map(|&c| c % 6).collect();
        let parts: Vec<Box<dyn Engine>> =
            vec![Box::new(CountEngine::new(&a, &wa).unwrap()), Box::new(NaiveEngine::new(&b, &wb).unwrap())];
        let mut e = ProductEngine::new(parts, vec![2, 6]).unwrap();
        assert_eq!(e.word(), word);
        assert_eq!(e.query(), p.eval(word.iter().copied()));
        e.update_tuple(3, &[1, 4]).unwrap();
        let mut w2 = word.clone();
        w2[3] = 10;
        assert_eq!(e.query(), p.eval(w2.iter().copied()));
        assert_eq!(e.update_tuple(0, &[1]).unwrap_err(), Error::TupleArity { expected: 2, got: 1 });
    }
}
