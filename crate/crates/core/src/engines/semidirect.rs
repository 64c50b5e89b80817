use super::{check_pos, Engine, Registry};
use crate::algebra::{check_variety, Elem, FiniteSemigroup, Variety};
use crate::error::{Error, Result};

/// `T ∘ S` with `(t, s)(t', s') = (t · s⋅t', s s')`, where `S` acts on the
/// left of `T` by endomorphisms. Elements are coded `t * |S| + s`.
#[derive(Debug, Clone)]
pub struct SemidirectSpec {
    pub s: FiniteSemigroup,
    pub t: FiniteSemigroup,
    /// `act[s][t]`
    pub act: Vec<Vec<Elem>>,
}

impl SemidirectSpec {
    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.s, &self.t);
        if self.act.len() != s.size() || self.act.iter().any(|r| r.len() != t.size()) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        for a in s.elements() {
            for x in t.elements() {
                if self.act[a][x] >= t.size() {
                    return Err(Error::InvalidAction(format!("{}·{} is out of range", s.name(a), t.name(x))));
                }
                for y in t.elements() {
                    if self.act[a][t.mul(x, y)] != t.mul(self.act[a][x], self.act[a][y]) {
                        return Err(Error::InvalidAction(format!(
                            "{} does not act as an endomorphism on ({}, {})",
                            s.name(a),
                            t.name(x),
                            t.name(y)
                        )));
                    }
                }
                for b in s.elements() {
                    if self.act[a][self.act[b][x]] != self.act[s.mul(a, b)][x] {
                        return Err(Error::InvalidAction(format!(
                            "{}·({}·{}) differs from ({}{})·{}",
                            s.name(a),
                            s.name(b),
                            t.name(x),
                            s.name(a),
                            s.name(b),
                            t.name(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Least `k` such that every product `z` of `k` elements satisfies
    /// `y z = z` for all `y`; `None` when `S` is not definite.
    pub fn window(&self) -> Option<usize> {
        let s = &self.s;
        let mut level: Vec<bool> = vec![true; s.size()];
        for k in 1..=s.size() + 1 {
            let absorbing = s.elements().filter(|&z| level[z]).all(|z| s.elements().all(|y| s.mul(y, z) == z));
            if absorbing {
                return Some(k);
            }
            let mut next = vec![false; s.size()];
            for z in s.elements().filter(|&z| level[z]) {
                for a in s.elements() {
                    next[s.mul(z, a)] = true;
                }
            }
            level = next;
        }
        None
    }

    pub fn code(&self, t: Elem, s: Elem) -> Elem {
        t * self.s.size() + s
    }

    pub fn decode(&self, c: Elem) -> (Elem, Elem) {
        (c / self.s.size(), c % self.s.size())
    }

    /// Multiplication table of `T ∘ S`.
    pub fn table(&self) -> Result<FiniteSemigroup> {
        let n = self.t.size() * self.s.size();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let ((t1, s1), (t2, s2)) = (self.decode(x), self.decode(y));
                        self.code(self.t.mul(t1, self.act[s1][t2]), self.s.mul(s1, s2))
                    })
                    .collect()
            })
            .collect();
        let names = (0..n)
            .map(|x| {
                let (t, s) = self.decode(x);
                format!("({},{})", self.t.name(t), self.s.name(s))
            })
            .collect();
        FiniteSemigroup::with_names(table, names)
    }

    /// Right-zero `S = {a, b}` acting on `T = Z2 × Z2` by `a·(x, y) = (x, x)`
    /// and `b·(x, y) = (y, y)`.
    pub fn example() -> Self {
        let s = FiniteSemigroup::with_names(vec![vec![0, 1], vec![0, 1]], vec!["a".into(), "b".into()])
            .expect("right-zero law is associative");
        let names: Vec<String> = ["00", "01", "10", "11"].iter().map(|x| x.to_string()).collect();
        let t = FiniteSemigroup::with_names(
            (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect(),
            names,
        )
        .expect("Z2 x Z2 is associative");
        let proj = |bit: usize| -> Vec<Elem> {
            (0..4)
                .map(|v| {
                    let b = (v >> bit) & 1;
                    b * 2 + b
                })
                .collect()
        };
        SemidirectSpec { s, t, act: vec![proj(1), proj(0)] }
    }
}

/// Maintains `T ∘ S` for definite `S`: the `T`-word `t_i` is replaced by
/// `(s_0 ⋯ s_{i-1})·t_i`, and only the last `k` letters of the prefix matter.
pub struct SemidirectEngine {
    spec: SemidirectSpec,
    k: usize,
    ts: Vec<Elem>,
    ss: Vec<Elem>,
    inner: Box<dyn Engine>,
    ops: u64,
}

impl SemidirectEngine {
    pub fn new(spec: SemidirectSpec, word: &[Elem]) -> Result<Self> {
        spec.validate()?;
        let k = spec.window().ok_or_else(|| Error::InvalidAction("acting semigroup is not definite".into()))?;
        let size = spec.t.size() * spec.s.size();
        if let Some(&c) = word.iter().find(|&&c| c >= size) {
            return Err(Error::UnknownLetter(c.to_string()));
        }
        let (ts, ss): (Vec<Elem>, Vec<Elem>) = word.iter().map(|&c| spec.decode(c)).unzip();
        let registry = Registry::standard();
        let name = if check_variety(&spec.t, &Variety::Com) {
            "count"
        } else if spec.t.is_monoid() && check_variety(&spec.t, &Variety::Zg) {
            "zg"
        } else if check_variety(&spec.t, &Variety::Sg) {
            "sg"
        } else {
            "kary"
        };
        let twisted: Vec<Elem> = (0..word.len()).map(|i| twist(&spec, k, &ts, &ss, i)).collect();
        let inner = registry.build(name, &spec.t, &twisted)?;
        Ok(SemidirectEngine { spec, k, ts, ss, inner, ops: 0 })
    }

    pub fn window(&self) -> usize {
        self.k
    }

    /// Word held by the inner engine over `T`.
    pub fn inner_word(&self) -> Vec<Elem> {
        self.inner.word()
    }
}

fn twist(spec: &SemidirectSpec, k: usize, ts: &[Elem], ss: &[Elem], i: usize) -> Elem {
    if i == 0 {
        return ts[0];
    }
    let prefix = spec.s.eval(ss[i.saturating_sub(k)..i].iter().copied()).unwrap();
    spec.act[prefix][ts[i]]
}

impl Engine for SemidirectEngine {
    fn kind(&self) -> String {
        format!("semidirect({})", self.inner.kind())
    }

    fn len(&self) -> usize {
        self.ts.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.len())?;
        if letter >= self.spec.t.size() * self.spec.s.size() {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        let (t, s) = self.spec.decode(letter);
        self.ts[pos] = t;
        self.ss[pos] = s;
        for j in pos..(pos + self.k + 1).min(self.len()) {
            self.ops += self.k as u64;
            let u = twist(&self.spec, self.k, &self.ts, &self.ss, j);
            self.inner.update(j, u)?;
        }
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        let n = self.len();
        if n == 0 {
            return self.spec.table().ok().and_then(|t| t.identity());
        }
        self.ops += self.k as u64;
        let t = self.inner.query()?;
        let s = self.spec.s.eval(self.ss[n.saturating_sub(self.k)..].iter().copied()).unwrap();
        Some(self.spec.code(t, s))
    }

    fn ops(&self) -> u64 {
        self.ops + self.inner.ops()
    }

    fn word(&self) -> Vec<Elem> {
        self.ts.iter().zip(&self.ss).map(|(&t, &s)| self.spec.code(t, s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_is_valid_and_definite() {
        let spec = SemidirectSpec::example();
        spec.validate().unwrap();
        assert_eq!(spec.window(), Some(1));
        assert_eq!(spec.table().unwrap().size(), 8);
    }

    #[test]
    fn bad_action_rejected() {
        let mut spec = SemidirectSpec::example();
        spec.act[0][1] = 1;
        spec.act[0][2] = 1;
        assert!(matches!(spec.validate(), Err(Error::InvalidAction(_))));
    }
}
