use crate::error::{Error, Result};

/// Regular expressions over letter ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    Empty,
    Epsilon,
    Literal(usize),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

/// Parses `+` (union), juxtaposition, postfix `*`, parentheses and `()` for
/// the empty word. Whitespace is ignored.
pub fn parse_regex(text: &str, alphabet: &[char]) -> Result<RegexAst> {
    let toks: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { toks, pos: 0, alphabet, end: text.len() };
    let ast = p.union()?;
    if let Some(&(at, c)) = p.toks.get(p.pos) {
        return Err(Error::Syntax { pos: at, msg: format!("unexpected `{c}`") });
    }
    Ok(ast)
}

struct Parser<'a> {
    toks: Vec<(usize, char)>,
    pos: usize,
    alphabet: &'a [char],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn union(&mut self) -> Result<RegexAst> {
        let mut left = self.concat()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let right = self.concat()?;
            left = RegexAst::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut acc: Option<RegexAst> = None;
        while let Some(c) = self.peek() {
            if c == '+' || c == ')' {
                break;
            }
            let item = self.star()?;
            acc = Some(match acc {
                None => item,
                Some(a) => RegexAst::Concat(Box::new(a), Box::new(item)),
            });
        }
        acc.ok_or_else(|| Error::Syntax { pos: self.here(), msg: "expected an expression".into() })
    }

    fn star(&mut self) -> Result<RegexAst> {
        let mut atom = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = RegexAst::Star(Box::new(atom));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<RegexAst> {
        let at = self.here();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                if self.peek() == Some(')') {
                    self.pos += 1;
                    return Ok(RegexAst::Epsilon);
                }
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::Syntax { pos: self.here(), msg: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('*') => Err(Error::Syntax { pos: at, msg: "`*` without operand".into() }),
            Some(c) => match self.alphabet.iter().position(|&a| a == c) {
                Some(id) => {
                    self.pos += 1;
                    Ok(RegexAst::Literal(id))
                }
                None => Err(Error::Syntax { pos: at, msg: format!("`{c}` is not in the alphabet") }),
            },
            None => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegexAst::*;

    fn b(r: RegexAst) -> Box<RegexAst> {
        Box::new(r)
    }

    #[test]
    fn a_star_b_star() {
        let ast = parse_regex("a*b*", &['a', 'b']).unwrap();
        assert_eq!(ast, Concat(b(Star(b(Literal(0)))), b(Star(b(Literal(1))))));
    }

    #[test]
    fn nested_groups() {
        let ast = parse_regex("(aa)*ba*", &['a', 'b']).unwrap();
        let aa = Concat(b(Literal(0)), b(Literal(0)));
        let expected = Concat(b(Concat(b(Star(b(aa))), b(Literal(1)))), b(Star(b(Literal(0)))));
        assert_eq!(ast, expected);
    }

    #[test]
    fn union_and_epsilon() {
        let ast = parse_regex("a + ()", &['a']).unwrap();
        assert_eq!(ast, Union(b(Literal(0)), b(Epsilon)));
    }

    #[test]
    fn syntax_errors() {
        let e = parse_regex("a**)", &['a']).unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: 3, .. }));
        assert!(matches!(parse_regex("(a", &['a']), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("ac", &['a']), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_regex("*", &['a']), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_regex("a+", &['a']), Err(Error::Syntax { .. })));
    }
}
