//! Integer arithmetic expressions over named bindings, used to re-check the
//! norm chains stored in certificates.
//!
//! Grammar: `expr = term (('+' | '-') term)*`, `term = unary ('*' unary)*`,
//! `unary = '-' unary | power`, `power = atom ('^' digits)?`,
//! `atom = digits | ident | '(' expr ')'`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("trailing input at offset {0}")]
    Trailing(usize),
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("exponent must be a small nonnegative integer literal")]
    BadExponent,
}

pub type Bindings = BTreeMap<String, BigInt>;

pub fn evaluate(src: &str, bindings: &Bindings) -> Result<BigInt, ExprError> {
    let mut p = Parser {
        chars: src.char_indices().collect(),
        pos: 0,
        bindings,
    };
    let v = p.expr()?;
    p.skip_ws();
    match p.chars.get(p.pos) {
        None => Ok(v),
        Some(&(off, _)) => Err(ExprError::Trailing(off)),
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    bindings: &'a Bindings,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next non-space character.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn raw_peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<BigInt, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            if c == '+' {
                acc += rhs;
            } else {
                acc -= rhs;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BigInt, ExprError> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc *= self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BigInt, ExprError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<BigInt, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        let e: u32 = digits.parse().map_err(|_| ExprError::BadExponent)?;
        Ok(num_traits::pow(base, e as usize))
    }

    fn atom(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let &(off, c) = self.chars.get(self.pos).ok_or(ExprError::UnexpectedEnd)?;
        if c == '(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(')') {
                return match self.chars.get(self.pos) {
                    Some(&(o, ch)) => Err(ExprError::UnexpectedChar(ch, o)),
                    None => Err(ExprError::UnexpectedEnd),
                };
            }
            self.pos += 1;
            Ok(v)
        } else if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_digit());
            Ok(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            self.bindings
                .get(&name)
                .cloned()
                .ok_or(ExprError::Unbound(name))
        } else {
            Err(ExprError::UnexpectedChar(c, off))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.raw_peek().filter(|&c| f(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Bindings {
        pairs.iter().map(|&(k, v)| (k.to_string(), BigInt::from(v))).collect()
    }

    #[test]
    fn precedence_and_signs() {
        let b = env(&[("x", 3), ("dX", 6), ("n", 8)]);
        assert_eq!(evaluate("1 + 2*3", &b).unwrap(), BigInt::from(7));
        assert_eq!(evaluate("-x^2", &b).unwrap(), BigInt::from(-9));
        assert_eq!(evaluate("(n-1)*x^2 - dX", &b).unwrap(), BigInt::from(57));
        assert_eq!(evaluate("2*dX*(n-1)", &b).unwrap(), BigInt::from(84));
        assert_eq!(evaluate("2 - -1", &b).unwrap(), BigInt::from(3));
    }

    #[test]
    fn errors() {
        let b = env(&[]);
        assert_eq!(evaluate("y", &b), Err(ExprError::Unbound("y".into())));
        assert_eq!(evaluate("1 +", &b), Err(ExprError::UnexpectedEnd));
        assert_eq!(evaluate("(1", &b), Err(ExprError::UnexpectedEnd));
        assert_eq!(evaluate("1 2", &b), Err(ExprError::Trailing(2)));
        assert_eq!(evaluate("2^x", &b), Err(ExprError::BadExponent));
        assert_eq!(evaluate("2 % 3", &b), Err(ExprError::Trailing(2)));
        assert_eq!(evaluate("2 * %", &b), Err(ExprError::UnexpectedChar('%', 4)));
    }
}
