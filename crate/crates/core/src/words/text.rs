//! Word grammar:
//!
//! ```text
//! expr := "x" N            variable, N >= 1
//!       | "(c" expr expr ")" commutator
//!       | "(p" expr k ")"    power, k a nonzero integer
//!       | "[" expr ("," expr)+ "]"   left-normed bracket
//! ```
//!
//! Whitespace is allowed between tokens. Error positions are 0-based
//! character offsets.

use super::{CommutatorExpr, WordError};

pub fn parse(text: &str) -> Result<CommutatorExpr, WordError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: &str) -> WordError {
        WordError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<(), WordError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(&format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(&format!("expected '{want}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn expr(&mut self) -> Result<CommutatorExpr, WordError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let start = self.pos;
                let n = self.integer()?;
                if n < 1 || n > u32::MAX as i64 {
                    self.pos = start;
                    return Err(self.error("variable index must be a positive integer"));
                }
                Ok(CommutatorExpr::Var(n as u32))
            }
            Some('(') => {
                self.pos += 1;
                match self.peek() {
                    Some('c') => {
                        self.pos += 1;
                        let a = self.expr()?;
                        let b = self.expr()?;
                        self.expect(')')?;
                        Ok(CommutatorExpr::commutator(a, b))
                    }
                    Some('p') => {
                        self.pos += 1;
                        let base = self.expr()?;
                        let start = self.pos;
                        let k = self.integer()?;
                        if k == 0 {
                            self.pos = start;
                            self.skip_ws();
                            return Err(self.error("power exponent must be nonzero"));
                        }
                        self.expect(')')?;
                        Ok(CommutatorExpr::power(base, k))
                    }
                    _ => Err(self.error("expected 'c' or 'p' after '('")),
                }
            }
            Some('[') => {
                self.pos += 1;
                let mut entries = vec![self.expr()?];
                loop {
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            entries.push(self.expr()?);
                        }
                        Some(']') => {
                            if entries.len() < 2 {
                                return Err(self.error("bracket needs at least two entries"));
                            }
                            self.pos += 1;
                            return Ok(CommutatorExpr::left_normed(entries));
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{build_v, build_w};

    #[test]
    fn sugar_and_prefix_forms_agree() {
        let sugar = parse("[x1,x2,x1,x2]").unwrap();
        assert_eq!(sugar, build_w(1).unwrap());
        let prefix = parse("(c (c (c x1 x2) x1) x2)").unwrap();
        assert_eq!(sugar, prefix);
    }

    #[test]
    fn power_form() {
        let e = parse("(c (p x1 4) x2)").unwrap();
        assert_eq!(
            e,
            CommutatorExpr::commutator(CommutatorExpr::power(CommutatorExpr::var(1), 4), CommutatorExpr::var(2))
        );
        assert_eq!(e.to_string(), "[(p x1 4),x2]");
        assert_eq!(parse(" ( p  x3  -2 ) ").unwrap().to_string(), "(p x3 -2)");
    }

    #[test]
    fn printer_round_trips() {
        for e in [build_w(2).unwrap(), build_v(1).unwrap(), parse("[(p [x1,x2] -3),x1,(p x4 2)]").unwrap()] {
            let text = e.to_string();
            assert_eq!(parse(&text).unwrap(), e);
            assert_eq!(parse(&text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse(s) {
            Err(WordError::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("x0"), 1);
        assert_eq!(pos("[x1]"), 3);
        assert_eq!(pos("(p x1 0)"), 6);
        assert_eq!(pos("[x1,x2"), 6);
        assert_eq!(pos("x1 x2"), 3);
        assert_eq!(pos("(q x1 x2)"), 1);
        assert_eq!(pos(""), 0);
    }
}
