use std::fmt;

use super::CommutatorExpr;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        assert!(generator >= 1, "generator indices start at 1");
        Letter { generator, inverse }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// Reduces eagerly.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(index: u32) -> Self {
        FreeWord { letters: vec![Letter::new(index, false)] }
    }

    pub fn push(&mut self, letter: Letter) {
        if self.letters.last() == Some(&letter.inverted()) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[u, v] = u^-1 v^-1 u v`, reduced.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Expands an expression into the free group.
pub fn expand(expr: &CommutatorExpr) -> FreeWord {
    match expr {
        CommutatorExpr::Var(i) => FreeWord::generator(*i),
        CommutatorExpr::Comm(a, b) => expand(a).commutator(&expand(b)),
        CommutatorExpr::Pow(a, k) => expand(a).pow(*k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{build_gamma_word, build_w};

    fn l(g: u32, inv: bool) -> Letter {
        Letter::new(g, inv)
    }

    #[test]
    fn commutator_expands_to_four_letters() {
        let w = expand(&build_gamma_word(2).unwrap());
        assert_eq!(w.letters(), &[l(1, true), l(2, true), l(1, false), l(2, false)]);
        assert_eq!(w.to_string(), "x1^-1 x2^-1 x1 x2");
    }

    #[test]
    fn negative_power() {
        let w = expand(&CommutatorExpr::power(CommutatorExpr::var(1), -2));
        assert_eq!(w.letters(), &[l(1, true), l(1, true)]);
    }

    #[test]
    fn nested_commutator_reduces_interior() {
        // [[x1,x2],x1] = (x2^-1 x1^-1 x2 x1) x1^-1 (x1^-1 x2^-1 x1 x2) x1
        // ten letters before reduction; the interior x1 x1^-1 cancels, leaving 8.
        let e = CommutatorExpr::left_normed([CommutatorExpr::var(1), CommutatorExpr::var(2), CommutatorExpr::var(1)]);
        let w = expand(&e);
        assert_eq!(w.len(), 8);
        assert_eq!(w.to_string(), "x2^-1 x1^-1 x2 x1^-1 x2^-1 x1 x2 x1");
    }

    #[test]
    fn reduction_is_eager() {
        let w = FreeWord::from_letters([l(1, false), l(2, false), l(2, true), l(1, true)]);
        assert!(w.is_empty());
        assert_eq!(w.to_string(), "1");
        let x = FreeWord::generator(3);
        assert!(x.mul(&x.inverse()).is_empty());
        assert!(x.commutator(&x).is_empty());
        assert_eq!(expand(&build_w(1).unwrap()).inverse().inverse(), expand(&build_w(1).unwrap()));
    }
}
