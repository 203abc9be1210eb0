//! Commutator expressions over numbered variables.
//!
//! Brackets with more than two entries are left-normed throughout:
//! `[a, b, c, d]` means `[[[a, b], c], d]`, and `[u, v] = u^-1 v^-1 u v`.

mod eval;
mod free_word;
mod hall;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use eval::{evaluate, evaluate_expanded, Program};
pub use free_word::{expand, FreeWord, Letter};
pub use hall::hall_basic_commutators;
pub use text::parse;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("{family}_{n} is undefined for n = 0")]
    ZeroIndex { family: &'static str, n: usize },
    #[error("gamma word needs at least two entries, got {0}")]
    GammaTooShort(usize),
    #[error("assignment does not cover variable x{0}")]
    MissingVariable(u32),
    #[error("element index {index} is not in a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("parse error at character {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A commutator/power word. Variable indices start at 1; exponents are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CommutatorExpr {
    Var(u32),
    Comm(Box<CommutatorExpr>, Box<CommutatorExpr>),
    Pow(Box<CommutatorExpr>, i64),
}

impl CommutatorExpr {
    /// Panics if `index` is 0.
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        CommutatorExpr::Var(index)
    }

    pub fn commutator(left: CommutatorExpr, right: CommutatorExpr) -> Self {
        CommutatorExpr::Comm(Box::new(left), Box::new(right))
    }

    /// Panics if `exponent` is 0.
    pub fn power(base: CommutatorExpr, exponent: i64) -> Self {
        assert!(exponent != 0, "power exponent must be nonzero");
        CommutatorExpr::Pow(Box::new(base), exponent)
    }

    /// Left-normed bracket of two or more entries. A single entry is returned as is.
    ///
    /// Panics on an empty list.
    pub fn left_normed<I: IntoIterator<Item = CommutatorExpr>>(entries: I) -> Self {
        let mut it = entries.into_iter();
        let first = it.next().expect("left-normed bracket needs at least one entry");
        it.fold(first, CommutatorExpr::commutator)
    }

    /// Largest variable index occurring in the expression.
    pub fn var_count(&self) -> u32 {
        match self {
            CommutatorExpr::Var(i) => *i,
            CommutatorExpr::Comm(a, b) => a.var_count().max(b.var_count()),
            CommutatorExpr::Pow(a, _) => a.var_count(),
        }
    }

    /// Sorted list of variable indices that actually occur.
    pub fn variables(&self) -> Vec<u32> {
        self.letter_counts().into_keys().collect()
    }

    /// Leaf weights summed through commutator nodes; a power has the weight of its base.
    pub fn formal_weight(&self) -> usize {
        match self {
            CommutatorExpr::Var(_) => 1,
            CommutatorExpr::Comm(a, b) => a.formal_weight() + b.formal_weight(),
            CommutatorExpr::Pow(a, _) => a.formal_weight(),
        }
    }

    /// Per-variable letter count of the formal word, powers counted as
    /// bracketed in ([x, y] contributes one x and one y).
    pub fn letter_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        self.accumulate_letters(&mut out);
        out
    }

    fn accumulate_letters(&self, out: &mut BTreeMap<u32, usize>) {
        match self {
            CommutatorExpr::Var(i) => *out.entry(*i).or_insert(0) += 1,
            CommutatorExpr::Comm(a, b) => {
                a.accumulate_letters(out);
                b.accumulate_letters(out);
            }
            CommutatorExpr::Pow(a, _) => a.accumulate_letters(out),
        }
    }

    pub fn has_commutator(&self) -> bool {
        match self {
            CommutatorExpr::Var(_) => false,
            CommutatorExpr::Comm(..) => true,
            CommutatorExpr::Pow(a, _) => a.has_commutator(),
        }
    }

    /// Number of tree nodes, counting shared subtrees once per occurrence.
    pub fn node_count(&self) -> usize {
        match self {
            CommutatorExpr::Var(_) => 1,
            CommutatorExpr::Comm(a, b) => 1 + a.node_count() + b.node_count(),
            CommutatorExpr::Pow(a, _) => 1 + a.node_count(),
        }
    }
}

impl fmt::Display for CommutatorExpr {
    /// Prints in the word grammar: commutator chains use the left-normed
    /// `[A,B,...]` sugar, powers print as `(p A k)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutatorExpr::Var(i) => write!(f, "x{i}"),
            CommutatorExpr::Pow(base, k) => write!(f, "(p {base} {k})"),
            CommutatorExpr::Comm(..) => {
                let mut spine = Vec::new();
                let mut node = self;
                while let CommutatorExpr::Comm(left, right) = node {
                    spine.push(right.as_ref());
                    node = left;
                }
                write!(f, "[{node}")?;
                for entry in spine.iter().rev() {
                    write!(f, ",{entry}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn x(i: u32) -> CommutatorExpr {
    CommutatorExpr::var(i)
}

/// `W_1 = [x1,x2,x1,x2]`, `W_n = [W_{n-1}, x_{n+1}, W_{n-1}, x_{n+1}]`.
pub fn build_w(n: usize) -> Result<CommutatorExpr, WordError> {
    if n == 0 {
        return Err(WordError::ZeroIndex { family: "W", n });
    }
    let mut w = CommutatorExpr::left_normed([x(1), x(2), x(1), x(2)]);
    for k in 2..=n {
        let next = x(k as u32 + 1);
        w = CommutatorExpr::left_normed([w.clone(), next.clone(), w, next]);
    }
    Ok(w)
}

/// `V_1 = [E, x3, E, x3]` with `E = [x2,x1,x1,x1,x1]`, and
/// `V_n = [V_{n-1}, x_{n+2}, V_{n-1}, x_{n+2}]`.
pub fn build_v(n: usize) -> Result<CommutatorExpr, WordError> {
    if n == 0 {
        return Err(WordError::ZeroIndex { family: "V", n });
    }
    let e = CommutatorExpr::left_normed([x(2), x(1), x(1), x(1), x(1)]);
    let mut v = CommutatorExpr::left_normed([e.clone(), x(3), e, x(3)]);
    for k in 2..=n {
        let next = x(k as u32 + 2);
        v = CommutatorExpr::left_normed([v.clone(), next.clone(), v, next]);
    }
    Ok(v)
}

/// The `c`-Engel word `[x1, x2, ..., x2]` with `c` trailing copies of `x2`.
///
/// Panics if `c` is 0.
pub fn build_engel(c: usize) -> CommutatorExpr {
    assert!(c >= 1, "Engel words need c >= 1");
    CommutatorExpr::left_normed(std::iter::once(x(1)).chain(std::iter::repeat_n(x(2), c)))
}

/// `[x1, ..., xk]`, the defining law of class `k - 1`.
pub fn build_gamma_word(k: usize) -> Result<CommutatorExpr, WordError> {
    if k < 2 {
        return Err(WordError::GammaTooShort(k));
    }
    Ok(CommutatorExpr::left_normed((1..=k as u32).map(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_family_shapes() {
        let w1 = build_w(1).unwrap();
        assert_eq!(w1.to_string(), "[x1,x2,x1,x2]");
        assert_eq!(w1.var_count(), 2);
        assert_eq!(w1.formal_weight(), 4);
        let w2 = build_w(2).unwrap();
        // the left spine is flattened
        assert_eq!(w2.to_string(), "[x1,x2,x1,x2,x3,[x1,x2,x1,x2],x3]");
        assert_eq!(parse(&w2.to_string()).unwrap(), w2);
        assert_eq!(w2.var_count(), 3);
        assert_eq!(w2.formal_weight(), 10);
        assert_eq!(build_w(3).unwrap().formal_weight(), 22);
        assert!(matches!(build_w(0), Err(WordError::ZeroIndex { .. })));
    }

    #[test]
    fn w_and_v_weights_follow_closed_forms() {
        for n in 1..=10usize {
            let w = build_w(n).unwrap();
            assert_eq!(w.formal_weight(), (1 << (n + 1)) + (1 << n) - 2);
            assert_eq!(w.var_count() as usize, n + 1);
            let v = build_v(n).unwrap();
            assert_eq!(v.formal_weight(), (1 << (n + 2)) + (1 << (n + 1)) + (1 << n) - 2);
            assert_eq!(v.var_count() as usize, n + 2);
        }
        let mut w = 4;
        for n in 2..=10 {
            w = 2 * w + 2;
            assert_eq!(build_w(n).unwrap().formal_weight(), w);
        }
    }

    #[test]
    fn v_family_small_cases() {
        assert_eq!(build_v(1).unwrap().formal_weight(), 12);
        assert_eq!(build_v(2).unwrap().formal_weight(), 26);
        assert_eq!(build_v(3).unwrap().formal_weight(), 54);
        assert_eq!(build_v(2).unwrap().var_count(), 4);
        assert!(build_v(0).is_err());
        let counts = build_v(1).unwrap().letter_counts();
        assert_eq!(counts[&1], 8);
        assert_eq!(counts[&2], 2);
        assert_eq!(counts[&3], 2);
    }

    #[test]
    fn engel_and_gamma_words() {
        assert_eq!(build_engel(1).to_string(), "[x1,x2]");
        assert_eq!(build_engel(2).to_string(), "[x1,x2,x2]");
        assert_eq!(build_engel(4).formal_weight(), 5);
        assert_eq!(build_gamma_word(2).unwrap().to_string(), "[x1,x2]");
        assert_eq!(build_gamma_word(3).unwrap().to_string(), "[x1,x2,x3]");
        let g6 = build_gamma_word(6).unwrap();
        assert_eq!((g6.formal_weight(), g6.var_count()), (6, 6));
        assert_eq!(build_gamma_word(1), Err(WordError::GammaTooShort(1)));
    }

    #[test]
    fn power_weight_is_base_weight() {
        let e = CommutatorExpr::power(build_gamma_word(3).unwrap(), -5);
        assert_eq!(e.formal_weight(), 3);
        assert!(e.has_commutator());
        assert!(!CommutatorExpr::power(x(4), 2).has_commutator());
    }
}
