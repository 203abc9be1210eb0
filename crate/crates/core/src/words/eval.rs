use std::collections::HashMap;

use rustc_hash::FxHashMap;

use super::{CommutatorExpr, FreeWord, WordError};
use crate::groups::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Load(usize),
    Comm(usize, usize),
    Pow(usize, i64),
}

/// Straight-line evaluation code for an expression. Repeated subtrees
/// (W_n contains W_{n-1} twice) are computed once.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
    variables: Vec<u32>,
}

impl Program {
    pub fn compile(expr: &CommutatorExpr) -> Program {
        let variables = expr.variables();
        let mut ops = Vec::new();
        let mut seen = FxHashMap::default();
        emit(expr, &variables, &mut ops, &mut seen);
        Program { ops, variables }
    }

    /// Distinct variable indices, ascending. Assignments passed to
    /// [`Program::run`] are indexed by position in this list.
    pub fn variables(&self) -> &[u32] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `scratch` is reused across calls to avoid allocation in sweeps.
    pub fn run(&self, group: &FiniteGroup, assignment: &[usize], scratch: &mut Vec<usize>) -> usize {
        scratch.clear();
        for op in &self.ops {
            let value = match *op {
                Op::Load(slot) => assignment[slot],
                Op::Comm(a, b) => group.comm(scratch[a], scratch[b]),
                Op::Pow(a, k) => group.pow(scratch[a], k),
            };
            scratch.push(value);
        }
        *scratch.last().expect("programs are nonempty")
    }
}

fn emit(expr: &CommutatorExpr, variables: &[u32], ops: &mut Vec<Op>, seen: &mut FxHashMap<Op, usize>) -> usize {
    let op = match expr {
        CommutatorExpr::Var(i) => Op::Load(variables.binary_search(i).expect("variable collected")),
        CommutatorExpr::Comm(a, b) => {
            let a = emit(a, variables, ops, seen);
            let b = emit(b, variables, ops, seen);
            Op::Comm(a, b)
        }
        CommutatorExpr::Pow(a, k) => Op::Pow(emit(a, variables, ops, seen), *k),
    };
    *seen.entry(op).or_insert_with(|| {
        ops.push(op);
        ops.len() - 1
    })
}

fn check_assignment(
    variables: &[u32],
    assignment: &HashMap<u32, usize>,
    group: &FiniteGroup,
) -> Result<Vec<usize>, WordError> {
    variables
        .iter()
        .map(|v| {
            let &g = assignment.get(v).ok_or(WordError::MissingVariable(*v))?;
            if g >= group.order() {
                return Err(WordError::ElementOutOfRange { index: g, order: group.order() });
            }
            Ok(g)
        })
        .collect()
}

/// Value of `expr` at `assignment` (variable index → element index of `group`).
pub fn evaluate(
    expr: &CommutatorExpr,
    assignment: &HashMap<u32, usize>,
    group: &FiniteGroup,
) -> Result<usize, WordError> {
    let program = Program::compile(expr);
    let slots = check_assignment(program.variables(), assignment, group)?;
    Ok(program.run(group, &slots, &mut Vec::new()))
}

/// Letter-by-letter evaluation of an expanded word.
pub fn evaluate_expanded(
    word: &FreeWord,
    assignment: &HashMap<u32, usize>,
    group: &FiniteGroup,
) -> Result<usize, WordError> {
    let mut acc = group.identity();
    for letter in word.letters() {
        let &g = assignment.get(&letter.generator).ok_or(WordError::MissingVariable(letter.generator))?;
        if g >= group.order() {
            return Err(WordError::ElementOutOfRange { index: g, order: group.order() });
        }
        let g = if letter.inverse { group.inv(g) } else { g };
        acc = group.mul(acc, g);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make, Construction};
    use crate::groups::{GroupElement, Permutation};
    use crate::words::{build_engel, build_w, expand};

    fn perm(images: &[u16]) -> GroupElement {
        GroupElement::Perm(Permutation::from_one_based(images).unwrap())
    }

    #[test]
    fn w1_on_two_transpositions_is_a_three_cycle() {
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        let t = s3.index_of(&perm(&[2, 1, 3])).unwrap();
        let s = s3.index_of(&perm(&[1, 3, 2])).unwrap();
        let a = HashMap::from([(1, t), (2, s)]);
        let value = evaluate(&build_w(1).unwrap(), &a, &s3).unwrap();
        assert_ne!(value, s3.identity());
        assert_eq!(s3.element_order(value), 3);
        assert_eq!(evaluate_expanded(&expand(&build_w(1).unwrap()), &a, &s3).unwrap(), value);
    }

    #[test]
    fn commutators_vanish_in_abelian_groups() {
        let c8 = make(&Construction::Cyclic(8)).unwrap();
        for g in 0..8 {
            let a = HashMap::from([(1, g), (2, (g * 3 + 1) % 8), (3, 5)]);
            assert_eq!(evaluate(&build_w(2).unwrap(), &a, &c8).unwrap(), 0);
        }
    }

    #[test]
    fn two_engel_holds_in_class_two() {
        let q8 = make(&Construction::Quaternion(8)).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let a = HashMap::from([(1, x), (2, y)]);
                assert_eq!(evaluate(&build_engel(2), &a, &q8).unwrap(), 0);
            }
        }
    }

    #[test]
    fn missing_variable_is_named() {
        let c3 = make(&Construction::Cyclic(3)).unwrap();
        let a = HashMap::from([(1, 1)]);
        assert_eq!(evaluate(&build_w(1).unwrap(), &a, &c3), Err(WordError::MissingVariable(2)));
    }

    #[test]
    fn shared_subtrees_compile_once() {
        let p = Program::compile(&build_w(3).unwrap());
        // 4 loads + 3 commutators per level
        assert_eq!(p.len(), 4 + 3 * 3);
    }
}
