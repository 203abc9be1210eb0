//! Tuple sweeps: law checking, `N_c^(d)` membership, and Engel degree.
//!
//! Exhaustive sweeps enumerate assignments lexicographically (first variable
//! most significant) and always report the lexicographically least witness,
//! whatever the execution strategy. Sampled sweeps draw element indices from
//! xoshiro256++ seeded through SplitMix64 (`Xoshiro256PlusPlus::seed_from_u64`),
//! taking `next_u64() % |G|` for each coordinate in order.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rustc_hash::FxHashMap;

use super::{FiniteGroup, GroupError, SubgroupHandle};
use crate::par::{self, Exec};
use crate::words::{CommutatorExpr, Program};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Largest number of tuples an exhaustive sweep may visit.
    pub budget: u64,
    pub exec: Exec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { budget: DEFAULT_BUDGET, exec: Exec::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawMode {
    Exhaustive,
    /// Exhaustive, with the first variable restricted to conjugacy class
    /// representatives. Verdicts and witnesses agree with `Exhaustive`: the
    /// least counterexample always starts with a representative, since a
    /// representative is the smallest member of its class.
    UpToConjugacy,
    Sample {
        count: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawVerdict {
    /// No counterexample among `examined` assignments. When `sampled` is
    /// set this is evidence, not proof.
    Holds { examined: u64, sampled: bool },
    /// Variable index and element index per occurring variable.
    Counterexample { assignment: Vec<(u32, usize)>, examined: u64 },
}

impl LawVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LawVerdict::Holds { .. })
    }

    pub fn examined(&self) -> u64 {
        match self {
            LawVerdict::Holds { examined, .. } | LawVerdict::Counterexample { examined, .. } => *examined,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyClass {
    Class(usize),
    /// Some `d`-generated subgroup is not nilpotent.
    NotNilpotent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyOutcome {
    pub class: VarietyClass,
    /// A tuple attaining the reported class (or generating a non-nilpotent subgroup).
    pub witness: Vec<usize>,
    pub examined: u64,
    /// `false` for sampled runs, where a numeric class is only a lower bound.
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngelDegree {
    Degree(usize),
    /// Some Engel chain did not reach the identity within the cap.
    NoneUpTo(usize),
}

fn sample_indices(seed: u64, count: u64, width: usize, n: usize) -> Vec<usize> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    (0..count as usize * width).map(|_| (rng.next_u64() % n as u64) as usize).collect()
}

/// Number of nondecreasing `d`-tuples over `n` values.
fn multiset_count(n: u128, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..d as u128 {
        acc = acc.saturating_mul(n + i) / (i + 1);
    }
    acc
}

impl FiniteGroup {
    /// Checks whether `expr = 1` holds for every (or every sampled) assignment.
    pub fn law_check(
        &self,
        expr: &CommutatorExpr,
        mode: LawMode,
        opts: &SweepOptions,
    ) -> Result<LawVerdict, GroupError> {
        let program = Program::compile(expr);
        let vars = program.variables().to_vec();
        let k = vars.len();
        let n = self.order();
        let witness = |tuple: Vec<usize>| vars.iter().copied().zip(tuple).collect::<Vec<_>>();
        match mode {
            LawMode::Exhaustive | LawMode::UpToConjugacy => {
                let firsts: Vec<usize> = match mode {
                    LawMode::UpToConjugacy => self.class_representatives(),
                    _ => (0..n).collect(),
                };
                let block = (n as u64).pow(k as u32 - 1);
                let total = firsts.len() as u128 * block as u128;
                if total > opts.budget as u128 {
                    return Err(GroupError::BudgetExceeded { work: total, budget: opts.budget });
                }
                let hit = par::find_first(opts.exec, firsts.len(), |slot| {
                    let mut tuple = vec![0usize; k];
                    tuple[0] = firsts[slot];
                    let mut scratch = Vec::with_capacity(program.len());
                    let mut rank = 0u64;
                    loop {
                        if program.run(self, &tuple, &mut scratch) != 0 {
                            return Some((tuple, rank));
                        }
                        rank += 1;
                        // odometer over coordinates 1..k, last fastest
                        let mut pos = k;
                        loop {
                            pos -= 1;
                            if pos == 0 {
                                return None;
                            }
                            tuple[pos] += 1;
                            if tuple[pos] < n {
                                break;
                            }
                            tuple[pos] = 0;
                        }
                    }
                });
                Ok(match hit {
                    Some((slot, (tuple, rank))) => LawVerdict::Counterexample {
                        assignment: witness(tuple),
                        examined: slot as u64 * block + rank + 1,
                    },
                    None => LawVerdict::Holds { examined: total as u64, sampled: false },
                })
            }
            LawMode::Sample { count, seed } => {
                let draws = sample_indices(seed, count, k, n);
                let hit = par::find_first(opts.exec, count as usize, |i| {
                    let tuple = &draws[i * k..(i + 1) * k];
                    (program.run(self, tuple, &mut Vec::new()) != 0).then(|| tuple.to_vec())
                });
                Ok(match hit {
                    Some((i, tuple)) => {
                        LawVerdict::Counterexample { assignment: witness(tuple), examined: i as u64 + 1 }
                    }
                    None => LawVerdict::Holds { examined: count, sampled: true },
                })
            }
        }
    }

    /// Minimal `c` with every `d`-generated subgroup nilpotent of class at
    /// most `c`.
    ///
    /// Tuples are taken as nondecreasing index sequences (a generated
    /// subgroup only depends on the set). When the whole group is nilpotent
    /// of class `c`, the sweep stops at the first tuple generating a class-`c`
    /// subgroup; when it is not nilpotent, at the first tuple generating a
    /// non-nilpotent subgroup. Otherwise every tuple is measured, each
    /// distinct generated subgroup once.
    pub fn variety_class(&self, d: usize, mode: LawMode, opts: &SweepOptions) -> Result<VarietyOutcome, GroupError> {
        if d == 0 {
            return Err(GroupError::InvalidParameter("variety_class needs d >= 1".into()));
        }
        match mode {
            LawMode::Exhaustive | LawMode::UpToConjugacy => self.variety_exhaustive(d, opts),
            LawMode::Sample { count, seed } => Ok(self.variety_sampled(d, count, seed, opts)),
        }
    }

    fn variety_exhaustive(&self, d: usize, opts: &SweepOptions) -> Result<VarietyOutcome, GroupError> {
        let n = self.order();
        let total = multiset_count(n as u128, d as u32);
        if total > opts.budget as u128 {
            return Err(GroupError::BudgetExceeded { work: total, budget: opts.budget });
        }
        // tuples with first coordinate < a
        let before = |a: usize| (total - multiset_count((n - a) as u128, d as u32)) as u64;

        let target: Option<Option<usize>> = match self.nilpotency_class() {
            Some(c) => Some(Some(c)),
            None if d >= 1 => Some(None),
            None => None,
        };
        if let Some(target) = target {
            let hit = par::find_first(opts.exec, n, |first| {
                let mut cache = FxHashMap::default();
                let mut found = None;
                let mut visited = 0u64;
                self.walk_tuples(first, d, &mut cache, &mut |tuple, class| {
                    visited += 1;
                    if class == target {
                        found = Some((tuple.to_vec(), visited));
                        false
                    } else {
                        true
                    }
                });
                found
            });
            if let Some((first, (tuple, visited))) = hit {
                let class = match target {
                    Some(c) => VarietyClass::Class(c),
                    None => VarietyClass::NotNilpotent,
                };
                return Ok(VarietyOutcome {
                    class,
                    witness: tuple,
                    examined: before(first) + visited,
                    exhaustive: true,
                });
            }
        }

        // full sweep: the maximum class, first tuple attaining it
        let blocks = par::map(opts.exec, n, |first| {
            let mut cache = FxHashMap::default();
            let mut best: Option<(Option<usize>, Vec<usize>)> = None;
            self.walk_tuples(first, d, &mut cache, &mut |tuple, class| {
                let better = match &best {
                    None => true,
                    Some((b, _)) => rank(class) > rank(*b),
                };
                if better {
                    best = Some((class, tuple.to_vec()));
                }
                true
            });
            best
        });
        let mut best: Option<(Option<usize>, Vec<usize>)> = None;
        for b in blocks.into_iter().flatten() {
            if best.as_ref().is_none_or(|(c, _)| rank(b.0) > rank(*c)) {
                best = Some(b);
            }
        }
        let (class, witness) = best.expect("at least one tuple");
        Ok(VarietyOutcome {
            class: class.map_or(VarietyClass::NotNilpotent, VarietyClass::Class),
            witness,
            examined: total as u64,
            exhaustive: true,
        })
    }

    /// Visits nondecreasing `d`-tuples starting with `first` in lexicographic
    /// order, passing the class of the generated subgroup. Stops when the
    /// visitor returns `false`.
    fn walk_tuples(
        &self,
        first: usize,
        d: usize,
        cache: &mut FxHashMap<SubgroupHandle, Option<usize>>,
        visit: &mut dyn FnMut(&[usize], Option<usize>) -> bool,
    ) {
        let mut tuple = vec![first];
        let prefix = self.generate(&[first]);
        self.walk_rest(&prefix, &mut tuple, d, cache, visit);
    }

    fn walk_rest(
        &self,
        prefix: &SubgroupHandle,
        tuple: &mut Vec<usize>,
        d: usize,
        cache: &mut FxHashMap<SubgroupHandle, Option<usize>>,
        visit: &mut dyn FnMut(&[usize], Option<usize>) -> bool,
    ) -> bool {
        if tuple.len() == d {
            let class = match cache.get(prefix) {
                Some(&c) => c,
                None => {
                    let c = self.nilpotency_class_of(prefix);
                    cache.insert(prefix.clone(), c);
                    c
                }
            };
            return visit(tuple, class);
        }
        let start = *tuple.last().expect("nonempty");
        for next in start..self.order() {
            let h = self.extend(prefix, next);
            tuple.push(next);
            let go_on = self.walk_rest(&h, tuple, d, cache, visit);
            tuple.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    fn variety_sampled(&self, d: usize, count: u64, seed: u64, opts: &SweepOptions) -> VarietyOutcome {
        let n = self.order();
        let draws = sample_indices(seed, count, d, n);
        let classes = par::map(opts.exec, count as usize, |i| {
            let tuple = &draws[i * d..(i + 1) * d];
            self.nilpotency_class_of(&self.generate(tuple))
        });
        let mut best = 0;
        for (i, c) in classes.iter().enumerate() {
            if rank(*c) > rank(classes[best]) {
                best = i;
            }
        }
        let class = classes.get(best).copied().flatten();
        VarietyOutcome {
            class: match (classes.is_empty(), class) {
                (true, _) => VarietyClass::Class(0),
                (false, Some(c)) => VarietyClass::Class(c),
                (false, None) => VarietyClass::NotNilpotent,
            },
            witness: if classes.is_empty() { Vec::new() } else { draws[best * d..(best + 1) * d].to_vec() },
            examined: count,
            exhaustive: false,
        }
    }

    /// Minimal `c` with `[x, y, ..., y] = 1` (`c` copies of `y`) for all
    /// `x, y`. Chains are iterated `h <- [h, y]`; `x` ranges over conjugacy
    /// class representatives since the condition is conjugation invariant.
    pub fn engel_degree(&self, cap: usize, opts: &SweepOptions) -> EngelDegree {
        let reps = self.class_representatives();
        let n = self.order();
        let per_rep = par::map_slice(opts.exec, &reps, |&x| {
            let mut worst = 0usize;
            for y in 0..n {
                let mut h = x;
                let mut k = 0;
                while h != 0 {
                    if k == cap {
                        return None;
                    }
                    h = self.comm(h, y);
                    k += 1;
                }
                worst = worst.max(k);
            }
            Some(worst)
        });
        per_rep
            .into_iter()
            .try_fold(0, |acc, r| r.map(|k| acc.max(k)))
            .map_or(EngelDegree::NoneUpTo(cap), EngelDegree::Degree)
    }
}

/// Orders classes with "not nilpotent" above every numeric class.
fn rank(class: Option<usize>) -> usize {
    class.unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make, Construction};
    use crate::words::{build_gamma_word, build_w, evaluate};
    use std::collections::HashMap;

    fn opts(exec: Exec) -> SweepOptions {
        SweepOptions { budget: DEFAULT_BUDGET, exec }
    }

    #[test]
    fn w1_fails_on_sym3_with_transposition_witness() {
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        let w1 = build_w(1).unwrap();
        let verdict = s3.law_check(&w1, LawMode::Exhaustive, &opts(Exec::Parallel)).unwrap();
        let LawVerdict::Counterexample { assignment, .. } = &verdict else { panic!("W_1 should fail on Sym(3)") };
        let names: Vec<String> = assignment.iter().map(|&(_, g)| s3.element(g).to_string()).collect();
        // least by element index: (1,2) is element 1, (1,3) precedes (2,3)
        assert_eq!(names, ["(1,2)", "(1,3)"]);
        let a: HashMap<u32, usize> = assignment.iter().copied().collect();
        assert_ne!(evaluate(&w1, &a, &s3).unwrap(), 0);
        let t = s3
            .index_of(&crate::groups::GroupElement::Perm(
                crate::groups::Permutation::from_cycles(3, &[&[1, 2]]).unwrap(),
            ))
            .unwrap();
        let s = s3
            .index_of(&crate::groups::GroupElement::Perm(
                crate::groups::Permutation::from_cycles(3, &[&[2, 3]]).unwrap(),
            ))
            .unwrap();
        let h = evaluate(&w1, &HashMap::from([(1, t), (2, s)]), &s3).unwrap();
        assert_eq!(s3.element_order(h), 3);
        assert_eq!(verdict, s3.law_check(&w1, LawMode::Exhaustive, &opts(Exec::Sequential)).unwrap());
        let reduced = s3.law_check(&w1, LawMode::UpToConjugacy, &opts(Exec::Parallel)).unwrap();
        assert_eq!(
            (reduced.holds(), &reduced),
            (false, &LawVerdict::Counterexample { assignment: assignment.clone(), examined: reduced.examined() })
        );
    }

    #[test]
    fn laws_that_hold() {
        let q8 = make(&Construction::Quaternion(8)).unwrap();
        let v = q8.law_check(&build_w(1).unwrap(), LawMode::Exhaustive, &opts(Exec::Parallel)).unwrap();
        assert_eq!(v, LawVerdict::Holds { examined: 64, sampled: false });
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        let v = s3.law_check(&build_w(2).unwrap(), LawMode::Exhaustive, &opts(Exec::Parallel)).unwrap();
        assert_eq!(v, LawVerdict::Holds { examined: 216, sampled: false });
        let v = s3.law_check(&build_w(2).unwrap(), LawMode::UpToConjugacy, &opts(Exec::Parallel)).unwrap();
        assert_eq!(v, LawVerdict::Holds { examined: 108, sampled: false });
    }

    #[test]
    fn budget_and_sampling() {
        let s4 = make(&Construction::Symmetric(4)).unwrap();
        let tight = SweepOptions { budget: 1000, exec: Exec::Parallel };
        let g5 = build_gamma_word(5).unwrap();
        assert!(matches!(s4.law_check(&g5, LawMode::Exhaustive, &tight), Err(GroupError::BudgetExceeded { .. })));
        let mode = LawMode::Sample { count: 500, seed: 7 };
        let a = s4.law_check(&build_w(1).unwrap(), mode, &tight).unwrap();
        let b = s4.law_check(&build_w(1).unwrap(), mode, &opts(Exec::Sequential)).unwrap();
        assert_eq!(a, b);
        assert!(!a.holds());
    }

    #[test]
    fn variety_classes() {
        let o = opts(Exec::Parallel);
        let q8 = make(&Construction::Quaternion(8)).unwrap();
        assert_eq!(q8.variety_class(2, LawMode::Exhaustive, &o).unwrap().class, VarietyClass::Class(2));
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        let out = s3.variety_class(2, LawMode::Exhaustive, &o).unwrap();
        assert_eq!(out.class, VarietyClass::NotNilpotent);
        assert_eq!(s3.nilpotency_class_of(&s3.generate(&out.witness)), None);
        // cyclic subgroups are abelian, so d = 1 never sees Sym(3) as non-nilpotent
        assert_eq!(s3.variety_class(1, LawMode::Exhaustive, &o).unwrap().class, VarietyClass::Class(1));
        let c9 = make(&Construction::Cyclic(9)).unwrap();
        assert_eq!(c9.variety_class(3, LawMode::Exhaustive, &o).unwrap().class, VarietyClass::Class(1));
        let seq = s3.variety_class(2, LawMode::Exhaustive, &opts(Exec::Sequential)).unwrap();
        assert_eq!(seq, out);
    }

    #[test]
    fn variety_class_full_sweep_on_d32_with_one_generator() {
        // d = 1 on a nilpotent non-cyclic group: no cyclic subgroup reaches
        // the group's class, so the full sweep runs
        let d16 = make(&Construction::Dihedral(16)).unwrap();
        let out = d16.variety_class(1, LawMode::Exhaustive, &opts(Exec::Parallel)).unwrap();
        assert_eq!(out.class, VarietyClass::Class(1));
        assert_eq!(out.examined, 16);
    }

    #[test]
    fn engel_degrees() {
        let o = opts(Exec::Parallel);
        assert_eq!(make(&Construction::Cyclic(8)).unwrap().engel_degree(10, &o), EngelDegree::Degree(1));
        assert_eq!(make(&Construction::Dihedral(8)).unwrap().engel_degree(10, &o), EngelDegree::Degree(2));
        assert_eq!(make(&Construction::Symmetric(3)).unwrap().engel_degree(50, &o), EngelDegree::NoneUpTo(50));
        assert_eq!(make(&Construction::Unitriangular(4, 3)).unwrap().engel_degree(10, &o), EngelDegree::Degree(3));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(5, 2), 15);
        assert_eq!(multiset_count(4, 3), 20);
        assert_eq!(multiset_count(7, 1), 7);
    }
}
