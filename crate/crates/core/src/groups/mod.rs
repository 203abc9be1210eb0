//! Fully enumerated finite groups and the subgroup machinery built on them.
//!
//! Every element of a [`FiniteGroup`] has an index; the identity is index 0
//! and the order is breadth-first from the identity, multiplying on the right
//! by the generators in the order given. All subgroup algebra runs on these
//! indices. Groups up to [`DEFAULT_TABLE_THRESHOLD`] elements carry a full
//! multiplication table; larger groups multiply by walking the right operand's
//! breadth-first generator word through the right-multiplication table.

mod element;
pub mod io;
mod power;
mod series;
mod subgroup;
mod sweep;

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use thiserror::Error;

pub use element::{Carrier, GroupElement, Permutation, UnitriangularMatrix};
pub use subgroup::SubgroupHandle;
pub use sweep::{EngelDegree, LawMode, LawVerdict, SweepOptions, VarietyClass, VarietyOutcome, DEFAULT_BUDGET};

pub const DEFAULT_TABLE_THRESHOLD: usize = 8192;
pub const DEFAULT_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("permutation images {0:?} do not form a bijection")]
    NotABijection(Vec<u16>),
    #[error("invalid unitriangular matrix: {0}")]
    BadMatrix(String),
    #[error("generators do not share one carrier kind and size")]
    MixedCarriers,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("group order exceeds cap {cap} (enumerated {partial} elements before stopping)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("element index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("sweep needs {work} evaluations, over the budget of {budget}; use sample mode")]
    BudgetExceeded { work: u128, budget: u64 },
    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("{0}")]
    InvalidParameter(String),
}

#[derive(Default, Clone)]
struct Caches {
    nilpotency_class: OnceLock<Option<usize>>,
    conjugacy_classes: OnceLock<Vec<Vec<u32>>>,
    fitting: OnceLock<SubgroupHandle>,
    element_orders: OnceLock<Vec<u64>>,
}

#[derive(Clone)]
pub struct FiniteGroup {
    generators: Vec<GroupElement>,
    generator_indices: Vec<usize>,
    elements: Vec<GroupElement>,
    lookup: FxHashMap<GroupElement, u32>,
    inverses: Vec<u32>,
    /// `right[a * gens + g]` = index of `a * generator_g`.
    right: Vec<u32>,
    /// Breadth-first generator word of each element, flattened.
    word_offsets: Vec<u32>,
    word_letters: Vec<u16>,
    table: Option<Vec<u32>>,
    caches: Caches,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .field("table", &self.table.is_some())
            .finish()
    }
}

/// Breadth-first closure of `generators` with the default table threshold.
pub fn close(generators: &[GroupElement], cap: usize) -> Result<FiniteGroup, GroupError> {
    close_with(generators, cap, DEFAULT_TABLE_THRESHOLD)
}

pub fn close_with(generators: &[GroupElement], cap: usize, table_threshold: usize) -> Result<FiniteGroup, GroupError> {
    let carrier = generators.first().ok_or(GroupError::NoGenerators)?.carrier();
    if generators.iter().any(|g| g.carrier() != carrier) {
        return Err(GroupError::MixedCarriers);
    }
    let identity = GroupElement::identity_of(carrier);
    let mut elements = vec![identity.clone()];
    let mut lookup = FxHashMap::default();
    lookup.insert(identity, 0u32);
    let mut right = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let product = elements[head].compose(g);
            let next = lookup.len() as u32;
            let idx = *lookup.entry(product.clone()).or_insert_with(|| {
                elements.push(product);
                next
            });
            right.push(idx);
            if elements.len() > cap {
                return Err(GroupError::CapExceeded { cap, partial: elements.len() - 1 });
            }
        }
        head += 1;
    }
    Ok(FiniteGroup::assemble(generators.to_vec(), elements, lookup, right, table_threshold))
}

impl FiniteGroup {
    /// Builds a group from an explicit element list (identity first). The
    /// list must be closed and generated by `generators`.
    pub fn from_elements(
        generators: Vec<GroupElement>,
        elements: Vec<GroupElement>,
        table_threshold: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        let carrier = first.carrier();
        if generators.iter().chain(&elements).any(|g| g.carrier() != carrier) {
            return Err(GroupError::MixedCarriers);
        }
        if !elements.first().is_some_and(|e| e.is_identity()) {
            return Err(GroupError::InvalidParameter("element list must start with the identity".into()));
        }
        let lookup: FxHashMap<GroupElement, u32> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        if lookup.len() != elements.len() {
            return Err(GroupError::InvalidParameter("element list has duplicates".into()));
        }
        let mut right = Vec::with_capacity(elements.len() * generators.len());
        for e in &elements {
            for g in &generators {
                right.push(*lookup.get(&e.compose(g)).ok_or(GroupError::NotClosed)?);
            }
        }
        let group = FiniteGroup::assemble(generators, elements, lookup, right, table_threshold);
        if group.word_offsets.len() != group.order() + 1 {
            return Err(GroupError::InvalidParameter("generators do not generate the element list".into()));
        }
        Ok(group)
    }

    fn assemble(
        generators: Vec<GroupElement>,
        elements: Vec<GroupElement>,
        lookup: FxHashMap<GroupElement, u32>,
        right: Vec<u32>,
        table_threshold: usize,
    ) -> FiniteGroup {
        let n = elements.len();
        let k = generators.len();

        // breadth-first words over the right-multiplication graph
        let mut parent = vec![u32::MAX; n];
        let mut via = vec![0u16; n];
        let mut order = vec![0u32];
        parent[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let a = order[head] as usize;
            for g in 0..k {
                let b = right[a * k + g] as usize;
                if parent[b] == u32::MAX {
                    parent[b] = a as u32;
                    via[b] = g as u16;
                    order.push(b as u32);
                }
            }
            head += 1;
        }
        let mut word_offsets = vec![0u32];
        let mut word_letters = Vec::new();
        if order.len() == n {
            let mut depth_word: Vec<Vec<u16>> = vec![Vec::new(); n];
            for &b in order.iter().skip(1) {
                let b = b as usize;
                let mut w = depth_word[parent[b] as usize].clone();
                w.push(via[b]);
                depth_word[b] = w;
            }
            for w in &depth_word {
                word_letters.extend_from_slice(w);
                word_offsets.push(word_letters.len() as u32);
            }
        }

        let generator_indices = generators.iter().map(|g| lookup[g] as usize).collect();
        let inverses = elements.iter().map(|e| lookup[&e.inverse()]).collect();
        let mut group = FiniteGroup {
            generators,
            generator_indices,
            elements,
            lookup,
            inverses,
            right,
            word_offsets,
            word_letters,
            table: None,
            caches: Caches::default(),
        };
        if n <= table_threshold && group.word_offsets.len() == n + 1 {
            let mut table = vec![0u32; n * n];
            // a * b = (a * parent(b)) * via(b), filled in breadth-first order of b
            for a in 0..n {
                table[a * n] = a as u32;
            }
            for &b in order.iter().skip(1) {
                let b = b as usize;
                let p = parent[b] as usize;
                let g = via[b] as usize;
                for a in 0..n {
                    let ap = table[a * n + p] as usize;
                    table[a * n + b] = group.right[ap * k + g];
                }
            }
            group.table = Some(table);
        }
        group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn carrier(&self) -> Carrier {
        self.elements[0].carrier()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn element(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, element: &GroupElement) -> Option<usize> {
        self.lookup.get(element).map(|&i| i as usize)
    }

    pub(crate) fn require_index(&self, element: &GroupElement) -> Result<usize, GroupError> {
        self.index_of(element).ok_or_else(|| GroupError::NotInGroup(element.to_string()))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.elements.len();
        if let Some(t) = &self.table {
            return t[a * n + b] as usize;
        }
        let k = self.generators.len();
        let start = self.word_offsets[b] as usize;
        let end = self.word_offsets[b + 1] as usize;
        self.word_letters[start..end].iter().fold(a, |acc, &g| self.right[acc * k + g as usize] as usize)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        if let Some(orders) = self.caches.element_orders.get() {
            return orders[a];
        }
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> &[u64] {
        self.caches.element_orders.get_or_init(|| {
            let mut orders = vec![0u64; self.order()];
            for (a, slot) in orders.iter_mut().enumerate() {
                *slot = self.element_order(a);
            }
            orders
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        self.caches.conjugacy_classes.get_or_init(|| {
            let n = self.order();
            let mut seen = vec![false; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                seen[start] = true;
                let mut class = vec![start as u32];
                let mut head = 0;
                while head < class.len() {
                    let a = class[head] as usize;
                    for &g in &self.generator_indices {
                        let c = self.conj(a, g);
                        if !seen[c] {
                            seen[c] = true;
                            class.push(c as u32);
                        }
                    }
                    head += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    /// Smallest index of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.conjugacy_classes().iter().map(|c| c[0] as usize).collect()
    }

    /// Distinct prime divisors of the order.
    pub fn order_primes(&self) -> Vec<u64> {
        let mut n = self.order() as u64;
        let mut primes = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                primes.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        primes
    }

    /// The prime `p` when the order is a nontrivial power of `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        match self.order_primes().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }
}
