use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupElement, GroupError};

/// A subgroup of a [`FiniteGroup`] as a sorted set of element indices, with
/// witness generators that generate exactly that set.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    members: FixedBitSet,
    elements: Vec<u32>,
    generators: Vec<u32>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SubgroupHandle {}

impl Hash for SubgroupHandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl SubgroupHandle {
    fn from_members(members: FixedBitSet, generators: Vec<u32>) -> Self {
        let elements = members.ones().map(|i| i as u32).collect();
        SubgroupHandle { members, elements, generators }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    /// Sorted element indices.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.elements.iter().map(|&i| i as usize)
    }

    pub fn generators(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.generators.iter().map(|&i| i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl FiniteGroup {
    pub fn whole(&self) -> SubgroupHandle {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        let generators = self.generator_indices().iter().map(|&g| g as u32).collect();
        SubgroupHandle::from_members(members, generators)
    }

    pub fn trivial_subgroup(&self) -> SubgroupHandle {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        SubgroupHandle::from_members(members, Vec::new())
    }

    /// Subgroup generated by element indices.
    pub fn generate(&self, gens: &[usize]) -> SubgroupHandle {
        gens.iter().fold(self.trivial_subgroup(), |h, &g| self.extend(&h, g))
    }

    /// `<h, g>`; returns `h` unchanged when `g` is already a member.
    pub fn extend(&self, h: &SubgroupHandle, g: usize) -> SubgroupHandle {
        if h.contains(g) {
            return h.clone();
        }
        let mut generators = h.generators.clone();
        generators.push(g as u32);
        let mut members = h.members.clone();
        let mut queue: Vec<usize> = h.elements().collect();
        // old elements only need the new generator; new ones need all of them
        let mut head = 0;
        let old = queue.len();
        while head < queue.len() {
            let a = queue[head];
            let gens: &[u32] = if head < old { &generators[generators.len() - 1..] } else { &generators };
            for &s in gens {
                let b = self.mul(a, s as usize);
                if !members.put(b) {
                    queue.push(b);
                }
            }
            head += 1;
        }
        SubgroupHandle::from_members(members, generators)
    }

    pub fn join(&self, a: &SubgroupHandle, b: &SubgroupHandle) -> SubgroupHandle {
        b.generators().fold(a.clone(), |h, g| self.extend(&h, g))
    }

    fn indices_of(&self, elems: &[GroupElement]) -> Result<Vec<usize>, GroupError> {
        elems.iter().map(|e| self.require_index(e)).collect()
    }

    fn check_indices(&self, idx: &[usize]) -> Result<(), GroupError> {
        match idx.iter().find(|&&i| i >= self.order()) {
            Some(&i) => Err(GroupError::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Smallest subgroup containing `elems`.
    pub fn subgroup(&self, elems: &[GroupElement]) -> Result<SubgroupHandle, GroupError> {
        Ok(self.generate(&self.indices_of(elems)?))
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[GroupElement]) -> Result<SubgroupHandle, GroupError> {
        Ok(self.normal_closure_of(&self.indices_of(elems)?))
    }

    pub fn checked_normal_closure_of(&self, idx: &[usize]) -> Result<SubgroupHandle, GroupError> {
        self.check_indices(idx)?;
        Ok(self.normal_closure_of(idx))
    }

    /// Normal closure in the whole group of element indices.
    pub fn normal_closure_of(&self, idx: &[usize]) -> SubgroupHandle {
        let gens: Vec<usize> = self.generator_indices().to_vec();
        self.normal_closure_under(&gens, idx)
    }

    /// Normal closure of `idx` inside `ambient` (the smallest subgroup
    /// containing `idx` that is normalized by `ambient`).
    pub fn normal_closure_within(&self, ambient: &SubgroupHandle, idx: &[usize]) -> SubgroupHandle {
        let gens: Vec<usize> = ambient.generators().collect();
        self.normal_closure_under(&gens, idx)
    }

    fn normal_closure_under(&self, conjugators: &[usize], idx: &[usize]) -> SubgroupHandle {
        let mut h = self.generate(idx);
        let mut i = 0;
        while i < h.generators.len() {
            let x = h.generators[i] as usize;
            for &t in conjugators {
                let c = self.conj(x, t);
                if !h.contains(c) {
                    h = self.extend(&h, c);
                }
            }
            i += 1;
        }
        h
    }

    /// Whether `h` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, h: &SubgroupHandle, ambient: &SubgroupHandle) -> bool {
        h.generators().all(|x| ambient.generators().all(|t| h.contains(self.conj(x, t))))
    }

    pub fn is_normal(&self, h: &SubgroupHandle) -> bool {
        self.is_normal_in(h, &self.whole())
    }

    pub fn is_abelian_subgroup(&self, h: &SubgroupHandle) -> bool {
        let g: Vec<usize> = h.generators().collect();
        g.iter().enumerate().all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `[A, B]`, generated by all `[a, b]`. Computed as the normal closure in
    /// `<A, B>` of the commutators of witness generators.
    pub fn commutator_subgroup(&self, a: &SubgroupHandle, b: &SubgroupHandle) -> SubgroupHandle {
        let mut comms = Vec::new();
        for x in a.generators() {
            for y in b.generators() {
                let c = self.comm(x, y);
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        if comms.is_empty() {
            return self.trivial_subgroup();
        }
        let mut conjugators: Vec<usize> = a.generators().chain(b.generators()).collect();
        conjugators.sort_unstable();
        conjugators.dedup();
        self.normal_closure_under(&conjugators, &comms)
    }
}
