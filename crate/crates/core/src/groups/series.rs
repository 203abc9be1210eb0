use super::{FiniteGroup, GroupElement, GroupError, Permutation, SubgroupHandle, DEFAULT_TABLE_THRESHOLD};

impl FiniteGroup {
    /// `gamma_1 = H`, `gamma_{i+1} = [gamma_i, H]`, up to stabilization.
    /// The last term is trivial exactly when `H` is nilpotent.
    pub fn lower_central_series_of(&self, h: &SubgroupHandle) -> Vec<SubgroupHandle> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                return series;
            }
            let next = self.commutator_subgroup(last, h);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<SubgroupHandle> {
        self.lower_central_series_of(&self.whole())
    }

    /// Nilpotency class of a subgroup; `None` when it is not nilpotent.
    pub fn nilpotency_class_of(&self, h: &SubgroupHandle) -> Option<usize> {
        let series = self.lower_central_series_of(h);
        series.last().expect("nonempty").is_trivial().then(|| series.len() - 1)
    }

    /// Nilpotency class of the whole group; `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        *self.caches.nilpotency_class.get_or_init(|| self.nilpotency_class_of(&self.whole()))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// The Fitting subgroup: generated by the elements whose normal closure
    /// is nilpotent. Normal closures are computed once per conjugacy class.
    pub fn fitting(&self) -> &SubgroupHandle {
        self.caches.fitting.get_or_init(|| {
            if self.is_nilpotent() {
                return self.whole();
            }
            let good: Vec<usize> = self
                .class_representatives()
                .into_iter()
                .filter(|&x| self.nilpotency_class_of(&self.normal_closure_of(&[x])).is_some())
                .collect();
            self.normal_closure_of(&good)
        })
    }

    /// Right-coset index of every element, and the minimal representative of
    /// each coset in increasing order.
    pub fn cosets(&self, n: &SubgroupHandle) -> (Vec<u32>, Vec<usize>) {
        let mut coset = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for m in n.elements() {
                coset[self.mul(m, g)] = id;
            }
        }
        (coset, reps)
    }

    /// `G/N` as the permutation group of right multiplication on the cosets
    /// of `N`. Element `j` of the quotient is the coset with the `j`-th
    /// smallest minimal representative, so the identity coset is element 0.
    pub fn quotient(&self, n: &SubgroupHandle) -> Result<FiniteGroup, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let (coset, reps) = self.cosets(n);
        if reps.len() > u16::MAX as usize {
            return Err(GroupError::InvalidParameter(format!(
                "quotient of index {} is too large for a permutation carrier",
                reps.len()
            )));
        }
        let action = |g: usize| -> GroupElement {
            let images = reps.iter().map(|&r| coset[self.mul(r, g)] as u16).collect();
            GroupElement::Perm(Permutation::from_images_unchecked(images))
        };
        let elements: Vec<GroupElement> = reps.iter().map(|&r| action(r)).collect();
        let generators: Vec<GroupElement> = self.generator_indices().iter().map(|&g| action(g)).collect();
        FiniteGroup::from_elements(generators, elements, DEFAULT_TABLE_THRESHOLD)
    }

    /// Number of steps `G <- G/F(G)` to reach the trivial group; `None` when
    /// some nontrivial iterate has trivial Fitting subgroup.
    pub fn fitting_height(&self) -> Result<Option<usize>, GroupError> {
        let mut height = 0;
        let mut owned: Option<FiniteGroup> = None;
        loop {
            let g = owned.as_ref().unwrap_or(self);
            if g.order() == 1 {
                return Ok(Some(height));
            }
            let f = g.fitting();
            if f.is_trivial() {
                return Ok(None);
            }
            height += 1;
            if f.order() == g.order() {
                return Ok(Some(height));
            }
            let next = g.quotient(f)?;
            owned = Some(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::corpus::{make, Construction};
    use crate::groups::GroupError;

    #[test]
    fn classes_and_series() {
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        assert_eq!(s3.nilpotency_class(), None);
        let orders: Vec<usize> = s3.lower_central_series().iter().map(|h| h.order()).collect();
        assert_eq!(orders, [6, 3]);
        assert_eq!(make(&Construction::Cyclic(1)).unwrap().nilpotency_class(), Some(0));
        assert_eq!(make(&Construction::Cyclic(9)).unwrap().nilpotency_class(), Some(1));
        assert_eq!(make(&Construction::Unitriangular(4, 2)).unwrap().nilpotency_class(), Some(3));
        assert_eq!(make(&Construction::Dihedral(16)).unwrap().nilpotency_class(), Some(3));
    }

    #[test]
    fn fitting_subgroups() {
        let s3 = make(&Construction::Symmetric(3)).unwrap();
        assert_eq!(s3.fitting().order(), 3);
        let s4 = make(&Construction::Symmetric(4)).unwrap();
        let klein: Vec<String> = s4.fitting().elements().map(|i| s4.element(i).to_string()).collect();
        assert_eq!(klein.len(), 4);
        for k in ["()", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"] {
            assert!(klein.iter().any(|e| e == k), "{k} missing from {klein:?}");
        }
        let q8 = make(&Construction::Quaternion(8)).unwrap();
        assert_eq!(q8.fitting().order(), 8);
        assert!(make(&Construction::Alternating(5)).unwrap().fitting().is_trivial());
    }

    #[test]
    fn quotients() {
        let s4 = make(&Construction::Symmetric(4)).unwrap();
        let q = s4.quotient(s4.fitting()).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.nilpotency_class(), None);
        let t = s4.generate(&[1]);
        assert_eq!(s4.quotient(&t).unwrap_err(), GroupError::NotNormal);
        let c = s4.quotient(&s4.whole()).unwrap();
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn fitting_heights() {
        let h = |c| make(&c).unwrap().fitting_height().unwrap();
        assert_eq!(h(Construction::Symmetric(3)), Some(2));
        assert_eq!(h(Construction::Symmetric(4)), Some(3));
        assert_eq!(h(Construction::Alternating(5)), None);
        assert_eq!(h(Construction::Quaternion(16)), Some(1));
        assert_eq!(h(Construction::Cyclic(1)), Some(0));
    }
}
