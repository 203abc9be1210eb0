use super::{FiniteGroup, GroupError, SubgroupHandle};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteGroup {
    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |acc, &o| acc / gcd(acc, o) * o)
    }

    /// `G^m`, generated by all `m`-th powers.
    pub fn power_subgroup(&self, m: u64) -> Result<SubgroupHandle, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidParameter("power subgroup needs m >= 1".into()));
        }
        let mut h = self.trivial_subgroup();
        let mut seen = vec![false; self.order()];
        for g in 0..self.order() {
            let p = self.pow(g, m as i64);
            if !seen[p] {
                seen[p] = true;
                if !h.contains(p) {
                    h = self.extend(&h, p);
                }
            }
        }
        Ok(h)
    }

    /// `[G, G] <= G^p` for odd `p`, `[G, G] <= G^4` for `p = 2`.
    pub fn is_powerful(&self, p: u64) -> Result<bool, GroupError> {
        if self.order() > 1 && self.p_group_prime() != Some(p) {
            return Err(GroupError::NotPGroup { order: self.order(), p });
        }
        let g = self.whole();
        let derived = self.commutator_subgroup(&g, &g);
        let powers = self.power_subgroup(if p == 2 { 4 } else { p })?;
        Ok(derived.is_subset_of(&powers))
    }
}

#[cfg(test)]
mod tests {
    use crate::corpus::{make, Construction};

    #[test]
    fn exponents() {
        assert_eq!(make(&Construction::Symmetric(3)).unwrap().exponent(), 6);
        assert_eq!(make(&Construction::Unitriangular(4, 3)).unwrap().exponent(), 9);
        assert_eq!(make(&Construction::Quaternion(16)).unwrap().exponent(), 8);
    }

    #[test]
    fn power_subgroups() {
        let c8 = make(&Construction::Cyclic(8)).unwrap();
        assert_eq!(c8.power_subgroup(2).unwrap().order(), 4);
        let u = make(&Construction::Unitriangular(4, 3)).unwrap();
        let cubes = u.power_subgroup(3).unwrap();
        assert_eq!(cubes.order(), 3);
        // the cubes are I + N^3: only the corner entry survives
        for i in cubes.elements() {
            let crate::groups::GroupElement::Unitriangular(m) = u.element(i) else { unreachable!() };
            for r in 0..4 {
                for c in r + 1..4 {
                    if (r, c) != (0, 3) {
                        assert_eq!(m.entry(r, c), 0);
                    }
                }
            }
        }
        assert!(c8.power_subgroup(0).is_err());
    }

    #[test]
    fn powerful_groups() {
        assert!(make(&Construction::Cyclic(9)).unwrap().is_powerful(3).unwrap());
        assert!(!make(&Construction::Dihedral(8)).unwrap().is_powerful(2).unwrap());
        assert!(!make(&Construction::Unitriangular(3, 3)).unwrap().is_powerful(3).unwrap());
        assert!(make(&Construction::Symmetric(3)).unwrap().is_powerful(2).is_err());
    }
}
