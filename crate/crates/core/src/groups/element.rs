use std::fmt;

use super::GroupError;

/// A bijection of `{1..m}`. Images are stored 0-based.
///
/// Products act left to right: `(a * b)(i) = b(a(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    /// `images[i - 1]` is the image of point `i`.
    pub fn from_one_based(images: &[u16]) -> Result<Self, GroupError> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &img in images {
            if img == 0 || img as usize > m || seen[img as usize - 1] {
                return Err(GroupError::NotABijection(images.to_vec()));
            }
            seen[img as usize - 1] = true;
            out.push(img - 1);
        }
        Ok(Permutation { images: out.into_boxed_slice() })
    }

    /// 0-based images, assumed to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        Permutation { images: images.into_boxed_slice() }
    }

    /// From disjoint cycles on points `1..=degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (1..=degree as u16).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if p == 0 || p as usize > degree {
                    return Err(GroupError::NotABijection(cycle.to_vec()));
                }
                images[p as usize - 1] = next;
            }
        }
        Permutation::from_one_based(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn one_based_images(&self) -> Vec<u16> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation { images: inv.into_boxed_slice() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation on 1-based points; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.images[p] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Upper unitriangular `n x n` matrix over `Z/m`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitriangularMatrix {
    dim: u8,
    modulus: u16,
    entries: Box<[u16]>,
}

impl UnitriangularMatrix {
    pub fn identity(dim: usize, modulus: u16) -> Self {
        let mut entries = vec![0u16; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus;
        }
        UnitriangularMatrix { dim: dim as u8, modulus, entries: entries.into_boxed_slice() }
    }

    /// Validates shape, unit diagonal, zero lower triangle, and entries `< modulus`.
    pub fn from_rows(dim: usize, modulus: u16, entries: &[u16]) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::BadMatrix(format!("modulus {modulus} must be at least 2")));
        }
        if dim == 0 || dim > u8::MAX as usize {
            return Err(GroupError::BadMatrix(format!("dimension {dim} out of range")));
        }
        if entries.len() != dim * dim {
            return Err(GroupError::BadMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        for (k, &e) in entries.iter().enumerate() {
            let (i, j) = (k / dim, k % dim);
            if e >= modulus {
                return Err(GroupError::BadMatrix(format!(
                    "entry ({},{}) = {e} is not below modulus {modulus}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j && e != 1 {
                return Err(GroupError::BadMatrix(format!("diagonal entry ({0},{0}) must be 1", i + 1)));
            }
            if i > j && e != 0 {
                return Err(GroupError::BadMatrix(format!("entry ({},{}) below the diagonal must be 0", i + 1, j + 1)));
            }
        }
        Ok(UnitriangularMatrix { dim: dim as u8, modulus, entries: entries.into() })
    }

    /// `I + E_{i,j}` with 1-based `i < j`.
    pub fn elementary(dim: usize, modulus: u16, i: usize, j: usize) -> Self {
        assert!(i < j && j <= dim, "elementary matrix needs 1 <= i < j <= dim");
        let mut m = Self::identity(dim, modulus);
        m.entries[(i - 1) * dim + (j - 1)] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u16 {
        self.entries[i * self.dim() + j]
    }

    pub fn compose(&self, other: &UnitriangularMatrix) -> UnitriangularMatrix {
        let n = self.dim();
        let m = self.modulus as u32;
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            out[i * n + i] = 1;
            for j in i + 1..n {
                let mut acc = 0u32;
                for k in i..=j {
                    acc += self.entries[i * n + k] as u32 * other.entries[k * n + j] as u32;
                }
                out[i * n + j] = (acc % m) as u16;
            }
        }
        UnitriangularMatrix { dim: self.dim, modulus: self.modulus, entries: out.into_boxed_slice() }
    }

    /// Back substitution on the upper triangle.
    pub fn inverse(&self) -> UnitriangularMatrix {
        let n = self.dim();
        let m = self.modulus as i64;
        let mut inv = vec![0i64; n * n];
        for i in 0..n {
            inv[i * n + i] = 1;
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let mut acc = 0i64;
                for k in i + 1..=j {
                    acc += self.entries[i * n + k] as i64 * inv[k * n + j];
                }
                inv[i * n + j] = (-acc).rem_euclid(m);
            }
        }
        UnitriangularMatrix {
            dim: self.dim,
            modulus: self.modulus,
            entries: inv.into_iter().map(|e| e as u16).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[i * n + j] == 0))
    }
}

impl fmt::Display for UnitriangularMatrix {
    /// Rows separated by `;`, e.g. `[1 1 0; 0 1 0; 0 0 1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        f.write_str("[")?;
        for i in 0..n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.entries[i * n + j])?;
            }
        }
        f.write_str("]")
    }
}

/// The two concrete carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Permutation),
    Unitriangular(UnitriangularMatrix),
}

/// Carrier kind plus the shape parameters that must agree for composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Perm { degree: usize },
    Unitriangular { dim: usize, modulus: u16 },
}

impl GroupElement {
    pub fn carrier(&self) -> Carrier {
        match self {
            GroupElement::Perm(p) => Carrier::Perm { degree: p.degree() },
            GroupElement::Unitriangular(m) => Carrier::Unitriangular { dim: m.dim(), modulus: m.modulus() },
        }
    }

    pub fn identity_of(carrier: Carrier) -> Self {
        match carrier {
            Carrier::Perm { degree } => GroupElement::Perm(Permutation::identity(degree)),
            Carrier::Unitriangular { dim, modulus } => {
                GroupElement::Unitriangular(UnitriangularMatrix::identity(dim, modulus))
            }
        }
    }

    /// Panics if the carriers differ; [`crate::groups::close`] rejects mixed input up front.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.compose(b)),
            (GroupElement::Unitriangular(a), GroupElement::Unitriangular(b)) => {
                GroupElement::Unitriangular(a.compose(b))
            }
            _ => panic!("cannot compose elements of different carriers"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Unitriangular(m) => GroupElement::Unitriangular(m.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.is_identity(),
            GroupElement::Unitriangular(m) => m.is_identity(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => p.fmt(f),
            GroupElement::Unitriangular(m) => m.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_products_act_left_to_right() {
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        // 1 -a-> 2 -b-> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1,3,2)");
        assert!(a.compose(&a).is_identity());
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let c = Permutation::from_cycles(5, &[&[1, 4, 2], &[3, 5]]).unwrap();
        assert!(c.compose(&c.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1, 3]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 4, 2]).is_err());
    }

    #[test]
    fn matrix_inverse_and_product() {
        let a = UnitriangularMatrix::from_rows(3, 5, &[1, 2, 3, 0, 1, 4, 0, 0, 1]).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
        let e12 = UnitriangularMatrix::elementary(3, 5, 1, 2);
        let e23 = UnitriangularMatrix::elementary(3, 5, 2, 3);
        assert_eq!(e12.compose(&e23).entry(0, 2), 1);
        assert_eq!(e23.compose(&e12).entry(0, 2), 0);
    }

    #[test]
    fn matrix_validation() {
        assert!(UnitriangularMatrix::from_rows(2, 3, &[1, 3, 0, 1]).is_err());
        assert!(UnitriangularMatrix::from_rows(2, 3, &[2, 0, 0, 1]).is_err());
        assert!(UnitriangularMatrix::from_rows(2, 3, &[1, 0, 1, 1]).is_err());
        assert!(UnitriangularMatrix::from_rows(2, 3, &[1, 0, 0]).is_err());
    }
}
