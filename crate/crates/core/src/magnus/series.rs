use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::MagnusError;

/// Monomial `X_{i1} X_{i2} ... X_{ik}` as its index sequence.
pub type Monomial = Vec<u32>;

/// Per-variable degree caps; monomials exceeding any cap are dropped.
///
/// Dropping them is a quotient by a two-sided monomial ideal, so every
/// coefficient that survives is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCaps {
    caps: Vec<usize>,
}

impl DegreeCaps {
    /// `caps[i]` bounds the degree in `X_i`; variables beyond the list get 0.
    pub fn from_counts(counts: impl IntoIterator<Item = (u32, usize)>) -> Self {
        let mut caps = Vec::new();
        for (v, c) in counts {
            let v = v as usize;
            if caps.len() <= v {
                caps.resize(v + 1, 0);
            }
            caps[v] = c;
        }
        DegreeCaps { caps }
    }

    pub fn admits(&self, m: &[u32]) -> bool {
        let mut used = vec![0usize; self.caps.len()];
        m.iter().all(|&v| {
            let v = v as usize;
            v < used.len() && {
                used[v] += 1;
                used[v] <= self.caps[v]
            }
        })
    }

    fn admits_pair(&self, a: &[u32], b: &[u32]) -> bool {
        let mut used = vec![0usize; self.caps.len()];
        a.iter().chain(b).all(|&v| {
            let v = v as usize;
            v < used.len() && {
                used[v] += 1;
                used[v] <= self.caps[v]
            }
        })
    }
}

/// A noncommutative power series in `X_1, X_2, ...` with integer
/// coefficients, truncated above degree `D`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSeries {
    truncation: usize,
    constant: BigInt,
    terms: FxHashMap<Monomial, BigInt>,
}

impl SparseSeries {
    pub fn zero(truncation: usize) -> Self {
        SparseSeries { truncation, constant: BigInt::zero(), terms: FxHashMap::default() }
    }

    pub fn one(truncation: usize) -> Self {
        SparseSeries { constant: BigInt::one(), ..Self::zero(truncation) }
    }

    /// `1 + X_i`.
    pub fn one_plus_var(var: u32, truncation: usize) -> Self {
        let mut s = Self::one(truncation);
        s.add_term(vec![var], BigInt::one());
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        if m.is_empty() {
            self.constant.clone()
        } else {
            self.terms.get(m).cloned().unwrap_or_default()
        }
    }

    /// Nonconstant terms in (degree, lexicographic) order.
    pub fn terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Adds `c * m`; ignores monomials above the truncation.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.is_empty() {
            self.constant += c;
            return;
        }
        if m.len() > self.truncation || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Smallest degree of a nonzero nonconstant term.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    /// Terms of degree exactly `k`, lexicographically sorted.
    pub fn homogeneous_component(&self, k: usize) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<_> =
            self.terms.iter().filter(|(m, _)| m.len() == k).map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort();
        v
    }

    /// Drops terms above degree `d` (no-op when `d` is not smaller).
    pub fn truncate(&self, d: usize) -> SparseSeries {
        let d = d.min(self.truncation);
        SparseSeries {
            truncation: d,
            constant: self.constant.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.len() <= d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `self - 1`.
    pub fn minus_one(&self) -> SparseSeries {
        let mut s = self.clone();
        s.constant -= 1;
        s
    }

    pub fn sub(&self, other: &SparseSeries) -> SparseSeries {
        let mut out = self.truncate(other.truncation);
        out.constant -= &other.constant;
        for (m, c) in &other.terms {
            if m.len() <= out.truncation {
                out.add_term(m.clone(), -c);
            }
        }
        out
    }

    /// Product truncated at the smaller truncation.
    pub fn mul(&self, other: &SparseSeries) -> SparseSeries {
        self.mul_capped(other, self.truncation.min(other.truncation), None)
    }

    /// Product truncated at `d`, dropping monomials outside `caps`.
    pub fn mul_capped(&self, other: &SparseSeries, d: usize, caps: Option<&DegreeCaps>) -> SparseSeries {
        let mut out = SparseSeries::zero(d);
        out.constant = &self.constant * &other.constant;
        let (a, b) = (by_degree(self, d), by_degree(other, d));
        if !other.constant.is_zero() {
            for (m, c) in a.iter().flatten() {
                out.add_term((*m).clone(), *c * &other.constant);
            }
        }
        if !self.constant.is_zero() {
            for (m, c) in b.iter().flatten() {
                out.add_term((*m).clone(), *c * &self.constant);
            }
        }
        for da in 1..d {
            for db in 1..=d - da {
                for &(ma, ca) in &a[da] {
                    for &(mb, cb) in &b[db] {
                        if caps.is_some_and(|c| !c.admits_pair(ma, mb)) {
                            continue;
                        }
                        let mut m = Vec::with_capacity(da + db);
                        m.extend_from_slice(ma);
                        m.extend_from_slice(mb);
                        out.add_term(m, ca * cb);
                    }
                }
            }
        }
        out
    }

    /// `self * (1 + X_v)`.
    pub fn mul_one_plus_var(&self, v: u32, caps: Option<&DegreeCaps>) -> SparseSeries {
        let mut out = self.clone();
        if !self.constant.is_zero() && caps.is_none_or(|cp| cp.admits(&[v])) {
            out.add_term(vec![v], self.constant.clone());
        }
        for (m, c) in &self.terms {
            if m.len() < self.truncation {
                let mut n = m.clone();
                n.push(v);
                if caps.is_none_or(|cp| cp.admits(&n)) {
                    out.add_term(n, c.clone());
                }
            }
        }
        out
    }

    /// `self * (1 + X_v)^-1`, solving `T = S - T X_v` degree by degree.
    pub fn div_one_plus_var(&self, v: u32, caps: Option<&DegreeCaps>) -> SparseSeries {
        let d = self.truncation;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.len()].push((m.clone(), c.clone()));
        }
        let mut out = SparseSeries { truncation: d, constant: self.constant.clone(), terms: FxHashMap::default() };
        let mut prev: Vec<(Monomial, BigInt)> = vec![(Vec::new(), self.constant.clone())];
        for bucket in buckets.into_iter().skip(1) {
            let mut level: FxHashMap<Monomial, BigInt> = bucket.into_iter().collect();
            for (m, c) in prev {
                if c.is_zero() {
                    continue;
                }
                let mut n = m;
                n.push(v);
                if caps.is_some_and(|cp| !cp.admits(&n)) {
                    continue;
                }
                *level.entry(n).or_default() -= c;
            }
            level.retain(|_, c| !c.is_zero());
            prev = level.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
            out.terms.extend(level);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<SparseSeries, MagnusError> {
        if !self.constant.abs().is_one() {
            return Err(MagnusError::NotInvertible);
        }
        // S = c (1 + N), S^-1 = c (1 - N + N^2 - ...)
        let c = self.constant.clone();
        let mut n = self.clone();
        n.constant = BigInt::zero();
        if c.is_negative() {
            for v in n.terms.values_mut() {
                *v = -&*v;
            }
        }
        let mut neg_n = n.clone();
        for v in neg_n.terms.values_mut() {
            *v = -&*v;
        }
        let mut acc = SparseSeries::one(self.truncation);
        let mut power = SparseSeries::one(self.truncation);
        for _ in 0..self.truncation {
            power = power.mul(&neg_n);
            if power.is_empty() && power.constant.is_zero() {
                break;
            }
            for (m, v) in &power.terms {
                acc.add_term(m.clone(), v.clone());
            }
        }
        if c.is_negative() {
            acc.constant = -acc.constant;
            for v in acc.terms.values_mut() {
                *v = -&*v;
            }
        }
        Ok(acc)
    }

    /// `self^k` for any integer `k` (negative powers need a unit constant).
    pub fn pow(&self, k: i64) -> Result<SparseSeries, MagnusError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = SparseSeries::one(self.truncation);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

fn by_degree(s: &SparseSeries, d: usize) -> Vec<Vec<(&Monomial, &BigInt)>> {
    let mut buckets: Vec<Vec<(&Monomial, &BigInt)>> = vec![Vec::new(); d + 1];
    for (m, c) in &s.terms {
        if m.len() <= d {
            buckets[m.len()].push((m, c));
        }
    }
    buckets
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &[u32]) -> fmt::Result {
    for v in m {
        write!(f, "X{v}")?;
    }
    Ok(())
}

/// Terms in (degree, lexicographic) order, e.g. `1 + X1X2 - X2X1`.
impl fmt::Display for SparseSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (m, c) in self.terms() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write_monomial(f, m)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
