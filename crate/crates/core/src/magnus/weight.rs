use std::cmp::Ordering;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::series::{DegreeCaps, Monomial, SparseSeries};
use super::MagnusError;
use crate::words::{expand, CommutatorExpr};

/// Lower-central-series weight up to a truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaWeight {
    Exact(usize),
    /// Every term of degree `<= D` vanishes.
    ExceedsD(usize),
}

/// How a weight was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMethod {
    /// The formal weight exceeds the truncation.
    FormalBound,
    /// The leading monomial of the degree-`n` component is nonzero, `n` the formal weight.
    LeadCertificate,
    /// The Magnus image was expanded up to the truncation.
    Series,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub weight: GammaWeight,
    pub method: WeightMethod,
    pub formal_weight: usize,
    /// Lexicographically largest monomial of the minimal-degree component
    /// with its coefficient, when known.
    pub lead: Option<(Monomial, BigInt)>,
}

/// Leading term of the degree-`formal_weight` component of `M(expr) - 1`,
/// computed without expanding anything.
///
/// For monomials of equal length lexicographic order is multiplicative, so
/// the largest monomial of `L(u) L(v)` is the product of the largest ones.
/// The component of `[u, v]` is `L(u) L(v) - L(v) L(u)`; when the two
/// products of leading monomials differ, the larger one survives with
/// coefficient `+-c(u) c(v)`. `None` when they coincide and the leading
/// term cannot be read off.
pub fn lead_certificate(expr: &CommutatorExpr) -> Option<(Monomial, BigInt)> {
    match expr {
        CommutatorExpr::Var(i) => Some((vec![*i], BigInt::one())),
        CommutatorExpr::Pow(b, k) => lead_certificate(b).map(|(m, c)| (m, c * BigInt::from(*k))),
        CommutatorExpr::Comm(a, b) => {
            let (ma, ca) = lead_certificate(a)?;
            let (mb, cb) = lead_certificate(b)?;
            let ab: Monomial = ma.iter().chain(&mb).copied().collect();
            let ba: Monomial = mb.iter().chain(&ma).copied().collect();
            let c = ca * cb;
            match ab.cmp(&ba) {
                Ordering::Greater => Some((ab, c)),
                Ordering::Less => Some((ba, -c)),
                Ordering::Equal => None,
            }
        }
    }
}

/// Options for the series route.
#[derive(Clone, Debug, Default)]
pub struct SeriesOptions {
    /// Drop monomials whose degree in some variable exceeds that variable's
    /// letter count in the expression.
    pub prune: bool,
    /// Abort once an intermediate series holds more terms than this.
    pub max_terms: Option<usize>,
}

struct TreeImage<'a> {
    caps: Option<DegreeCaps>,
    max_terms: Option<usize>,
    memo: FxHashMap<(&'a CommutatorExpr, usize), Rc<SparseSeries>>,
}

impl<'a> TreeImage<'a> {
    fn check(&self, s: &SparseSeries) -> Result<(), MagnusError> {
        match self.max_terms {
            Some(limit) if s.len() > limit => Err(MagnusError::Infeasible { terms: s.len(), limit }),
            _ => Ok(()),
        }
    }

    /// `M(expr)` truncated at `prec`.
    ///
    /// For `[u, v]` with `M(u) = 1 + A`, `M(v) = 1 + B`:
    /// `M([u, v]) = 1 + M(u)^-1 M(v)^-1 (AB - BA)`. `A` and `B` have
    /// minimal degree at least the formal weights `a`, `b`, so `A` is only
    /// needed to degree `prec - b`, `B` to `prec - a`, and the inverses to
    /// `prec - a - b`.
    fn image(&mut self, expr: &'a CommutatorExpr, prec: usize) -> Result<Rc<SparseSeries>, MagnusError> {
        if let Some(s) = self.memo.get(&(expr, prec)) {
            return Ok(s.clone());
        }
        let caps_owned = self.caps.clone();
        let caps = caps_owned.as_ref();
        let out = match expr {
            CommutatorExpr::Var(i) => {
                let mut s = SparseSeries::one(prec);
                if prec >= 1 && caps.is_none_or(|c| c.admits(&[*i])) {
                    s.add_term(vec![*i], BigInt::one());
                }
                s
            }
            CommutatorExpr::Pow(b, k) => {
                let base = self.image(b, prec)?;
                let base = base.as_ref().clone();
                let mut acc = SparseSeries::one(prec);
                let mut sq = if *k < 0 { base.inverse()? } else { base };
                let mut e = k.unsigned_abs();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul_capped(&sq, prec, caps);
                    }
                    e >>= 1;
                    if e > 0 {
                        sq = sq.mul_capped(&sq, prec, caps);
                    }
                }
                acc
            }
            CommutatorExpr::Comm(u, v) => {
                let (a, b) = (u.formal_weight(), v.formal_weight());
                if a + b > prec {
                    SparseSeries::one(prec)
                } else {
                    let mu = self.image(u, prec - b)?;
                    let mv = self.image(v, prec - a)?;
                    let (da, db) = (mu.minus_one(), mv.minus_one());
                    let ab = da.mul_capped(&db, prec, caps);
                    let ba = db.mul_capped(&da, prec, caps);
                    let comm = ab.sub(&ba);
                    self.check(&comm)?;
                    let rest = prec - a - b;
                    let scaled = if rest == 0 || comm.is_empty() {
                        comm
                    } else {
                        let ui = mu.truncate(rest).inverse()?;
                        let vi = mv.truncate(rest).inverse()?;
                        let pre = ui.mul_capped(&vi, rest, caps);
                        pre.mul_capped(&comm, prec, caps)
                    };
                    let mut s = SparseSeries::one(prec);
                    for (m, c) in scaled.terms() {
                        s.add_term(m.clone(), c.clone());
                    }
                    s
                }
            }
        };
        self.check(&out)?;
        let out = Rc::new(out);
        self.memo.insert((expr, prec), out.clone());
        Ok(out)
    }
}

/// `M(expr)` truncated at `d`, computed on the expression tree.
pub fn tree_image(expr: &CommutatorExpr, d: usize, opts: &SeriesOptions) -> Result<SparseSeries, MagnusError> {
    let caps = opts.prune.then(|| DegreeCaps::from_counts(expr.letter_counts()));
    let mut t = TreeImage { caps, max_terms: opts.max_terms, memo: FxHashMap::default() };
    Ok(t.image(expr, d)?.as_ref().clone())
}

fn nonidentity(expr: &CommutatorExpr) -> Result<(), MagnusError> {
    if expand(expr).is_empty() {
        Err(MagnusError::IdentityWord)
    } else {
        Ok(())
    }
}

/// Weight decided by the series route alone.
pub fn gamma_weight_series(expr: &CommutatorExpr, d: usize, opts: &SeriesOptions) -> Result<WeightReport, MagnusError> {
    if d == 0 {
        return Err(MagnusError::ZeroTruncation);
    }
    nonidentity(expr)?;
    let formal = expr.formal_weight();
    let s = tree_image(expr, d, opts)?;
    let min = s.min_degree();
    if opts.prune {
        // pruned coefficients are exact, but only the formal-weight component
        // is guaranteed to be complete
        match min {
            Some(k) if k == formal => {}
            Some(_) | None if formal <= d => return Err(MagnusError::Inconclusive { lower: formal }),
            _ => {}
        }
    }
    Ok(match min {
        Some(k) => WeightReport {
            weight: GammaWeight::Exact(k),
            method: WeightMethod::Series,
            formal_weight: formal,
            lead: s.homogeneous_component(k).pop(),
        },
        None => WeightReport {
            weight: GammaWeight::ExceedsD(d),
            method: WeightMethod::Series,
            formal_weight: formal,
            lead: None,
        },
    })
}

/// Largest `k <= d` with `expr` in `gamma_k` of the free group, or
/// `ExceedsD(d)`.
///
/// The formal weight is a lower bound. When it exceeds `d` the answer is
/// immediate; when the lead certificate applies the weight equals the formal
/// weight; otherwise the Magnus image is expanded on the expression tree.
pub fn gamma_weight_report(expr: &CommutatorExpr, d: usize) -> Result<WeightReport, MagnusError> {
    if d == 0 {
        return Err(MagnusError::ZeroTruncation);
    }
    nonidentity(expr)?;
    let formal = expr.formal_weight();
    if formal > d {
        return Ok(WeightReport {
            weight: GammaWeight::ExceedsD(d),
            method: WeightMethod::FormalBound,
            formal_weight: formal,
            lead: None,
        });
    }
    if let Some(lead) = lead_certificate(expr) {
        return Ok(WeightReport {
            weight: GammaWeight::Exact(formal),
            method: WeightMethod::LeadCertificate,
            formal_weight: formal,
            lead: Some(lead),
        });
    }
    gamma_weight_series(expr, d, &SeriesOptions::default())
}

pub fn gamma_weight(expr: &CommutatorExpr, d: usize) -> Result<GammaWeight, MagnusError> {
    gamma_weight_report(expr, d).map(|r| r.weight)
}

/// Whether `expr = 1` is a law of every nilpotent group of class `<= c`,
/// i.e. whether its weight is at least `c + 1`.
pub fn is_law_of_nc(expr: &CommutatorExpr, c: usize) -> Result<bool, MagnusError> {
    if c == 0 {
        nonidentity(expr)?;
        return Ok(true);
    }
    Ok(matches!(gamma_weight(expr, c)?, GammaWeight::ExceedsD(_)))
}

/// Nonzero terms of minimal degree of `M(expr) - 1`, up to degree `d`.
pub fn leading_terms(expr: &CommutatorExpr, d: usize) -> Result<Option<(usize, Vec<(Monomial, BigInt)>)>, MagnusError> {
    if d == 0 {
        return Err(MagnusError::ZeroTruncation);
    }
    nonidentity(expr)?;
    let s = tree_image(expr, d, &SeriesOptions::default())?;
    Ok(s.min_degree().map(|k| (k, s.homogeneous_component(k))))
}

/// Degree-`n` component of `M(expr)` (empty when it vanishes).
pub fn homogeneous_component(expr: &CommutatorExpr, n: usize) -> Result<Vec<(Monomial, BigInt)>, MagnusError> {
    if n == 0 {
        return Err(MagnusError::ZeroTruncation);
    }
    let s = tree_image(expr, n, &SeriesOptions::default())?;
    Ok(s.homogeneous_component(n).into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
