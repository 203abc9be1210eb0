//! Finite-checkable statements about `N_c^(d)`, Engel conditions and the
//! `W_n`, `V_n` laws, run as named checks that emit [`VerificationReport`]s.
//!
//! Finite groups throughout: "locally nilpotent" is checked as "nilpotent"
//! and the Hirsch-Plotkin radical is the Fitting subgroup.

mod checks;
mod free;
mod report;
mod suite;

use thiserror::Error;

pub use checks::{
    check_exponent_law, check_fitting_series, check_heineken, check_power_commutation, check_power_subgroup_nilpotent,
    check_variety_implication, heineken_qualifying,
};
pub use free::{check_bound_weight_link, check_vn_law, check_weights};
pub use report::{Assigned, Params, Summary, Verdict, VerificationReport, Witness};
pub use suite::{run_free_checks, run_suite, CheckKind, SuiteConfig, SuiteEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("bounds need d >= 2, got {0}")]
    SmallD(usize),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{variant} r needs c >= {min}, got {c}")]
    SmallC { variant: &'static str, min: usize, c: usize },
}

/// `(2^d + 2^(d-1) - 3, 2^d + 2^(d-1) + 2^(d-2) - 3)`: the largest classes for
/// which `N_c^(d)` is locally nilpotent, in general and for `p`-groups with
/// `p` in `{2, 3, 5}`.
pub fn bounds(d: usize) -> Result<(u64, u64), TheoremError> {
    if !(2..=62).contains(&d) {
        return Err(TheoremError::SmallD(d));
    }
    let p = |k: usize| 1u64 << k;
    let b1 = p(d) + p(d - 1) - 3;
    Ok((b1, b1 + p(d - 2)))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q))
}

/// Least `r >= 0` with `m <= p^r`; equivalently `p^(r-1) < m <= p^r`.
fn ceil_log(m: u64, p: u64) -> u32 {
    let (mut r, mut pr) = (0, 1u64);
    while pr < m {
        pr = pr.saturating_mul(p);
        r += 1;
    }
    r
}

/// `r` with `p^(r-1) < c <= p^r`.
pub fn compute_r_engel(c: usize, p: u64) -> Result<u32, TheoremError> {
    if !is_prime(p) {
        return Err(TheoremError::NotPrime(p));
    }
    if c < 1 {
        return Err(TheoremError::SmallC { variant: "engel", min: 1, c });
    }
    Ok(ceil_log(c as u64, p))
}

/// `r` with `p^(r-1) < c - 1 <= p^r`.
pub fn compute_r_variety(c: usize, p: u64) -> Result<u32, TheoremError> {
    if !is_prime(p) {
        return Err(TheoremError::NotPrime(p));
    }
    if c < 2 {
        return Err(TheoremError::SmallC { variant: "variety", min: 2, c });
    }
    Ok(ceil_log(c as u64 - 1, p))
}

/// Power `m` with `G^m` locally nilpotent for `G` a `p`-group in `N_c^(2)`:
/// `p^r` for odd `p`, `2^(r+1)` for `p = 2`.
pub fn variety_power(c: usize, p: u64) -> Result<u64, TheoremError> {
    let r = compute_r_variety(c, p)?;
    Ok(if p == 2 { 1 << (r + 1) } else { p.pow(r) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(bounds(2).unwrap(), (3, 4));
        assert_eq!(bounds(3).unwrap(), (9, 11));
        assert_eq!(bounds(4).unwrap(), (21, 25));
        assert!(bounds(1).is_err());
    }

    #[test]
    fn r_values() {
        assert_eq!(compute_r_engel(4, 2).unwrap(), 2);
        assert_eq!(compute_r_engel(5, 3).unwrap(), 2);
        assert_eq!(compute_r_engel(1, 5).unwrap(), 0);
        assert_eq!(compute_r_engel(3, 3).unwrap(), 1);
        assert_eq!(compute_r_variety(5, 2).unwrap(), 2);
        assert_eq!(compute_r_variety(5, 3).unwrap(), 2);
        assert_eq!(variety_power(5, 2).unwrap(), 8);
        assert_eq!(variety_power(5, 3).unwrap(), 9);
        assert_eq!(compute_r_variety(2, 7).unwrap(), 0);
        assert!(compute_r_engel(4, 4).is_err());
        assert!(compute_r_variety(1, 2).is_err());
    }

    #[test]
    fn r_satisfies_the_double_inequality() {
        for p in [2u64, 3, 5, 7] {
            for c in 1..200usize {
                let r = compute_r_engel(c, p).unwrap();
                let pr = p.pow(r);
                assert!(c as u64 <= pr && (r == 0 || pr / p < c as u64), "c={c} p={p}");
            }
        }
    }
}
