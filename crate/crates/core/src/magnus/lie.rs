use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::weight::homogeneous_component;
use super::MagnusError;
use crate::words::CommutatorExpr;

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `(1/n) sum_{d | n} mu(d) r^(n/d)`, the rank of `gamma_n / gamma_{n+1}` of
/// the free group of rank `r`.
///
/// Panics if `r^n` does not fit in an `i128`.
pub fn witt_number(r: u64, n: u64) -> u128 {
    assert!(r >= 1 && n >= 1, "witt_number needs r, n >= 1");
    let mut sum: i128 = 0;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let term = (r as i128).checked_pow((n / d) as u32).expect("r^n overflows i128");
        sum += mobius(d) as i128 * term;
    }
    (sum / n as i128) as u128
}

/// Rank over the rationals of a matrix with integer entries, by
/// fraction-free (Bareiss) elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            for c in col + 1..cols {
                let v = (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c]) / &prev;
                rows[r][c] = v;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of the degree-`n` components of the Magnus images of `exprs`. An
/// expression of weight above `n` contributes a zero row.
pub fn leading_components_rank(exprs: &[CommutatorExpr], n: usize) -> Result<usize, MagnusError> {
    let comps: Vec<_> = exprs.iter().map(|e| homogeneous_component(e, n)).collect::<Result<_, _>>()?;
    let mut columns = BTreeMap::new();
    for comp in &comps {
        for (m, _) in comp {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let rows = comps
        .into_iter()
        .map(|comp| {
            let mut row = vec![BigInt::zero(); columns.len()];
            for (m, c) in comp {
                row[columns[&m]] = c;
            }
            row
        })
        .collect();
    Ok(rational_rank(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{hall_basic_commutators, parse};

    #[test]
    fn witt_values() {
        assert_eq!(witt_number(2, 1), 2);
        assert_eq!(witt_number(2, 4), 3);
        assert_eq!(witt_number(3, 3), 8);
        assert_eq!(witt_number(2, 6), 9);
        assert_eq!(witt_number(5, 1), 5);
    }

    #[test]
    fn ranks() {
        let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(rational_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rational_rank(m(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(rational_rank(m(&[&[2, 0], &[0, 3]])), 2);
        assert_eq!(rational_rank(Vec::new()), 0);
        let pair = [parse("[x1,x2]").unwrap(), parse("[x2,x1]").unwrap()];
        assert_eq!(leading_components_rank(&pair, 2).unwrap(), 1);
        assert_eq!(leading_components_rank(&hall_basic_commutators(2, 3), 3).unwrap(), 2);
        // weight 3 word at degree 2 is a zero row
        assert_eq!(leading_components_rank(&[parse("[x1,x2,x1]").unwrap()], 2).unwrap(), 0);
    }
}
