use num_bigint::BigInt;
use num_traits::Zero;

use super::series::{DegreeCaps, SparseSeries};
use crate::words::FreeWord;

/// Magnus image of a reduced word, `x_i -> 1 + X_i`, truncated at `d`.
pub fn magnus_embed(w: &FreeWord, d: usize) -> SparseSeries {
    magnus_embed_capped(w, d, None)
}

/// [`magnus_embed`] modulo the monomials outside `caps`.
pub fn magnus_embed_capped(w: &FreeWord, d: usize, caps: Option<&DegreeCaps>) -> SparseSeries {
    w.letters().iter().fold(SparseSeries::one(d), |s, l| {
        if l.inverse {
            s.div_one_plus_var(l.generator, caps)
        } else {
            s.mul_one_plus_var(l.generator, caps)
        }
    })
}

/// Coefficient of one monomial in the Magnus image of `w`, without building
/// the series.
///
/// Runs left to right over the letters keeping, for every prefix of the
/// monomial, its coefficient in the image of the letters read so far. A
/// letter `x_g` can absorb one `X_g`; a letter `x_g^-1` absorbs a run of `t`
/// copies of `X_g` with sign `(-1)^t`.
pub fn monomial_coefficient(w: &FreeWord, monomial: &[u32]) -> BigInt {
    let k = monomial.len();
    let mut dp = vec![BigInt::zero(); k + 1];
    dp[0] = BigInt::from(1);
    for l in w.letters() {
        let g = l.generator;
        // descending j so dp[j - t] still holds the previous letter's value
        for j in (1..=k).rev() {
            let mut add = BigInt::zero();
            let mut t = 1;
            while t <= j && monomial[j - t] == g {
                if l.inverse {
                    if t % 2 == 1 {
                        add -= &dp[j - t];
                    } else {
                        add += &dp[j - t];
                    }
                } else {
                    add += &dp[j - t];
                    break;
                }
                t += 1;
            }
            dp[j] += add;
        }
    }
    dp.pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{build_gamma_word, build_w, expand, CommutatorExpr, Letter};

    #[test]
    fn generators_and_inverses() {
        assert_eq!(magnus_embed(&FreeWord::generator(1), 3).to_string(), "1 + X1");
        let inv = FreeWord::from_letters([Letter::new(1, true)]);
        assert_eq!(magnus_embed(&inv, 3).to_string(), "1 - X1 + X1X1 - X1X1X1");
        assert_eq!(magnus_embed(&FreeWord::identity(), 3).to_string(), "1");
    }

    #[test]
    fn commutator_image() {
        let c = expand(&build_gamma_word(2).unwrap());
        assert_eq!(magnus_embed(&c, 2).to_string(), "1 + X1X2 - X2X1");
    }

    #[test]
    fn multiplicative() {
        let u = expand(&CommutatorExpr::power(CommutatorExpr::var(1), -2)).mul(&FreeWord::generator(2));
        let v = expand(&build_gamma_word(3).unwrap());
        let d = 5;
        assert_eq!(magnus_embed(&u.mul(&v), d), magnus_embed(&u, d).mul(&magnus_embed(&v, d)));
    }

    #[test]
    fn coefficients_match_the_series() {
        let w = expand(&build_w(1).unwrap());
        let s = magnus_embed(&w, 5);
        for (m, c) in s.terms() {
            assert_eq!(&monomial_coefficient(&w, m), c, "{m:?}");
        }
        assert_eq!(monomial_coefficient(&w, &[1, 1, 1]), BigInt::zero());
        assert_eq!(monomial_coefficient(&w, &[]), BigInt::from(1));
    }
}
