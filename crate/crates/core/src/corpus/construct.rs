use std::fmt;
use std::str::FromStr;

use super::CorpusError;
use crate::groups::{close, FiniteGroup, GroupElement, Permutation, UnitriangularMatrix, DEFAULT_CAP};

/// A named group constructor with its parameters.
///
/// Canonical generators:
/// - `Symmetric(n)`: `(1,2)` and `(1,2,...,n)`.
/// - `Alternating(n)`: `(1,2,3)` and `(1,2,...,n)` for odd `n`, `(2,3,...,n)` for even `n`.
/// - `Dihedral(2n)`: the rotation `(1,2,...,n)` and the reflection `i -> 2 - i mod n`.
/// - `Quaternion(2^k)`: right multiplication by `a` and `b` on the normal forms
///   `a^i b^j` of `<a, b | a^(2^(k-1)), b^2 = a^(2^(k-2)), b^-1 a b = a^-1>`,
///   the form `a^i b^j` being point `1 + i + j 2^(k-1)`.
/// - `Cyclic(n)`: `(1,2,...,n)`.
/// - `Unitriangular(n, m)`: `I + E_{i,i+1}` for `i = 1..n-1`, entries mod `m`.
/// - `Product(A, B)`: permutation generators of `A` on points `1..a`, then of `B`
///   shifted to `a+1..a+b`. A matrix factor enters through its right-regular
///   permutation representation.
///
/// Degenerate sizes (`Symmetric(1)`, `Cyclic(1)`, `Unitriangular(1, m)`, ...)
/// use the identity as the single generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Quaternion(usize),
    Cyclic(usize),
    Unitriangular(usize, u16),
    Product(Box<Construction>, Box<Construction>),
}

pub const UNITRIANGULAR_MODULI: [u16; 6] = [2, 3, 4, 5, 8, 9];

fn bad(msg: impl Into<String>) -> CorpusError {
    CorpusError::Construction(msg.into())
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> GroupElement {
    let pts: Vec<u16> = points.into_iter().map(|p| p as u16).collect();
    GroupElement::Perm(Permutation::from_cycles(degree, &[&pts]).expect("valid cycle"))
}

fn images(one_based: Vec<u16>) -> GroupElement {
    GroupElement::Perm(Permutation::from_one_based(&one_based).expect("valid permutation"))
}

impl Construction {
    /// Generators in canonical order.
    pub fn generators(&self) -> Result<Vec<GroupElement>, CorpusError> {
        Ok(match *self {
            Construction::Symmetric(n) => {
                if !(1..=7).contains(&n) {
                    return Err(bad(format!("symmetric degree {n} outside 1..=7")));
                }
                if n == 1 {
                    vec![cycle(1, [])]
                } else {
                    vec![cycle(n, [1, 2]), cycle(n, 1..=n)]
                }
            }
            Construction::Alternating(n) => {
                if !(1..=7).contains(&n) {
                    return Err(bad(format!("alternating degree {n} outside 1..=7")));
                }
                if n < 3 {
                    vec![cycle(n, [])]
                } else if n % 2 == 1 {
                    vec![cycle(n, [1, 2, 3]), cycle(n, 1..=n)]
                } else {
                    vec![cycle(n, [1, 2, 3]), cycle(n, 2..=n)]
                }
            }
            Construction::Dihedral(order) => {
                if order < 6 || order % 2 != 0 || order > 2 * u16::MAX as usize {
                    return Err(bad(format!("dihedral order {order} must be even and at least 6")));
                }
                let n = order / 2;
                let reflection = (0..n).map(|i| ((n - i) % n + 1) as u16).collect();
                vec![cycle(n, 1..=n), images(reflection)]
            }
            Construction::Quaternion(order) => {
                if order < 8 || !order.is_power_of_two() || order > 1 << 15 {
                    return Err(bad(format!("quaternion order {order} must be a power of two in 8..=32768")));
                }
                let half = order / 2;
                let point = |i: usize, j: usize| (1 + i % half + j * half) as u16;
                let mut by_a = Vec::with_capacity(order);
                let mut by_b = Vec::with_capacity(order);
                for j in 0..2 {
                    for i in 0..half {
                        // a^i b^j a = a^(i + (-1)^j) b^j
                        let ai = if j == 0 { i + 1 } else { i + half - 1 };
                        by_a.push(point(ai, j));
                        // a^i b^j b: b^2 = a^(half/2)
                        by_b.push(if j == 0 { point(i, 1) } else { point(i + half / 2, 0) });
                    }
                }
                vec![images(by_a), images(by_b)]
            }
            Construction::Cyclic(n) => {
                if n == 0 || n > u16::MAX as usize {
                    return Err(bad(format!("cyclic order {n} outside 1..=65535")));
                }
                vec![cycle(n, (1..=n).filter(|_| n > 1))]
            }
            Construction::Unitriangular(n, m) => {
                if !(1..=6).contains(&n) {
                    return Err(bad(format!("unitriangular dimension {n} outside 1..=6")));
                }
                if !UNITRIANGULAR_MODULI.contains(&m) {
                    return Err(bad(format!("unitriangular modulus {m} not in {UNITRIANGULAR_MODULI:?}")));
                }
                if n == 1 {
                    vec![GroupElement::Unitriangular(UnitriangularMatrix::identity(1, m))]
                } else {
                    (1..n)
                        .map(|i| GroupElement::Unitriangular(UnitriangularMatrix::elementary(n, m, i, i + 1)))
                        .collect()
                }
            }
            Construction::Product(ref a, ref b) => {
                let (ga, gb) = (perm_generators(a)?, perm_generators(b)?);
                let (da, db) = (ga[0].len(), gb[0].len());
                let mut out = Vec::new();
                for g in &ga {
                    out.push(images(g.iter().copied().chain((da + 1..=da + db).map(|p| p as u16)).collect()));
                }
                for g in &gb {
                    out.push(images((1..=da as u16).chain(g.iter().map(|&p| p + da as u16)).collect()));
                }
                if da + db > u16::MAX as usize {
                    return Err(bad("direct product degree exceeds 65535"));
                }
                out
            }
        })
    }

    /// Closed-form group order.
    pub fn expected_order(&self) -> u128 {
        match *self {
            Construction::Symmetric(n) => (1..=n as u128).product(),
            Construction::Alternating(n) => ((1..=n as u128).product::<u128>() / 2).max(1),
            Construction::Dihedral(order) | Construction::Quaternion(order) | Construction::Cyclic(order) => {
                order as u128
            }
            Construction::Unitriangular(n, m) => (m as u128).pow((n * (n - 1) / 2) as u32),
            Construction::Product(ref a, ref b) => a.expected_order() * b.expected_order(),
        }
    }
}

/// 1-based image rows of permutation generators for a product factor.
fn perm_generators(c: &Construction) -> Result<Vec<Vec<u16>>, CorpusError> {
    let gens = c.generators()?;
    if gens.iter().all(|g| matches!(g, GroupElement::Perm(_))) {
        return Ok(gens
            .iter()
            .map(|g| match g {
                GroupElement::Perm(p) => p.one_based_images(),
                _ => unreachable!(),
            })
            .collect());
    }
    let group = make(c)?;
    if group.order() > u16::MAX as usize {
        return Err(bad("factor too large for a regular representation"));
    }
    Ok(group
        .generator_indices()
        .iter()
        .map(|&g| (0..group.order()).map(|x| group.mul(x, g) as u16 + 1).collect())
        .collect())
}

/// Builds the group of a construction.
pub fn make(c: &Construction) -> Result<FiniteGroup, CorpusError> {
    let gens = c.generators()?;
    if c.expected_order() > DEFAULT_CAP as u128 {
        return Err(bad(format!("order {} exceeds the cap {DEFAULT_CAP}", c.expected_order())));
    }
    Ok(close(&gens, DEFAULT_CAP)?)
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Symmetric(n) => write!(f, "symmetric({n})"),
            Construction::Alternating(n) => write!(f, "alternating({n})"),
            Construction::Dihedral(n) => write!(f, "dihedral({n})"),
            Construction::Quaternion(n) => write!(f, "quaternion({n})"),
            Construction::Cyclic(n) => write!(f, "cyclic({n})"),
            Construction::Unitriangular(n, m) => write!(f, "unitriangular({n},{m})"),
            Construction::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for Construction {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, CorpusError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, rest) = s.split_once('(').ok_or_else(|| bad(format!("expected `name(args)`, got `{s}`")))?;
        let inner = rest.strip_suffix(')').ok_or_else(|| bad(format!("missing `)` in `{s}`")))?;
        let args = split_top_level(inner);
        let num = |i: usize| -> Result<usize, CorpusError> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(|| bad(format!("bad argument {} in `{s}`", i + 1)))
        };
        let arity = |k: usize| -> Result<(), CorpusError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(format!("`{name}` takes {k} argument(s), got {}", args.len())))
            }
        };
        match name {
            "symmetric" | "alternating" | "dihedral" | "quaternion" | "cyclic" => {
                arity(1)?;
                let n = num(0)?;
                Ok(match name {
                    "symmetric" => Construction::Symmetric(n),
                    "alternating" => Construction::Alternating(n),
                    "dihedral" => Construction::Dihedral(n),
                    "quaternion" => Construction::Quaternion(n),
                    _ => Construction::Cyclic(n),
                })
            }
            "unitriangular" => {
                arity(2)?;
                let m = u16::try_from(num(1)?).map_err(|_| bad("modulus too large"))?;
                Ok(Construction::Unitriangular(num(0)?, m))
            }
            "product" => {
                arity(2)?;
                Ok(Construction::Product(Box::new(args[0].parse()?), Box::new(args[1].parse()?)))
            }
            other => Err(bad(format!("unknown constructor `{other}`"))),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.is_empty() {
        parts.push(&s[start..]);
    }
    parts
}
