//! Text format for a group given by generators.
//!
//! ```text
//! kind perm
//! degree 3
//! generators 2
//! 2 1 3
//! 2 3 1
//! ```
//!
//! Permutation rows are 1-based image arrays. Matrix groups use
//! `kind unitriangular`, `dimension n`, `modulus m`, `generators k` followed
//! by one row-major line of `n * n` entries per generator. Blank lines and
//! lines starting with `#` are ignored on input; output has neither, so
//! `to_text(parse(t))` reproduces any canonical `t` byte for byte.

use thiserror::Error;

use super::{close, Carrier, FiniteGroup, GroupElement, GroupError, Permutation, UnitriangularMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unexpected end of file: expected {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn err(line: usize, message: impl Into<String>) -> GroupFileError {
    GroupFileError::Parse { line, message: message.into() }
}

/// Serializes the generators of `group`.
pub fn to_text(group: &FiniteGroup) -> String {
    generators_to_text(group.carrier(), group.generators())
}

pub fn generators_to_text(carrier: Carrier, generators: &[GroupElement]) -> String {
    let mut out = String::new();
    let join = |v: &[u16]| v.iter().map(u16::to_string).collect::<Vec<_>>().join(" ");
    match carrier {
        Carrier::Perm { degree } => {
            out.push_str(&format!("kind perm\ndegree {degree}\n"));
        }
        Carrier::Unitriangular { dim, modulus } => {
            out.push_str(&format!("kind unitriangular\ndimension {dim}\nmodulus {modulus}\n"));
        }
    }
    out.push_str(&format!("generators {}\n", generators.len()));
    for g in generators {
        match g {
            GroupElement::Perm(p) => out.push_str(&join(&p.one_based_images())),
            GroupElement::Unitriangular(m) => out.push_str(&join(m.entries())),
        }
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self, what: &'static str) -> Result<(usize, &'a str), GroupFileError> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Ok((i + 1, line));
            }
        }
        Err(GroupFileError::Truncated(what))
    }

    fn keyed(&mut self, key: &'static str) -> Result<(usize, &'a str), GroupFileError> {
        let (n, line) = self.next_content(key)?;
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok((n, v.trim())),
            _ => Err(err(n, format!("expected `{key} <value>`"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, key: &'static str) -> Result<(usize, T), GroupFileError> {
        let (n, v) = self.keyed(key)?;
        v.parse().map(|x| (n, x)).map_err(|_| err(n, format!("invalid {key} `{v}`")))
    }
}

fn row(n: usize, line: &str) -> Result<Vec<u16>, GroupFileError> {
    line.split_whitespace().map(|t| t.parse::<u16>().map_err(|_| err(n, format!("invalid entry `{t}`")))).collect()
}

/// Parses a group file into its carrier and generator list.
pub fn parse_generators(text: &str) -> Result<(Carrier, Vec<GroupElement>), GroupFileError> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (kn, kind) = lines.keyed("kind")?;
    let carrier = match kind {
        "perm" => {
            let (n, degree) = lines.number::<usize>("degree")?;
            if degree == 0 || degree > u16::MAX as usize {
                return Err(err(n, "degree must be in 1..=65535"));
            }
            Carrier::Perm { degree }
        }
        "unitriangular" => {
            let (n, dim) = lines.number::<usize>("dimension")?;
            if !(1..=u8::MAX as usize).contains(&dim) {
                return Err(err(n, "dimension must be in 1..=255"));
            }
            let (n, modulus) = lines.number::<u16>("modulus")?;
            if modulus < 2 {
                return Err(err(n, "modulus must be at least 2"));
            }
            Carrier::Unitriangular { dim, modulus }
        }
        other => return Err(err(kn, format!("unknown kind `{other}`"))),
    };
    let (gn, count) = lines.number::<usize>("generators")?;
    if count == 0 {
        return Err(err(gn, "at least one generator is required"));
    }
    let mut generators = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, line) = lines.next_content("generator row")?;
        let values = row(n, line)?;
        let g = match carrier {
            Carrier::Perm { degree } => {
                if values.len() != degree {
                    return Err(err(n, format!("expected {degree} images, found {}", values.len())));
                }
                GroupElement::Perm(Permutation::from_one_based(&values).map_err(|e| err(n, e.to_string()))?)
            }
            Carrier::Unitriangular { dim, modulus } => GroupElement::Unitriangular(
                UnitriangularMatrix::from_rows(dim, modulus, &values).map_err(|e| err(n, e.to_string()))?,
            ),
        };
        generators.push(g);
    }
    if let Ok((n, _)) = lines.next_content("") {
        return Err(err(n, "trailing content after the generator rows"));
    }
    Ok((carrier, generators))
}

/// Parses a group file and closes the generators.
pub fn from_text(text: &str, cap: usize) -> Result<FiniteGroup, GroupFileError> {
    let (_, generators) = parse_generators(text)?;
    Ok(close(&generators, cap)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_CAP;

    const SYM3: &str = "kind perm\ndegree 3\ngenerators 2\n2 1 3\n2 3 1\n";

    #[test]
    fn round_trip_is_exact() {
        let g = from_text(SYM3, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(to_text(&g), SYM3);
        let ut = "kind unitriangular\ndimension 3\nmodulus 3\ngenerators 2\n1 1 0 0 1 0 0 0 1\n1 0 0 0 1 1 0 0 1\n";
        let u = from_text(ut, DEFAULT_CAP).unwrap();
        assert_eq!(u.order(), 27);
        assert_eq!(to_text(&u), ut);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# sym3\n\nkind perm\ndegree 3\n\ngenerators 2\n2 1 3\n# next\n2 3 1\n";
        assert_eq!(from_text(text, DEFAULT_CAP).unwrap().order(), 6);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "kind perm\ndegree 3\ngenerators 2\n2 1 3\n2 2 1\n";
        assert!(matches!(parse_generators(bad), Err(GroupFileError::Parse { line: 5, .. })));
        let big = "kind unitriangular\ndimension 2\nmodulus 3\ngenerators 1\n1 3 0 1\n";
        assert!(matches!(parse_generators(big), Err(GroupFileError::Parse { line: 5, .. })));
        let kind = "kind lie\n";
        assert!(matches!(parse_generators(kind), Err(GroupFileError::Parse { line: 1, .. })));
        let short = "kind perm\ndegree 3\ngenerators 2\n2 1 3\n";
        assert!(matches!(parse_generators(short), Err(GroupFileError::Truncated(_))));
        let extra = "kind perm\ndegree 2\ngenerators 1\n2 1\n1 2\n";
        assert!(matches!(parse_generators(extra), Err(GroupFileError::Parse { line: 5, .. })));
        let width = "kind perm\ndegree 3\ngenerators 1\n2 1\n";
        assert!(matches!(parse_generators(width), Err(GroupFileError::Parse { line: 4, .. })));
    }
}
