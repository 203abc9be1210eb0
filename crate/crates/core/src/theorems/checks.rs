use serde_json::{json, Value};

use super::report::{Params, Verdict, VerificationReport, Witness};
use super::{bounds, compute_r_engel, compute_r_variety, variety_power};
use crate::groups::{EngelDegree, FiniteGroup, GroupError, LawMode, LawVerdict, SweepOptions, VarietyClass};
use crate::magnus::is_law_of_nc;
use crate::par;
use crate::words::{build_w, parse, CommutatorExpr};

/// Groups up to this order get element lists in report details.
const LIST_LIMIT: usize = 120;

fn element_names(g: &FiniteGroup, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| g.element(i).to_string()).collect()
}

fn noncommuting_pair(g: &FiniteGroup, gens: &[usize]) -> Option<(usize, usize)> {
    gens.iter()
        .enumerate()
        .find_map(|(i, &a)| gens[i + 1..].iter().find(|&&b| g.mul(a, b) != g.mul(b, a)).map(|&b| (a, b)))
}

/// Elements `g` with `[g, x, g, x] = 1` for every `x`, sorted, and the number
/// of pairs examined. The condition is conjugation invariant, so one
/// representative per class is tested.
fn qualifying_classes(g: &FiniteGroup, opts: &SweepOptions) -> (Vec<usize>, u64) {
    let n = g.order();
    let reps = g.class_representatives();
    let ok = par::map_slice(opts.exec, &reps, |&a| {
        (0..n).all(|x| {
            let t = g.comm(g.comm(g.comm(a, x), a), x);
            t == g.identity()
        })
    });
    let classes = ok.iter().enumerate().filter(|(_, &q)| q).map(|(i, _)| i).collect();
    (classes, (reps.len() * n) as u64)
}

/// Sorted indices of the elements `g` with `[g, x, g, x] = 1` for all `x`.
pub fn heineken_qualifying(g: &FiniteGroup, opts: &SweepOptions) -> Vec<usize> {
    let (classes, _) = qualifying_classes(g, opts);
    let all = g.conjugacy_classes();
    let mut out: Vec<usize> = classes.iter().flat_map(|&c| all[c].iter().map(|&i| i as usize)).collect();
    out.sort_unstable();
    out
}

/// For each qualifying `g`, with `H` the normal closure of `<g>` in `G`:
/// the normal closure of `<g>` in `H` is abelian, and `g` lies in the
/// Fitting subgroup.
pub fn check_heineken(g: &FiniteGroup, group: &str, opts: &SweepOptions) -> VerificationReport {
    let mut rep = VerificationReport::new("heineken", group, Params::default());
    let (classes, work) = qualifying_classes(g, opts);
    rep.work = work;
    let all = g.conjugacy_classes();
    let reps: Vec<usize> = classes.iter().map(|&c| all[c][0] as usize).collect();
    let fit = g.fitting();
    let outcomes = par::map_slice(opts.exec, &reps, |&a| {
        let h = g.normal_closure_of(&[a]);
        let k = g.normal_closure_within(&h, &[a]);
        let gens: Vec<usize> = k.generators().collect();
        (noncommuting_pair(g, &gens), fit.contains(a), k.order())
    });
    let qualifying: usize = classes.iter().map(|&c| all[c].len()).sum();
    rep.detail("qualifying_count", qualifying).detail("qualifying_classes", classes.len());
    if g.order() <= LIST_LIMIT {
        rep.detail("qualifying", element_names(g, heineken_qualifying(g, opts)));
        let closure_orders: Vec<usize> = outcomes.iter().map(|o| o.2).collect();
        rep.detail("closure_orders", closure_orders);
    }
    for (&a, (pair, in_fitting, _)) in reps.iter().zip(&outcomes) {
        if let Some((x, y)) = pair {
            rep.fail(Witness {
                elements: element_names(g, [a]),
                ..Witness::from_assignment(
                    g,
                    "(c x1 x2)",
                    &[(1, *x), (2, *y)],
                    "noncommuting generators of the normal closure of <g> in <g>^G",
                )
            });
            return rep;
        }
        if !in_fitting {
            rep.fail(Witness {
                elements: element_names(g, [a]),
                ..Witness::note("qualifying element outside the Fitting subgroup")
            });
            return rep;
        }
    }
    rep
}

enum Premise {
    Holds { method: &'static str, examined: u64, sampled: bool },
    Fails { assignment: Vec<(u32, usize)>, examined: u64, sampled: bool },
    Unknown { reason: String, examined: u64 },
}

/// Decides whether `expr` is a law of `g`: by the class bound when `g` is
/// nilpotent, then by exhaustive sweeps within budget, then by a seeded
/// counterexample search.
fn law_premise(g: &FiniteGroup, expr: &CommutatorExpr, sample: u64, seed: u64, opts: &SweepOptions) -> Premise {
    if let Some(c) = g.nilpotency_class() {
        if is_law_of_nc(expr, c).unwrap_or(false) {
            return Premise::Holds { method: "class_bound", examined: 0, sampled: false };
        }
    }
    let modes = [
        ("exhaustive", LawMode::Exhaustive),
        ("up_to_conjugacy", LawMode::UpToConjugacy),
        ("sampled", LawMode::Sample { count: sample, seed }),
    ];
    let mut last = String::new();
    for (method, mode) in modes {
        let sampled = matches!(mode, LawMode::Sample { .. });
        match g.law_check(expr, mode, opts) {
            Ok(LawVerdict::Counterexample { assignment, examined }) => {
                return Premise::Fails { assignment, examined, sampled };
            }
            Ok(LawVerdict::Holds { examined, .. }) if sampled => {
                return Premise::Unknown {
                    reason: format!("law not decided: over budget and no counterexample in {examined} samples"),
                    examined,
                };
            }
            Ok(LawVerdict::Holds { examined, .. }) => return Premise::Holds { method, examined, sampled },
            Err(e) => last = e.to_string(),
        }
    }
    Premise::Unknown { reason: last, examined: 0 }
}

/// If `W_n = 1` is a law of `g`, the Fitting height of `g` is at most `n`.
pub fn check_fitting_series(
    g: &FiniteGroup,
    group: &str,
    n: usize,
    sample: u64,
    seed: u64,
    opts: &SweepOptions,
) -> VerificationReport {
    let mut rep = VerificationReport::new("fitting_series", group, Params { n: Some(n as u64), ..Params::default() });
    let w = match build_w(n) {
        Ok(w) => w,
        Err(e) => {
            rep.set(Verdict::Skipped, e.to_string());
            return rep;
        }
    };
    let word = w.to_string();
    match law_premise(g, &w, sample, seed, opts) {
        Premise::Unknown { reason, examined } => {
            rep.work = examined;
            rep.sampled = examined > 0;
            rep.set(Verdict::Skipped, reason);
        }
        Premise::Fails { assignment, examined, sampled } => {
            rep.work = examined;
            rep.sampled = sampled;
            rep.set(Verdict::Vacuous, format!("W_{n} is not a law"));
            rep.witness = Some(Witness::from_assignment(g, &word, &assignment, "W_n counterexample"));
        }
        Premise::Holds { method, examined, sampled } => {
            rep.work = examined;
            rep.sampled = sampled;
            rep.detail("law_method", method);
            match g.fitting_height() {
                Ok(Some(h)) => {
                    rep.detail("fitting_height", h);
                    if h > n {
                        rep.fail(Witness::note(format!("W_{n} holds but the Fitting height is {h}")));
                    }
                }
                Ok(None) => {
                    rep.detail("fitting_height", "undefined");
                    rep.fail(Witness::note(format!("W_{n} holds but the Fitting series does not reach the group")));
                }
                Err(e) => {
                    rep.set(Verdict::Skipped, e.to_string());
                }
            }
        }
    }
    rep
}

/// If every `d`-generated subgroup is nilpotent of class at most
/// `2^d + 2^(d-1) - 3`, the group is nilpotent.
pub fn check_variety_implication(g: &FiniteGroup, group: &str, d: usize, opts: &SweepOptions) -> VerificationReport {
    let mut rep =
        VerificationReport::new("variety_implication", group, Params { d: Some(d as u64), ..Params::default() });
    let (b1, _) = match bounds(d) {
        Ok(b) => b,
        Err(e) => {
            rep.set(Verdict::Skipped, e.to_string());
            return rep;
        }
    };
    rep.detail("bound", b1);
    if let Some(c) = g.nilpotency_class() {
        if c as u64 <= b1 {
            rep.detail("premise", "class_bound").detail("class", c);
            return rep;
        }
    }
    let out = match g.variety_class(d, LawMode::Exhaustive, opts) {
        Ok(o) => o,
        Err(e) => {
            rep.set(Verdict::Skipped, e.to_string());
            return rep;
        }
    };
    rep.work = out.examined;
    rep.detail("witness_tuple", element_names(g, out.witness.iter().copied()));
    match out.class {
        VarietyClass::NotNilpotent => {
            rep.detail("variety_class", "none");
            rep.set(Verdict::Vacuous, format!("some {d}-generated subgroup is not nilpotent"));
        }
        VarietyClass::Class(c) => {
            rep.detail("variety_class", c);
            if c as u64 > b1 {
                rep.set(Verdict::Vacuous, format!("variety class {c} exceeds {b1}"));
            } else if !g.is_nilpotent() {
                rep.fail(Witness {
                    elements: element_names(g, out.witness.iter().copied()),
                    ..Witness::note(format!("variety class {c} <= {b1} but the group is not nilpotent"))
                });
            }
        }
    }
    rep
}

fn require_p_group(g: &FiniteGroup, p: u64) -> Result<(), GroupError> {
    if g.p_group_prime() == Some(p) {
        Ok(())
    } else {
        Err(GroupError::NotPGroup { order: g.order(), p })
    }
}

/// For a `p`-group of Engel degree `c` and `p^(r-1) < c <= p^r`:
/// `[x^(p^(n-1)), y^(p^(n-1))] = 1` whenever `x^(p^n) = y^(p^n) = 1` and
/// `n > r` (`n > r + 1` for `p = 2`). Every admissible `n` is checked.
pub fn check_power_commutation(
    g: &FiniteGroup,
    group: &str,
    p: u64,
    engel_cap: usize,
    opts: &SweepOptions,
) -> Result<VerificationReport, GroupError> {
    require_p_group(g, p)?;
    let mut rep = VerificationReport::new("power_commutation", group, Params { p: Some(p), ..Params::default() });
    let c = match g.engel_degree(engel_cap, opts) {
        EngelDegree::Degree(c) => c.max(1),
        EngelDegree::NoneUpTo(cap) => {
            rep.set(Verdict::Skipped, format!("Engel degree exceeds {cap}"));
            return Ok(rep);
        }
    };
    let r = compute_r_engel(c, p).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
    rep.params.c = Some(c as u64);
    rep.detail("engel_degree", c).detail("r", r);
    let mut e = 0u32;
    while p.pow(e) < g.exponent() {
        e += 1;
    }
    let first = if p == 2 { r + 2 } else { r + 1 };
    let orders = g.element_orders();
    let mut instances = Vec::new();
    for n in first..=e {
        let q = p.pow(n - 1);
        let bound = p.pow(n);
        // distinct nontrivial powers x^q over x with x^(p^n) = 1, each with its least source
        let mut source = vec![usize::MAX; g.order()];
        for x in 0..g.order() {
            if bound % orders[x] == 0 {
                let y = g.pow(x, q as i64);
                if y != g.identity() && source[y] == usize::MAX {
                    source[y] = x;
                }
            }
        }
        let powers: Vec<usize> = (0..g.order()).filter(|&y| source[y] != usize::MAX).collect();
        rep.work += (powers.len() * powers.len()) as u64;
        instances.push(json!({ "n": n, "distinct_powers": powers.len() }));
        let bad = par::find_first(opts.exec, powers.len(), |i| {
            let a = powers[i];
            powers[i + 1..].iter().find(|&&b| g.comm(a, b) != g.identity()).map(|&b| (a, b))
        });
        if let Some((_, (a, b))) = bad {
            rep.detail("instances", Value::Array(instances));
            rep.fail(Witness::from_assignment(
                g,
                &format!("(c (p x1 {q}) (p x2 {q}))"),
                &[(1, source[a]), (2, source[b])],
                format!("n = {n}"),
            ));
            return Ok(rep);
        }
    }
    let nontrivial = instances.iter().any(|v| v["distinct_powers"].as_u64() > Some(0));
    rep.detail("instances", Value::Array(instances));
    if !nontrivial {
        rep.set(Verdict::Vacuous, "no admissible n with a nontrivial power");
    }
    Ok(rep)
}

/// Whether every 2-generated subgroup has class at most `c`, or a skip reason.
fn in_two_generator_variety(
    g: &FiniteGroup,
    c: usize,
    rep: &mut VerificationReport,
    opts: &SweepOptions,
) -> Result<bool, String> {
    if let Some(k) = g.nilpotency_class() {
        if k <= c {
            rep.detail("premise", "class_bound").detail("class", k);
            return Ok(true);
        }
    }
    let out = g.variety_class(2, LawMode::Exhaustive, opts).map_err(|e| e.to_string())?;
    rep.work += out.examined;
    rep.detail("premise", "variety_sweep");
    Ok(match out.class {
        VarietyClass::Class(k) => {
            rep.detail("variety_class", k);
            k <= c
        }
        VarietyClass::NotNilpotent => {
            rep.detail("variety_class", "none");
            false
        }
    })
}

/// For a `p`-group whose 2-generated subgroups have class at most `c`:
/// `G^(p^r)` (odd `p`) or `G^(2^(r+1))` is nilpotent, `p^(r-1) < c - 1 <= p^r`.
pub fn check_power_subgroup_nilpotent(
    g: &FiniteGroup,
    group: &str,
    p: u64,
    c: usize,
    opts: &SweepOptions,
) -> Result<VerificationReport, GroupError> {
    require_p_group(g, p)?;
    let r = compute_r_variety(c, p).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
    let m = variety_power(c, p).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
    let mut rep =
        VerificationReport::new("power_subgroup", group, Params { c: Some(c as u64), p: Some(p), ..Params::default() });
    rep.detail("r", r).detail("power", m);
    match in_two_generator_variety(g, c, &mut rep, opts) {
        Err(reason) => {
            rep.set(Verdict::Skipped, reason);
        }
        Ok(false) => {
            rep.set(Verdict::Vacuous, format!("some 2-generated subgroup has class above {c}"));
        }
        Ok(true) => {
            let h = g.power_subgroup(m)?;
            let class = g.nilpotency_class_of(&h);
            rep.detail("power_subgroup_order", h.order());
            match class {
                Some(k) => {
                    rep.detail("power_subgroup_class", k);
                }
                None => {
                    rep.fail(Witness {
                        elements: element_names(g, h.generators()),
                        ..Witness::note(format!("G^{m} is not nilpotent"))
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Exponent dividing 8 (`p = 2`) or 9 (`p = 3`) and 2-generated subgroups
/// of class at most 5: `[x^q, y, x^q, y] = 1` with `q = 4` or `3`, and every
/// `x^q` lies in the Fitting subgroup.
pub fn check_exponent_law(
    g: &FiniteGroup,
    group: &str,
    p: u64,
    sample: u64,
    seed: u64,
    opts: &SweepOptions,
) -> Result<VerificationReport, GroupError> {
    let (q, modulus) = match p {
        2 => (4u64, 8u64),
        3 => (3, 9),
        _ => return Err(GroupError::InvalidParameter(format!("exponent_law needs p in {{2, 3}}, got {p}"))),
    };
    let mut rep =
        VerificationReport::new("exponent_law", group, Params { c: Some(5), p: Some(p), ..Params::default() });
    let exponent = g.exponent();
    rep.detail("exponent", exponent);
    if modulus % exponent != 0 {
        rep.set(Verdict::Vacuous, format!("exponent {exponent} does not divide {modulus}"));
        return Ok(rep);
    }
    match in_two_generator_variety(g, 5, &mut rep, opts) {
        Err(reason) => {
            rep.set(Verdict::Skipped, reason);
            return Ok(rep);
        }
        Ok(false) => {
            rep.set(Verdict::Vacuous, "some 2-generated subgroup has class above 5");
            return Ok(rep);
        }
        Ok(true) => {}
    }
    let word = format!("[(p x1 {q}),x2,(p x1 {q}),x2]");
    let expr = parse(&word).expect("fixed word parses");
    let n = g.order() as u128;
    let mode = if n * n <= opts.budget as u128 { LawMode::Exhaustive } else { LawMode::Sample { count: sample, seed } };
    rep.sampled = matches!(mode, LawMode::Sample { .. });
    rep.detail("law_mode", if rep.sampled { "sampled" } else { "exhaustive" });
    match g.law_check(&expr, mode, opts)? {
        LawVerdict::Counterexample { assignment, examined } => {
            rep.work += examined;
            rep.fail(Witness::from_assignment(g, &word, &assignment, "law counterexample"));
            return Ok(rep);
        }
        LawVerdict::Holds { examined, .. } => {
            rep.work += examined;
            rep.detail("law_pairs", examined);
        }
    }
    let fit = g.fitting();
    rep.detail("fitting_order", fit.order()).detail("fitting_is_whole_group", fit.order() == g.order());
    if let Some(x) = (0..g.order()).find(|&x| !fit.contains(g.pow(x, q as i64))) {
        rep.fail(Witness {
            elements: element_names(g, [x, g.pow(x, q as i64)]),
            ..Witness::note(format!("x^{q} is outside the Fitting subgroup"))
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make, Construction};

    fn grp(c: Construction) -> FiniteGroup {
        make(&c).unwrap()
    }

    #[test]
    fn heineken_sym3() {
        let g = grp(Construction::Symmetric(3));
        let q = heineken_qualifying(&g, &SweepOptions::default());
        let names = element_names(&g, q);
        assert_eq!(names, ["()", "(1,2,3)", "(1,3,2)"]);
        let rep = check_heineken(&g, "sym3", &SweepOptions::default());
        assert_eq!(rep.verdict, Verdict::Pass);
    }

    #[test]
    fn heineken_abelian_all_qualify() {
        let g = grp(Construction::Cyclic(8));
        assert_eq!(heineken_qualifying(&g, &SweepOptions::default()).len(), 8);
    }

    #[test]
    fn fitting_series_examples() {
        let o = SweepOptions::default();
        let s3 = grp(Construction::Symmetric(3));
        let r = check_fitting_series(&s3, "sym3", 2, 1000, 1, &o);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["fitting_height"], 2);
        assert_eq!(r.work, 216);
        let r = check_fitting_series(&s3, "sym3", 1, 1000, 1, &o);
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.witness.unwrap().reproduces(&s3), Some(true));
        let c = grp(Construction::Cyclic(9));
        let r = check_fitting_series(&c, "cyclic9", 1, 1000, 1, &o);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["law_method"], "class_bound");
    }

    #[test]
    fn variety_implication_examples() {
        let o = SweepOptions::default();
        let q8 = grp(Construction::Quaternion(8));
        assert_eq!(check_variety_implication(&q8, "q8", 2, &o).verdict, Verdict::Pass);
        let s3 = grp(Construction::Symmetric(3));
        let r = check_variety_implication(&s3, "s3", 2, &o);
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.details["variety_class"], "none");
        let d32 = grp(Construction::Dihedral(32));
        let r = check_variety_implication(&d32, "d32", 2, &o);
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert_eq!(r.details["variety_class"], 4);
    }

    #[test]
    fn power_commutation_examples() {
        let o = SweepOptions::default();
        let ut = grp(Construction::Unitriangular(4, 3));
        let r = check_power_commutation(&ut, "ut4_3", 3, 64, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.params.c, Some(3));
        assert_eq!(r.details["r"], 1);
        assert_eq!(r.details["instances"][0]["n"], 2);
        let d8 = grp(Construction::Dihedral(8));
        let r = check_power_commutation(&d8, "d8", 2, 64, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        let c8 = grp(Construction::Cyclic(8));
        assert_eq!(check_power_commutation(&c8, "c8", 2, 64, &o).unwrap().verdict, Verdict::Pass);
        let s3 = grp(Construction::Symmetric(3));
        assert!(check_power_commutation(&s3, "s3", 3, 64, &o).is_err());
    }

    #[test]
    fn power_subgroup_examples() {
        let o = SweepOptions::default();
        let ut = grp(Construction::Unitriangular(4, 3));
        let r = check_power_subgroup_nilpotent(&ut, "ut4_3", 3, 5, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["power"], 9);
        assert_eq!(r.details["power_subgroup_order"], 1);
        let c8 = grp(Construction::Cyclic(8));
        let r = check_power_subgroup_nilpotent(&c8, "c8", 2, 2, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["power"], 2);
        assert_eq!(r.details["power_subgroup_order"], 4);
    }

    #[test]
    fn exponent_law_small() {
        let o = SweepOptions::default();
        let c8 = grp(Construction::Cyclic(8));
        let r = check_exponent_law(&c8, "c8", 2, 100, 1, &o).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.work, 64);
        assert_eq!(r.details["fitting_is_whole_group"], true);
        let s3 = grp(Construction::Symmetric(3));
        assert_eq!(check_exponent_law(&s3, "s3", 3, 100, 1, &o).unwrap().verdict, Verdict::Vacuous);
        assert!(check_exponent_law(&s3, "s3", 5, 100, 1, &o).is_err());
    }
}
