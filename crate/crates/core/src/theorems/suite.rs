use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::checks::{
    check_exponent_law, check_fitting_series, check_heineken, check_power_commutation, check_power_subgroup_nilpotent,
    check_variety_implication,
};
use super::free::{check_bound_weight_link, check_vn_law, check_weights};
use super::report::{Params, Verdict, VerificationReport};
use crate::corpus::CorpusEntry;
use crate::groups::{FiniteGroup, SweepOptions};
use crate::par;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub sweep: SweepOptions,
    /// Assignments drawn when a law sweep is over budget.
    pub sample: u64,
    pub seed: u64,
    pub engel_cap: usize,
    /// Class parameter of the power-subgroup check.
    pub c: usize,
    /// `n` values for the Fitting-series check.
    pub ns: Vec<usize>,
    /// `d` values for the variety and bound checks.
    pub ds: Vec<usize>,
    /// Record wall time per report. Off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            sweep: SweepOptions::default(),
            sample: 100_000,
            seed: 1,
            engel_cap: 64,
            c: 5,
            ns: vec![1, 2, 3],
            ds: vec![2, 3],
            timings: false,
        }
    }
}

/// Checks in report-name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    BoundWeightLink,
    ExponentLaw,
    FittingSeries,
    Heineken,
    PowerCommutation,
    PowerSubgroup,
    VarietyImplication,
    VnLaw,
    Weights,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::BoundWeightLink,
        CheckKind::ExponentLaw,
        CheckKind::FittingSeries,
        CheckKind::Heineken,
        CheckKind::PowerCommutation,
        CheckKind::PowerSubgroup,
        CheckKind::VarietyImplication,
        CheckKind::VnLaw,
        CheckKind::Weights,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::BoundWeightLink => "bound_weight_link",
            CheckKind::ExponentLaw => "exponent_law",
            CheckKind::FittingSeries => "fitting_series",
            CheckKind::Heineken => "heineken",
            CheckKind::PowerCommutation => "power_commutation",
            CheckKind::PowerSubgroup => "power_subgroup",
            CheckKind::VarietyImplication => "variety_implication",
            CheckKind::VnLaw => "vn_law",
            CheckKind::Weights => "weights",
        }
    }

    /// Checks about the free group rather than a corpus group.
    pub fn is_free(self) -> bool {
        matches!(self, CheckKind::BoundWeightLink | CheckKind::VnLaw | CheckKind::Weights)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = CheckKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown check {s:?}; expected one of {}", names.join(", "))
        })
    }
}

pub enum SuiteEntry {
    Group {
        name: String,
        group: FiniteGroup,
    },
    /// A corpus entry that failed to build or to match its metadata.
    Invalid {
        name: String,
        reason: String,
    },
}

impl SuiteEntry {
    pub fn build(entry: &CorpusEntry) -> SuiteEntry {
        match entry.build() {
            Ok(group) => SuiteEntry::Group { name: entry.name.clone(), group },
            Err(e) => SuiteEntry::Invalid { name: entry.name.clone(), reason: e.to_string() },
        }
    }

    pub fn name(&self) -> &str {
        match self {
            SuiteEntry::Group { name, .. } | SuiteEntry::Invalid { name, .. } => name,
        }
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, SuiteEntry::Invalid { .. })
    }
}

fn timed(cfg: &SuiteConfig, f: impl FnOnce() -> Vec<VerificationReport>) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut out = f();
    if cfg.timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut out {
            r.wall_ms = Some(ms);
        }
    }
    out
}

fn skipped(check: CheckKind, group: &str, reason: String) -> VerificationReport {
    let mut r = VerificationReport::new(check.name(), group, Params::default());
    r.set(Verdict::Skipped, reason);
    r
}

fn run_group_check(check: CheckKind, g: &FiniteGroup, name: &str, cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let o = &cfg.sweep;
    let prime = g.p_group_prime();
    let not_p = || vec![skipped(check, name, "not a p-group".into())];
    let lift = |r: Result<VerificationReport, _>| match r {
        Ok(r) => r,
        Err(e) => skipped(check, name, format!("{e}")),
    };
    match check {
        CheckKind::Heineken => vec![check_heineken(g, name, o)],
        CheckKind::FittingSeries => {
            cfg.ns.iter().map(|&n| check_fitting_series(g, name, n, cfg.sample, cfg.seed, o)).collect()
        }
        CheckKind::VarietyImplication => cfg.ds.iter().map(|&d| check_variety_implication(g, name, d, o)).collect(),
        CheckKind::PowerCommutation => match prime {
            Some(p) => vec![lift(check_power_commutation(g, name, p, cfg.engel_cap, o))],
            None => not_p(),
        },
        CheckKind::PowerSubgroup => match prime {
            Some(p) => vec![lift(check_power_subgroup_nilpotent(g, name, p, cfg.c, o))],
            None => not_p(),
        },
        CheckKind::ExponentLaw => {
            [2, 3].into_iter().map(|p| lift(check_exponent_law(g, name, p, cfg.sample, cfg.seed, o))).collect()
        }
        CheckKind::BoundWeightLink | CheckKind::VnLaw | CheckKind::Weights => Vec::new(),
    }
}

fn selected(checks: &[CheckKind], free: bool) -> Vec<CheckKind> {
    let mut c: Vec<CheckKind> = checks.iter().copied().filter(|k| k.is_free() == free).collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// Runs the selected group checks over `entries`. Reports are ordered by
/// entry, then check name, then parameter order, however the work is
/// scheduled. Invalid entries yield one skipped report per selected check.
pub fn run_suite(entries: &[SuiteEntry], checks: &[CheckKind], cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let checks = selected(checks, false);
    let per_entry = par::map_slice(cfg.sweep.exec, entries, |entry| match entry {
        SuiteEntry::Invalid { name, reason } => {
            checks.iter().map(|&k| skipped(k, name, format!("invalid corpus entry: {reason}"))).collect::<Vec<_>>()
        }
        SuiteEntry::Group { name, group } => {
            checks.iter().flat_map(|&k| timed(cfg, || run_group_check(k, group, name, cfg))).collect()
        }
    });
    per_entry.into_iter().flatten().collect()
}

/// Runs the selected free-group checks, in check-name order.
pub fn run_free_checks(checks: &[CheckKind], cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for k in selected(checks, true) {
        out.extend(timed(cfg, || match k {
            CheckKind::Weights => vec![check_weights()],
            CheckKind::BoundWeightLink => cfg.ds.iter().map(|&d| check_bound_weight_link(d)).collect(),
            CheckKind::VnLaw => vec![check_vn_law()],
            _ => Vec::new(),
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{make, Construction};

    fn entry(name: &str, c: Construction) -> SuiteEntry {
        SuiteEntry::Group { name: name.into(), group: make(&c).unwrap() }
    }

    #[test]
    fn empty_corpus_gives_no_reports() {
        assert!(run_suite(&[], &CheckKind::ALL, &SuiteConfig::default()).is_empty());
    }

    #[test]
    fn alt5_fitting_series_is_vacuous() {
        let cfg = SuiteConfig { ns: vec![1], ..SuiteConfig::default() };
        let r = run_suite(&[entry("alt5", Construction::Alternating(5))], &[CheckKind::FittingSeries], &cfg);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].verdict, Verdict::Vacuous);
    }

    #[test]
    fn ordering_and_invalid_entries() {
        let entries = [
            entry("cyclic3", Construction::Cyclic(3)),
            SuiteEntry::Invalid { name: "bad".into(), reason: "order mismatch".into() },
            entry("sym3", Construction::Symmetric(3)),
        ];
        let checks = [CheckKind::VarietyImplication, CheckKind::Heineken];
        let r = run_suite(&entries, &checks, &SuiteConfig::default());
        let keys: Vec<(&str, &str)> = r.iter().map(|r| (r.group.as_str(), r.check.as_str())).collect();
        assert_eq!(
            keys,
            [
                ("cyclic3", "heineken"),
                ("cyclic3", "variety_implication"),
                ("cyclic3", "variety_implication"),
                ("bad", "heineken"),
                ("bad", "variety_implication"),
                ("sym3", "heineken"),
                ("sym3", "variety_implication"),
                ("sym3", "variety_implication"),
            ]
        );
        assert_eq!(r[3].verdict, Verdict::Skipped);
    }

    #[test]
    fn check_order_is_name_order() {
        let names: Vec<&str> = CheckKind::ALL.iter().map(|k| k.name()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }

    #[test]
    fn check_names_round_trip() {
        for k in CheckKind::ALL {
            assert_eq!(k.name().parse::<CheckKind>().unwrap(), k);
        }
        assert!("nope".parse::<CheckKind>().is_err());
    }
}
