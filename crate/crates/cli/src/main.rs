//! `nilcheck`: command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on
//! malformed input (bad arguments, unparsable words or files, invalid corpus
//! entries).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcheck::corpus::{default_corpus, load_manifest, manifest_to_string, Construction};
use nilcheck::groups::{
    io as group_io, EngelDegree, FiniteGroup, LawMode, LawVerdict, SweepOptions, VarietyClass, DEFAULT_BUDGET,
    DEFAULT_CAP,
};
use nilcheck::magnus::{
    gamma_weight_report, gamma_weight_series, leading_terms, witt_number, GammaWeight, Monomial, SeriesOptions,
};
use nilcheck::par::Exec;
use nilcheck::theorems::{
    bounds, compute_r_engel, compute_r_variety, run_free_checks, run_suite, variety_power, CheckKind, SuiteConfig,
    SuiteEntry, Summary, Verdict,
};
use nilcheck::words::parse;

#[derive(Parser)]
#[command(name = "nilcheck", version, about = "Commutator laws, Magnus weights and finite-group verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Sweep {
    /// Largest number of tuples an exhaustive sweep may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Run sweeps on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Sweep {
    fn options(&self) -> SweepOptions {
        SweepOptions { budget: self.budget, exec: if self.sequential { Exec::Sequential } else { Exec::default() } }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Engel,
    Variety,
}

#[derive(Subcommand)]
enum Command {
    /// Lower-central weight of a word in the free group.
    Weight {
        word: String,
        /// Truncation degree.
        #[arg(long = "D", value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        /// Also print the nonzero terms of minimal degree.
        #[arg(long)]
        terms: bool,
        /// Expand with per-variable degree caps (multihomogeneous pruning).
        #[arg(long)]
        prune: bool,
        /// Give up once an intermediate series has more terms than this.
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Check whether a word is a law of a group.
    Law {
        /// Group file, or a construction such as `symmetric(3)`.
        group: String,
        word: String,
        /// Draw this many seeded assignments instead of sweeping.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Run verification checks over a corpus and write one JSON report per line.
    Verify {
        /// A check name or `all`.
        check: String,
        /// `default` or a manifest path.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Assignments drawn when a sweep is over budget.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        sample: u64,
        /// Class parameter of the power-subgroup check.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
        c: u64,
        /// Record wall time in each report.
        #[arg(long)]
        timings: bool,
        /// Report file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Class bounds for d-generator varieties.
    Bounds {
        #[arg(value_parser = clap::value_parser!(u64).range(2..63))]
        d: u64,
    },
    /// The exponent r for class c and prime p.
    R {
        c: usize,
        p: u64,
        #[arg(long, value_enum, default_value_t = Variant::Engel)]
        variant: Variant,
    },
    /// Dimension of the degree-n component of the free Lie ring of rank r.
    Witt { r: u64, n: u64 },
    /// Largest class of a d-generated subgroup.
    Variety {
        group: String,
        d: usize,
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Fitting subgroup and Fitting height.
    Fitting {
        group: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Structural summary of a group: order, exponent, class, Engel degree.
    Info {
        group: String,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Write a group file for a construction.
    Make {
        construction: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the default corpus manifest.
    Corpus,
}

type Failure = (u8, String);

fn malformed(e: impl ToString) -> Failure {
    (2, e.to_string())
}

fn load_group(arg: &str, cap: usize) -> Result<FiniteGroup, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| malformed(format!("{arg}: {e}")))?;
        return group_io::from_text(&text, cap).map_err(|e| malformed(format!("{arg}: {e}")));
    }
    let c: Construction = arg.parse().map_err(|e| malformed(format!("{arg}: not a file, and {e}")))?;
    let gens = c.generators().map_err(malformed)?;
    nilcheck::groups::close(&gens, cap).map_err(malformed)
}

fn monomial_text(m: &Monomial) -> String {
    m.iter().map(|i| format!("X{i}")).collect()
}

fn emit(out: &mut impl Write, text: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", text.as_ref()).map_err(|e| (2, e.to_string()))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Weight { word, d, terms, prune, max_terms } => {
            let expr = parse(&word).map_err(malformed)?;
            let d = d as usize;
            let report = if prune || max_terms.is_some() {
                gamma_weight_series(&expr, d, &SeriesOptions { prune, max_terms })
            } else {
                gamma_weight_report(&expr, d)
            }
            .map_err(malformed)?;
            match report.weight {
                GammaWeight::Exact(k) => emit(out, k.to_string())?,
                GammaWeight::ExceedsD(d) => emit(out, format!(">{d}"))?,
            }
            if terms {
                if let Some((_, ts)) = leading_terms(&expr, d).map_err(malformed)? {
                    for (m, c) in ts {
                        emit(out, format!("{c} {}", monomial_text(&m)))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Law { group, word, sample, seed, sweep } => {
            let g = load_group(&group, sweep.cap)?;
            let expr = parse(&word).map_err(malformed)?;
            let mode = match sample {
                Some(count) => LawMode::Sample { count, seed },
                None => LawMode::Exhaustive,
            };
            match g.law_check(&expr, mode, &sweep.options()).map_err(malformed)? {
                LawVerdict::Holds { examined, sampled } => {
                    let how = if sampled { "sampled" } else { "exhaustive" };
                    emit(out, format!("holds ({how}, {examined} assignments)"))?;
                }
                LawVerdict::Counterexample { assignment, examined } => {
                    emit(out, format!("counterexample after {examined} assignments"))?;
                    for (v, i) in assignment {
                        emit(out, format!("x{v} = {}", g.element(i)))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { check, corpus, seed, sample, c, timings, out: path, sweep } => {
            let checks: Vec<CheckKind> =
                if check == "all" { CheckKind::ALL.to_vec() } else { vec![check.parse().map_err(malformed)?] };
            let manifest = if corpus == "default" {
                default_corpus()
            } else {
                load_manifest(Path::new(&corpus)).map_err(malformed)?
            };
            let entries: Vec<SuiteEntry> = manifest.iter().map(SuiteEntry::build).collect();
            let cfg =
                SuiteConfig { sweep: sweep.options(), sample, seed, c: c as usize, timings, ..SuiteConfig::default() };
            let mut reports = run_free_checks(&checks, &cfg);
            reports.extend(run_suite(&entries, &checks, &cfg));
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.to_json_line());
                text.push('\n');
            }
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| malformed(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(malformed)?,
            }
            let s = Summary::of(&reports);
            let invalid = entries.iter().filter(|e| e.is_invalid()).count();
            eprintln!(
                "pass {} fail {} vacuous {} skipped {} invalid_entries {}",
                s.pass, s.fail, s.vacuous, s.skipped, invalid
            );
            for r in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
                eprintln!("FAIL {} {} {:?}", r.check, r.group, r.params);
            }
            Ok(if invalid > 0 {
                2
            } else if s.fail > 0 {
                1
            } else {
                0
            })
        }
        Command::Bounds { d } => {
            let (b1, b2) = bounds(d as usize).map_err(malformed)?;
            emit(out, format!("{b1} {b2}"))?;
            Ok(0)
        }
        Command::R { c, p, variant } => {
            match variant {
                Variant::Engel => emit(out, compute_r_engel(c, p).map_err(malformed)?.to_string())?,
                Variant::Variety => {
                    let r = compute_r_variety(c, p).map_err(malformed)?;
                    let m = variety_power(c, p).map_err(malformed)?;
                    emit(out, format!("{r}"))?;
                    emit(out, format!("power {m}"))?;
                }
            }
            Ok(0)
        }
        Command::Witt { r, n } => {
            if r == 0 || n == 0 {
                return Err(malformed("witt needs r >= 1 and n >= 1"));
            }
            emit(out, witt_number(r, n).to_string())?;
            Ok(0)
        }
        Command::Variety { group, d, sample, seed, sweep } => {
            let g = load_group(&group, sweep.cap)?;
            let mode = match sample {
                Some(count) => LawMode::Sample { count, seed },
                None => LawMode::Exhaustive,
            };
            let v = g.variety_class(d, mode, &sweep.options()).map_err(malformed)?;
            let class = match v.class {
                VarietyClass::Class(c) if v.exhaustive => c.to_string(),
                VarietyClass::Class(c) => format!(">={c}"),
                VarietyClass::NotNilpotent => "none".into(),
            };
            emit(out, class)?;
            let tuple: Vec<String> = v.witness.iter().map(|&i| g.element(i).to_string()).collect();
            emit(out, format!("witness {}", tuple.join(" ")))?;
            emit(out, format!("examined {}", v.examined))?;
            Ok(0)
        }
        Command::Fitting { group, cap } => {
            let g = load_group(&group, cap)?;
            let f = g.fitting();
            emit(out, format!("order {}", f.order()))?;
            for i in f.elements() {
                emit(out, g.element(i).to_string())?;
            }
            let height = match g.fitting_height().map_err(malformed)? {
                Some(h) => h.to_string(),
                None => "undefined".into(),
            };
            emit(out, format!("height {height}"))?;
            Ok(0)
        }
        Command::Info { group, sweep } => {
            let g = load_group(&group, sweep.cap)?;
            let class = g.nilpotency_class().map_or("none".to_string(), |c| c.to_string());
            let engel = match g.engel_degree(64, &sweep.options()) {
                EngelDegree::Degree(c) => c.to_string(),
                EngelDegree::NoneUpTo(c) => format!(">{c}"),
            };
            emit(out, format!("order {}", g.order()))?;
            emit(out, format!("exponent {}", g.exponent()))?;
            emit(out, format!("class {class}"))?;
            emit(out, format!("engel {engel}"))?;
            emit(out, format!("classes {}", g.conjugacy_classes().len()))?;
            Ok(0)
        }
        Command::Make { construction, out: path } => {
            let c: Construction = construction.parse().map_err(malformed)?;
            let gens = c.generators().map_err(malformed)?;
            let carrier = gens.first().ok_or_else(|| malformed("construction has no generators"))?.carrier();
            let text = group_io::generators_to_text(carrier, &gens);
            match path {
                Some(p) => fs::write(&p, text).map_err(|e| malformed(format!("{}: {e}", p.display())))?,
                None => out.write_all(text.as_bytes()).map_err(malformed)?,
            }
            Ok(0)
        }
        Command::Corpus => {
            out.write_all(manifest_to_string(&default_corpus()).as_bytes()).map_err(malformed)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
