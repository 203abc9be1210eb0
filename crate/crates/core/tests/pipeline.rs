use nilcheck::corpus::{self, default_corpus, make, manifest_from_str, manifest_to_string, Construction, CorpusEntry};
use nilcheck::groups::io;
use nilcheck::theorems::{run_free_checks, run_suite, CheckKind, SuiteConfig, SuiteEntry, Summary, Verdict};

fn small_corpus() -> Vec<SuiteEntry> {
    default_corpus().iter().filter(|e| e.order <= 200).map(SuiteEntry::build).collect()
}

#[test]
fn witnesses_reproduce_their_violations() {
    let entries = small_corpus();
    let reports = run_suite(&entries, &CheckKind::ALL, &SuiteConfig::default());
    let mut replayed = 0;
    for r in &reports {
        let Some(w) = &r.witness else { continue };
        if w.word.is_none() {
            continue;
        }
        let g = entries
            .iter()
            .find_map(|e| match e {
                SuiteEntry::Group { name, group } if *name == r.group => Some(group),
                _ => None,
            })
            .unwrap();
        assert_eq!(w.reproduces(g), Some(true), "{} on {}", r.check, r.group);
        replayed += 1;
    }
    assert!(replayed > 0);
    assert_eq!(Summary::of(&reports).fail, 0);
}

#[test]
fn heineken_never_fails_on_the_default_corpus() {
    let entries: Vec<SuiteEntry> = default_corpus().iter().map(SuiteEntry::build).collect();
    let reports = run_suite(&entries, &[CheckKind::Heineken], &SuiteConfig::default());
    assert_eq!(reports.len(), entries.len());
    assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { sample: 2000, ..SuiteConfig::default() };
    let run = || {
        let mut r = run_free_checks(&CheckKind::ALL, &cfg);
        r.extend(run_suite(&small_corpus(), &CheckKind::ALL, &cfg));
        r.iter().map(|r| r.to_json_line()).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(run(), run());
}

#[test]
fn corrupted_metadata_becomes_skipped_reports() {
    let mut entries = default_corpus();
    entries.truncate(2);
    entries[1].order += 1;
    let text = manifest_to_string(&entries);
    let parsed: Vec<CorpusEntry> = manifest_from_str(&text).unwrap();
    let suite: Vec<SuiteEntry> = parsed.iter().map(SuiteEntry::build).collect();
    assert!(suite[1].is_invalid());
    let reports = run_suite(&suite, &[CheckKind::Heineken], &SuiteConfig::default());
    assert_eq!(reports[0].verdict, Verdict::Pass);
    assert_eq!(reports[1].verdict, Verdict::Skipped);
    assert!(reports[1].reason.as_deref().unwrap().contains("order"));
}

#[test]
fn group_files_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    for c in [Construction::Symmetric(4), Construction::Unitriangular(3, 3), Construction::Quaternion(16)] {
        let g = make(&c).unwrap();
        let path = dir.path().join(format!("{c}.group"));
        corpus::save(&g, &path).unwrap();
        let back = corpus::load(&path).unwrap();
        assert_eq!(back.order(), g.order());
        assert_eq!(io::to_text(&back), io::to_text(&g));
    }
}

#[test]
fn manifests_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.toml");
    corpus::save_manifest(&default_corpus(), &path).unwrap();
    assert_eq!(corpus::load_manifest(&path).unwrap(), default_corpus());
}
