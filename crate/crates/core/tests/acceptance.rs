//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always appear in `cargo test` output.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use admface::verify::{self, Check, Suite};
use admface::{Case, NodeSet, RootDatum, SubRootSystem};

const FIGURE_CASES: [(&str, &str); 4] =
    [("A2", "2,0"), ("A2", "1,1"), ("C2", "1,0"), ("C2", "0,1")];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
        .collect()
}

/// Runs `f` on each case, failing if any case fails or exceeds `limit`.
fn per_case(
    cases: &[(&str, &str)],
    limit: Duration,
    f: impl Fn(&Case) -> Result<Vec<Check>, admface::Error>,
) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (label, mu) in cases {
        let start = Instant::now();
        let case = Case::parse(label, mu).expect("valid case");
        let result = f(&case);
        let elapsed = start.elapsed();
        match result {
            Ok(checks) => {
                let bad = failures(&checks);
                if !bad.is_empty() {
                    ok = false;
                    details.push(format!("{case}: {}", bad.join("; ")));
                }
                if elapsed > limit {
                    ok = false;
                    details.push(format!("{case}: {elapsed:.2?} over {limit:?}"));
                } else {
                    details.push(format!("{case} {} checks {elapsed:.2?}", checks.len()));
                }
            }
            Err(e) => {
                ok = false;
                details.push(format!("{case}: {e}"));
            }
        }
    }
    outcome(ok, details.join(", "))
}

fn face_counts() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (label, mu, expected) in [("A2", "2,0", 7), ("C2", "1,0", 9)] {
        let start = Instant::now();
        let n = Case::parse(label, mu)
            .and_then(|c| c.poset())
            .map(|p| p.len());
        let elapsed = start.elapsed();
        ok &= n == Ok(expected) && elapsed < Duration::from_secs(1);
        details.push(format!("{label} {mu}: {n:?} faces in {elapsed:.2?}"));
    }
    outcome(ok, details.join(", "))
}

fn length_consistency() -> Outcome {
    per_case(&FIGURE_CASES, Duration::from_secs(10), |c| {
        let adm = c.adm();
        let sys = c.system();
        Ok((0..adm.len())
            .map(|w| {
                let e = adm.element(w);
                let ok = sys.length(e) == sys.separating_hyperplanes(e).len();
                Check::from_witness("length", (!ok).then(|| adm.label(w).to_string()))
            })
            .collect())
    })
}

fn def2_equivalence() -> Outcome {
    per_case(&FIGURE_CASES, Duration::from_secs(30), |c| {
        let d = c.datum();
        let adm = c.adm();
        let mut checks = Vec::new();
        for i_set in NodeSet::all_subsets(d.rank()) {
            for a in d.min_coset_reps(i_set)? {
                let sub = SubRootSystem::new(d.clone(), &a, i_set)?;
                let same = adm.face_by_sub_enumeration(&sub)? == adm.face_by_filter(&sub);
                checks.push(Check::from_witness(
                    sub.label(),
                    (!same).then(|| "differ".to_string()),
                ));
            }
        }
        Ok(checks)
    })
}

fn main1() -> Outcome {
    per_case(&FIGURE_CASES, Duration::from_secs(60), |c| {
        let fd = c.decomposition()?;
        let adm = c.adm();
        Ok(fd
            .faces()
            .iter()
            .map(|f| {
                let vertices = fd.poset().face(f.face).vertices();
                let by_lambda: BTreeSet<usize> = (0..adm.len())
                    .filter(|&w| {
                        adm.lambda_indices(w)
                            .iter()
                            .all(|&k| vertices.contains(&adm.maxima()[k]))
                    })
                    .collect();
                let ok = by_lambda == f.elements;
                Check::from_witness(
                    fd.poset().face_label(f.face),
                    (!ok).then(|| "differ".to_string()),
                )
            })
            .collect())
    })
}

fn main2() -> Outcome {
    per_case(&FIGURE_CASES, Duration::from_secs(60), |c| {
        let fd = c.decomposition()?;
        let mut checks = vec![match fd.decomposition() {
            Ok(_) => Check::pass("partition"),
            Err(e) => Check::fail("partition", e.to_string()),
        }];
        checks.extend(fd.verify_fibers());
        Ok(checks)
    })
}

fn haines_he() -> Outcome {
    per_case(
        &[("A2", "2,0"), ("C2", "1,0")],
        Duration::from_secs(120),
        verify::bounded_haines_he,
    )
}

fn lemmas() -> Outcome {
    let start = Instant::now();
    let mut out = per_case(&FIGURE_CASES, Duration::from_secs(120), verify::lemmas);
    for label in ["A3", "B3", "C3"] {
        let check = verify::reflection_pairs(&RootDatum::from_label(label).unwrap());
        out.ok &= check.passed();
        out.detail
            .push_str(&format!(", {} {:?}", check.name, check.status));
    }
    let elapsed = start.elapsed();
    out.ok &= elapsed < Duration::from_secs(120);
    out.detail.push_str(&format!(", total {elapsed:.2?}"));
    out
}

fn characterization() -> Outcome {
    per_case(
        &FIGURE_CASES,
        Duration::from_secs(60),
        verify::characterization,
    )
}

fn non_injective() -> Outcome {
    let case = Case::parse("A2", "1,1").unwrap();
    let fd = case.decomposition().unwrap();
    let largest = fd
        .faces()
        .iter()
        .map(|f| f.interior.len())
        .max()
        .unwrap_or(0);
    outcome(
        largest >= 2,
        format!("largest interior has {largest} elements"),
    )
}

fn determinism() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for (label, mu) in FIGURE_CASES {
        let first = verify::run(&Case::parse(label, mu).unwrap(), Suite::All).map(|r| r.to_json());
        let second = verify::run(&Case::parse(label, mu).unwrap(), Suite::All).map(|r| r.to_json());
        let same = first.is_ok() && first == second;
        ok &= same;
        details.push(format!(
            "{label} {mu}: {} bytes {}",
            first.map(|s| s.len()).unwrap_or(0),
            if same { "identical" } else { "differ" }
        ));
    }
    outcome(ok, details.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("face-poset counts", face_counts),
        ("length consistency", length_consistency),
        ("two face definitions agree", def2_equivalence),
        ("faces via Λ(w)", main1),
        ("interiors, fibers, surjectivity", main2),
        ("bounded obtuse cone intersection", haines_he),
        ("proof lemmas", lemmas),
        ("face map characterization", characterization),
        ("face map not injective", non_injective),
        ("deterministic reports", determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.ok;
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
