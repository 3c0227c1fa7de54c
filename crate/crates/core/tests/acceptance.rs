//! End-to-end acceptance checks, one PASS/FAIL line each. Runs through the
//! library and the built `palper` binary; exits nonzero if any check fails.

use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use palper::audit::{self, AuditReport};
use palper::corpus::{census_record, Famous};
use palper::gword::{gword_params, gword_period};
use palper::palindrome::max_radius_at;
use palper::palperiod::find_pps_naive;
use palper::{HalfPos, Span, Word};

const BIN: &str = env!("CARGO_BIN_EXE_palper");

type Check = Result<String, String>;
type Named<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn palper(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("PALPER_THREADS", t);
    }
    cmd.output().expect("palper binary runs")
}

fn reports(reports: &[AuditReport]) -> Check {
    let summary = reports
        .iter()
        .map(|r| format!("{} {} cases / {} failures", r.suite, r.cases, r.failures))
        .collect::<Vec<_>>()
        .join("; ");
    match reports.iter().find(|r| !r.passed() || r.cases == 0) {
        None => Ok(summary),
        Some(r) => Err(format!("{summary}; e.g. {:?}", r.examples)),
    }
}

fn published_tables() -> Check {
    let mut notes = Vec::new();
    for (parity, lengths) in [("same", "16:6"), ("opposite", "18:8")] {
        let out = palper(&["table", "--h1", "4", "--h2", "6", "--parity", parity, "--lengths", lengths, "--diff"], None);
        let stdout = String::from_utf8_lossy(&out.stdout);
        let last = stdout.lines().last().unwrap_or("");
        if !out.status.success() || !last.contains("\"mismatches\":0") {
            return Err(format!("{parity}: exit {:?}, {last}", out.status.code()));
        }
        notes.push(format!("{parity}: {last}"));
    }
    Ok(notes.join("; "))
}

fn gword_example() -> Check {
    let p = gword_params(HalfPos(13), HalfPos(49), HalfPos(60)).map_err(|e| e.to_string())?;
    if (p.g, p.n) != (12, 48) {
        return Err(format!("g={} n={}", p.g, p.n));
    }
    let w2: Word = "abcdeffedcba".repeat(5).parse().map_err(|e| format!("{e}"))?;
    let fact = gword_period(&w2, &p, 6).map_err(|e| e.to_string())?;
    if (fact.span, fact.period) != (Span::whole(60), 12) {
        return Err(format!("word 2 gave {fact:?}"));
    }
    let w3: Word = "cdefgbbgfedccdefgbbgfedccdefgaagfedccdefgbbgfedccdefgaagfedc".parse().map_err(|e| format!("{e}"))?;
    let radius = max_radius_at(&w3, HalfPos(61)).map_err(|e| e.to_string())?;
    let len = radius.0 + 1;
    let central = Span { start: (61 - radius.0) as usize / 2, end: (61 + radius.0) as usize / 2 };
    let period = w3.factor(central).and_then(|f| f.least_period()).map_err(|e| e.to_string())?;
    let has12 = w3.has_period(12).map_err(|e| e.to_string())?;
    if len != 46 || period != 24 || has12 {
        return Err(format!("word 3: central length {len}, period {period}, has period 12: {has12}"));
    }
    Ok("g=12 n=48; word 2 has period 12 on 60 letters; word 3 central palindrome 46 letters, period 24, no period 12".into())
}

fn census_determinism() -> Check {
    let args = ["census", "--famous", "thue-morse", "--n", "4096"];
    let runs: Vec<Output> = ["1", "4", "1"].iter().map(|t| palper(&args, Some(t))).collect();
    if let Some(bad) = runs.iter().find(|o| !o.status.success()) {
        return Err(format!("exit {:?}: {}", bad.status.code(), String::from_utf8_lossy(&bad.stderr)));
    }
    if runs.windows(2).any(|w| w[0].stdout != w[1].stdout) {
        return Err("outputs differ between thread counts".into());
    }
    let mut checked = 0;
    for word in Famous::ALL {
        for n in 1..=64 {
            let prefix = word.prefix(n);
            let (fast, naive) = (census_record(word, &prefix).count, find_pps_naive(&prefix).len());
            if fast != naive {
                return Err(format!("{word} n={n}: census {fast}, oracle {naive}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{} bytes identical over PALPER_THREADS=1,4,1; {checked} prefixes match the oracle", runs[0].stdout.len()))
}

fn main() -> ExitCode {
    let binary = audit::Corpus::exhaustive(2, 12).words();
    let checks: Vec<Named> = vec![
        ("published tables reproduce via the CLI", Box::new(published_tables)),
        ("least period divides the gcd at the dpp bound", Box::new(|| reports(&[audit::audit_dpp_lemma(16)]))),
        ("opposite-parity table has period 2 from length 13", Box::new(|| reports(&[audit::audit_table2_threshold(64)]))),
        (
            "palindrome constructions have no counterexample",
            Box::new(|| {
                let corpus = audit::theorem_corpus(2000);
                let (crossing, unit) = audit::audit_crossing(&corpus);
                reports(&[audit::audit_periodic_palindrome(&corpus), crossing, unit, audit::audit_chained(&corpus)])
            }),
        ),
        ("g-word example", Box::new(gword_example)),
        (
            "fast detection agrees with the oracle",
            Box::new(|| {
                let mut words = binary.clone();
                words.extend(audit::random_words(1000, 3, 60, 0xdec0de));
                reports(&[audit::audit_detection(&words)])
            }),
        ),
        (
            "Fine–Wilf sharpness and checked inference",
            Box::new(|| reports(&[audit::audit_fw_sharpness(6), audit::audit_inference(&binary)])),
        ),
        ("census is deterministic and matches the oracle", Box::new(census_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &checks {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
