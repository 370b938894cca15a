//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! summary reads top to bottom; the process exits nonzero if any line fails.

use std::time::{Duration, Instant};

use nearly::exactnum::{binomial, is_prime};
use nearly::fedder::{fedder_witness_n2, Identities};
use nearly::ffexp::{count_commuting_pairs, floor_log, witness_trials, ExperimentConfig};
use nearly::polymat::{char_poly, witness_matrix};
use nearly::report::{CheckReport, Status};
use nearly::suites::{run_suite, SuiteOptions};
use nearly::{Domain, Integer, Ring, VariableTable};

const AC1_LIMIT: Duration = Duration::from_secs(10);
const AC2_LIMIT: Duration = Duration::from_secs(60);
const AC7_LIMIT: Duration = Duration::from_secs(5 * 60);
const ALL_LIMIT: Duration = Duration::from_secs(10 * 60);
const AC10_TRIALS: u64 = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str, opts: &SuiteOptions) -> (CheckReport, Duration) {
    let t = Instant::now();
    let r = run_suite(name, opts).unwrap_or_else(|e| panic!("suite {name}: {e}"));
    (r, t.elapsed())
}

fn failing(r: &CheckReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} [{}] expected {} got {}", c.name, c.status, c.expected, c.actual))
        .collect()
}

fn all_pass(r: &CheckReport, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let bad = failing(r);
    let in_time = limit.is_none_or(|l| elapsed < l);
    let mut detail = format!("{} checks in {:.2?}", r.checks.len(), elapsed);
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {l:?})"));
    }
    if !bad.is_empty() {
        detail.push_str(&format!("; {}", bad.join("; ")));
    }
    Outcome {
        ok: bad.is_empty() && in_time && !r.checks.is_empty(),
        detail,
    }
}

fn has(r: &CheckReport, name: &str) -> bool {
    r.find(name).is_some_and(|c| c.status == Status::Pass)
}

fn ac1() -> Outcome {
    let (r, el) = suite(
        "identities",
        &SuiteOptions {
            max_m: Some(200),
            ..Default::default()
        },
    );
    let mut o = all_pass(&r, el, Some(AC1_LIMIT));
    // triple sum over unordered (a, b, d) straight from binomials
    let ids = Identities::new(20);
    for m in 1..=20u64 {
        let mut acc = Integer::from(0);
        for b in 0..=m {
            for d in 0..=b {
                for a in d..=m - b {
                    let t = binomial(m - b, a as i64) * binomial(a + b - d, b as i64) * binomial(b, d as i64);
                    if (a + d) % 2 == 0 {
                        acc += t;
                    } else {
                        acc -= t;
                    }
                }
            }
        }
        if acc != Integer::from(1) || ids.c(m as usize).unwrap() != acc {
            o.ok = false;
            o.detail.push_str(&format!("; oracle C({m}) = {acc}"));
        }
    }
    o
}

fn ac2() -> Outcome {
    let (r, el) = suite("fedder3", &SuiteOptions::default());
    let mut o = all_pass(&r, el, Some(AC2_LIMIT));
    let missing: Vec<u64> = (2..=97)
        .filter(|&p| is_prime(p))
        .filter(|p| !has(&r, &format!("fedder3.p{p:03}.parametric")))
        .collect();
    let agree = [2u64, 3, 5]
        .iter()
        .all(|p| has(&r, &format!("fedder3.p{p:03}.methods_agree")));
    if !missing.is_empty() || !agree {
        o.ok = false;
        o.detail.push_str(&format!(
            "; missing parametric {missing:?}, direct/parametric agree {agree}"
        ));
    }
    o
}

fn ac3() -> Outcome {
    let (r, el) = suite("fedder2", &SuiteOptions::default());
    let mut o = all_pass(&r, el, None);
    for p in (2..=13u64).filter(|&p| is_prime(p)) {
        let c = fedder_witness_n2(p).unwrap().coefficient;
        let expected = if (p - 1) % 2 == 0 { 1 } else { p - 1 };
        if c.value() as u64 != expected {
            o.ok = false;
            o.detail.push_str(&format!("; p={p} coefficient {}", c.value()));
        }
        if p <= 5 && !has(&r, &format!("fedder2.p{p:03}.double_sum")) {
            o.ok = false;
            o.detail.push_str(&format!("; p={p} double sum"));
        }
    }
    o
}

fn ac4() -> Outcome {
    let (r, el) = suite("pcal", &SuiteOptions::default());
    let mut o = all_pass(&r, el, None);
    let cases = [
        (3usize, 0u64),
        (3, 5),
        (3, 7),
        (3, 3),
        (4, 0),
        (4, 5),
        (4, 7),
        (4, 2),
        (5, 0),
        (5, 7),
        (5, 5),
    ];
    for (n, ch) in cases {
        // char poly oracle: t^n - 1, or t^n - t when p | n
        let ring = Ring::new(
            VariableTable::new(Vec::<String>::new()).unwrap(),
            Domain::from_characteristic(ch).unwrap(),
        );
        let cp = char_poly(&witness_matrix(&ring, n).unwrap());
        let mut expected = vec![0i64; n + 1];
        expected[n] = 1;
        if ch != 0 && (n as u64).is_multiple_of(ch) {
            expected[1] = -1;
        } else {
            expected[0] = -1;
        }
        if !cp.equals_integers(&expected) {
            o.ok = false;
            o.detail.push_str(&format!("; char poly n={n} ch={ch}: {cp}"));
        }
    }
    o
}

fn ac5() -> Outcome {
    let (r, el) = suite("pcal", &SuiteOptions::default());
    let names: Vec<String> = [(7, 3), (7, 4), (101, 3), (101, 4)]
        .iter()
        .map(|(q, n)| format!("pcal.shift_invariance.q{q:03}.n{n}"))
        .collect();
    let ok = names.iter().all(|n| has(&r, n));
    Outcome {
        ok,
        detail: format!("{} shift-invariance checks in {:.2?}", names.len(), el),
    }
}

fn ac6() -> Outcome {
    let (r, el) = suite("case2", &SuiteOptions::default());
    all_pass(&r, el, None)
}

fn ac7() -> Outcome {
    let (r, el) = suite("radical-b0", &SuiteOptions::default());
    all_pass(&r, el, Some(AC7_LIMIT))
}

fn ac8() -> Outcome {
    let (r, el) = suite("linkage2", &SuiteOptions::default());
    all_pass(&r, el, None)
}

fn ac9() -> Outcome {
    let (r, el) = suite("sop-check", &SuiteOptions::default());
    let literal = ["sop_check.n3.f101.dimension", "sop_check.n3.f101.standard_monomials"];
    let ok = literal.iter().all(|n| has(&r, n));
    let mut detail = format!("literal forms in {el:.2?}");
    for c in &r.checks {
        detail.push_str(&format!("; {} [{}] {}", c.name, c.status, c.actual));
    }
    Outcome { ok, detail }
}

fn ac10() -> Outcome {
    let (r, el) = suite(
        "lemma34",
        &SuiteOptions {
            trials: Some(AC10_TRIALS),
            ..Default::default()
        },
    );
    let cfg = ExperimentConfig {
        n: 3,
        q: 7,
        trials: AC10_TRIALS,
        seed: 1,
    };
    let a = witness_trials(&cfg).unwrap();
    let b = witness_trials(&cfg).unwrap();
    let ok = has(&r, "lemma34.n3.q007.violations") && a == b && a.violations == 0 && a.trials == AC10_TRIALS;
    Outcome {
        ok,
        detail: format!(
            "{} trials, {} witnesses, {} violations, repeatable {} ({el:.2?})",
            a.trials,
            a.witnesses,
            a.violations,
            a == b
        ),
    }
}

fn ac11() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for q in [2u32, 3] {
        // brute force over all 2x2 pairs
        let mut brute = 0u64;
        let cells = (q as u64).pow(4);
        let entry = |code: u64, k: u32| ((code / (q as u64).pow(k)) % q as u64) as i64;
        for xc in 0..cells {
            for yc in 0..cells {
                let x = [entry(xc, 0), entry(xc, 1), entry(xc, 2), entry(xc, 3)];
                let y = [entry(yc, 0), entry(yc, 1), entry(yc, 2), entry(yc, 3)];
                let xy = [
                    x[0] * y[0] + x[1] * y[2],
                    x[0] * y[1] + x[1] * y[3],
                    x[2] * y[0] + x[3] * y[2],
                    x[2] * y[1] + x[3] * y[3],
                ];
                let yx = [
                    y[0] * x[0] + y[1] * x[2],
                    y[0] * x[1] + y[1] * x[3],
                    y[2] * x[0] + y[3] * x[2],
                    y[2] * x[1] + y[3] * x[3],
                ];
                if (0..4).all(|i| (xy[i] - yx[i]).rem_euclid(q as i64) == 0) {
                    brute += 1;
                }
            }
        }
        let count = count_commuting_pairs(2, q).unwrap();
        let fl = floor_log(&count, q);
        ok &= count == Integer::from(brute) && fl == 6;
        detail.push(format!("q={q}: {count} pairs (brute force {brute}), floor log {fl}"));
    }
    let (r, el) = suite("count-pairs", &SuiteOptions::default());
    let o = all_pass(&r, el, None);
    Outcome {
        ok: ok && o.ok,
        detail: detail.join("; "),
    }
}

fn ac12() -> Outcome {
    let (r, el) = suite("fedder-conj", &SuiteOptions::default());
    let c = r.find("fedder_conj.n4.p002");
    let ok = c.is_some_and(|c| c.status == Status::Experiment && !c.actual.is_empty());
    Outcome {
        ok,
        detail: match c {
            Some(c) => format!(
                "n=4 p=2 coefficient {} (conjectured {}), reported as {} ({el:.2?})",
                c.actual, c.expected, c.status
            ),
            None => "no check reported".into(),
        },
    }
}

fn all_runtime() -> Outcome {
    let (r, el) = suite("all", &SuiteOptions::default());
    Outcome {
        ok: el < ALL_LIMIT,
        detail: format!(
            "{el:.2?} (limit {ALL_LIMIT:?}); {} pass, {} fail, {} budget, {} experiment",
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Budget),
            r.count(Status::Experiment)
        ),
    }
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("AC1 binomial identities", ac1),
        ("AC2 3x3 witness coefficient", ac2),
        ("AC3 2x2 witness coefficient", ac3),
        ("AC4 P and discriminant witnesses", ac4),
        ("AC5 shift invariance of P", ac5),
        ("AC6 case 2 symbolic identities", ac6),
        ("AC7 coefficient matrix B0", ac7),
        ("AC8 2x2 linkage", ac8),
        ("AC9 theta forms zero-dimensional", ac9),
        ("AC10 witness sampling over F7", ac10),
        ("AC11 commuting pair counts", ac11),
        ("AC12 4x4 witness experiment", ac12),
        ("ALL full suite runtime", all_runtime),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
