//! Named verification suites assembled into [`CheckReport`]s.

use std::time::Instant;

use crate::commideal::{build_system, coefficient_matrix, n2_components, sop_forms, sop_forms_display_n3};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, PrimeField};
use crate::fedder::{
    equation_dependency, family_is_sound, family_multinomial_sum, fedder_witness, n2_double_sum_matches,
    parametric_sums_n3, Identities, IdentityTable, Method,
};
use crate::ffexp::{count_commuting_pairs, floor_log, sample_hypersurface, witness_trials, ExperimentConfig};
use crate::groebner::{buchberger_with_budget, ideal_colon, ideal_equal, ideal_intersection, MonomialOrder};
use crate::multipoly::{Domain, Polynomial, Ring, VariableTable};
use crate::polymat::{
    case2_verify, char_poly, discriminant, pcal, witness_kind, witness_matrix, PolyMatrix, WitnessKind,
};
use crate::report::{Check, CheckReport, Status};

pub const SUITES: &[&str] = &[
    "identities",
    "fedder2",
    "fedder3",
    "fedder-conj",
    "pcal",
    "case2",
    "radical-b0",
    "linkage2",
    "sop-check",
    "lemma34",
    "count-pairs",
    "all",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Direct,
    Parametric,
    Both,
}

impl MethodChoice {
    fn includes(self, m: Method) -> bool {
        match self {
            MethodChoice::Both => true,
            MethodChoice::Direct => m == Method::Direct,
            MethodChoice::Parametric => m == Method::Parametric,
        }
    }
}

/// Parsed command-line parameters; `None` selects each suite's default.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub n: Option<usize>,
    pub p: Option<u64>,
    pub q: Option<u32>,
    pub characteristic: Option<u64>,
    pub max_m: Option<usize>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub method: MethodChoice,
    pub budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n: None,
            p: None,
            q: None,
            characteristic: None,
            max_m: None,
            trials: None,
            seed: 1,
            method: MethodChoice::Both,
            budget: crate::groebner::budget_from_env(),
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<CheckReport> {
    let mut report = match name {
        "identities" => identities(opts),
        "fedder2" => fedder2(opts),
        "fedder3" => fedder3(opts),
        "fedder-conj" => fedder_conj(opts),
        "pcal" => pcal_suite(opts),
        "case2" => case2(opts),
        "radical-b0" => radical_b0(opts),
        "linkage2" => linkage2(opts),
        "sop-check" => sop_check(opts),
        "lemma34" => lemma34(opts),
        "count-pairs" => count_pairs(opts),
        "all" => {
            let mut all = CheckReport::new("all")
                .param("seed", opts.seed)
                .param("budget", opts.budget);
            for s in SUITES.iter().filter(|s| **s != "all") {
                all.extend(run_suite(s, opts)?);
            }
            Ok(all)
        }
        _ => Err(Error::InvalidArgument(format!("unknown suite {name}"))),
    }?;
    report.sort();
    Ok(report)
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

fn checked_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

fn field_label(ch: u64) -> String {
    if ch == 0 {
        "q".to_string()
    } else {
        format!("f{ch}")
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> Option<T> {
    items.into_iter().find(|x| !ok(x))
}

fn identities(opts: &SuiteOptions) -> Result<CheckReport> {
    let max_m = opts.max_m.unwrap_or(200).max(1);
    let mut r = CheckReport::new("identities").param("max_m", max_m);
    let t = Instant::now();
    let table = IdentityTable::compute(max_m)?;
    let bad = first_failure(1..=max_m, |&m| table.c[m - 1] == 1.into());
    r.push(
        Check::verdict(
            "identities.c_equals_one",
            bad.is_none(),
            format!("C(m) = 1 for 1 <= m <= {max_m}"),
            bad.map_or("all equal 1".to_string(), |m| format!("C({m}) = {}", table.c[m - 1])),
            "C(m) = 1",
        )
        .timed(t),
    );

    let t = Instant::now();
    let lim = max_m.min(60);
    let bad = first_failure((1..=lim).flat_map(|m| (0..m).map(move |b| (m, b))), |&(m, b)| {
        table.b[m - 1][b] == 0.into()
    });
    r.push(
        Check::verdict(
            "identities.b_below_diagonal_zero",
            bad.is_none(),
            format!("B(m,b) = 0 for 0 <= b < m <= {lim}"),
            bad.map_or("all zero".to_string(), |(m, b)| {
                format!("B({m},{b}) = {}", table.b[m - 1][b])
            }),
            "B(m,b) = 0 for b < m",
        )
        .timed(t),
    );
    let t = Instant::now();
    let bad = first_failure(1..=lim, |&m| table.b[m - 1][m] == 1.into());
    r.push(
        Check::verdict(
            "identities.b_diagonal_one",
            bad.is_none(),
            format!("B(m,m) = 1 for m <= {lim}"),
            bad.map_or("all equal 1".to_string(), |m| {
                format!("B({m},{m}) = {}", table.b[m - 1][m])
            }),
            "B(m,m) = 1",
        )
        .timed(t),
    );

    let t = Instant::now();
    let rec = max_m.min(40);
    let bad = first_failure((2..=rec).flat_map(|m| (1..m).map(move |b| (m, b))), |&(m, b)| {
        table.b[m - 2][b - 1] == table.b[m - 1][b]
    });
    r.push(
        Check::verdict(
            "identities.b_recurrence",
            bad.is_none(),
            format!("B(m-1,b-1) = B(m,b) for 1 <= b < m <= {rec}"),
            bad.map_or("holds".to_string(), |(m, b)| format!("fails at (m,b) = ({m},{b})")),
            "B(m-1,b-1) = B(m,b)",
        )
        .timed(t),
    );

    let t = Instant::now();
    let ids = Identities::new(rec);
    let triples = (1..=rec).flat_map(|m| (1..m).flat_map(move |b| (0..b).map(move |d| (m, b, d))));
    let mut bad = None;
    for (m, b, d) in triples {
        let lhs = ids.a(m, b, d)? - ids.a(m, b, d + 1)?;
        if lhs != ids.a(m - 1, b - 1, d)? {
            bad = Some((m, b, d));
            break;
        }
    }
    r.push(
        Check::verdict(
            "identities.a_recurrence",
            bad.is_none(),
            format!("A(m,b,d) - A(m,b,d+1) = A(m-1,b-1,d) for m <= {rec}"),
            bad.map_or("holds".to_string(), |(m, b, d)| format!("fails at ({m},{b},{d})")),
            "A(m,b,d) - A(m,b,d+1) = A(m-1,b-1,d)",
        )
        .timed(t),
    );
    Ok(r)
}

fn fedder2(opts: &SuiteOptions) -> Result<CheckReport> {
    let primes = match opts.p {
        Some(p) => vec![checked_prime(p)?],
        None => primes_up_to(13),
    };
    let mut r = CheckReport::new("fedder2").param("primes", primes.clone());
    for p in primes {
        let t = Instant::now();
        let field = PrimeField::new(p)?;
        let expected = field.elem(if (p - 1) % 2 == 0 { 1 } else { -1 });
        let check = match fedder_witness(2, p, Method::Direct, Some(opts.budget)) {
            Ok(o) => Check::equal(
                format!("fedder2.p{p:03}.coefficient"),
                expected.value(),
                o.coefficient.value(),
                "(x'11 y'11 x12 y21)^(p-1) has coefficient (-1)^(p-1)",
            ),
            Err(Error::Budget(b)) => budget_check(format!("fedder2.p{p:03}.coefficient"), expected.value(), b),
            Err(e) => return Err(e),
        };
        r.push(check.timed(t));
        if p <= 5 {
            let t = Instant::now();
            r.push(
                Check::verdict(
                    format!("fedder2.p{p:03}.double_sum"),
                    n2_double_sum_matches(p)?,
                    "double sum equals (u12 u21)^(p-1) term by term",
                    if n2_double_sum_matches(p)? { "equal" } else { "differs" },
                    "expansion of (u12 u21)^(p-1)",
                )
                .timed(t),
            );
        }
    }
    Ok(r)
}

fn budget_check(name: String, expected: impl ToString, budget: u64) -> Check {
    Check::new(
        name,
        Status::Budget,
        expected,
        format!("step budget {budget} exhausted"),
        "budget",
    )
}

fn fedder3(opts: &SuiteOptions) -> Result<CheckReport> {
    let (direct, parametric) = match opts.p {
        Some(p) => (vec![checked_prime(p)?], vec![p]),
        None => (vec![2, 3, 5], primes_up_to(97)),
    };
    let mut r = CheckReport::new("fedder3").param("method", format!("{:?}", opts.method).to_lowercase());
    let anchor = "mu^(p-1) has nonzero coefficient in prod u_ij^(p-1), n = 3";
    let mut direct_values = std::collections::BTreeMap::new();
    if opts.method.includes(Method::Direct) {
        for &p in &direct {
            let t = Instant::now();
            let name = format!("fedder3.p{p:03}.direct");
            match fedder_witness(3, p, Method::Direct, Some(opts.budget)) {
                Ok(o) => {
                    direct_values.insert(p, o.coefficient);
                    let mut c = Check::equal(name, 1, o.coefficient.value(), anchor);
                    if p > 5 {
                        c.status = Status::Experiment;
                    }
                    r.push(c.timed(t));
                }
                Err(Error::Budget(b)) => r.push(budget_check(name, 1, b).timed(t)),
                Err(e) => return Err(e),
            }
        }
    }
    if opts.method.includes(Method::Parametric) {
        for &p in &parametric {
            let t = Instant::now();
            let s = parametric_sums_n3(p)?;
            r.push(Check::equal(format!("fedder3.p{p:03}.parametric"), 1, s.value.value(), anchor).timed(t));
            if let Some(d) = direct_values.get(&p) {
                r.push(Check::equal(
                    format!("fedder3.p{p:03}.methods_agree"),
                    d.value(),
                    s.value.value(),
                    "direct expansion equals parametric sum",
                ));
            }
        }
        let t = Instant::now();
        let sound: Vec<u64> = primes_up_to(13).into_iter().filter(|&p| !family_is_sound(p)).collect();
        r.push(
            Check::verdict(
                "fedder3.family_sound",
                sound.is_empty(),
                "all family members solve the 18 equations for p <= 13",
                if sound.is_empty() {
                    "sound".to_string()
                } else {
                    format!("unsound for p in {sound:?}")
                },
                "solution family of the exponent system",
            )
            .timed(t),
        );
        let dep = equation_dependency();
        r.push(Check::verdict(
            "fedder3.system_singular",
            dep.iter().all(|&v| v == 0),
            "sum of 12 exponent equations = 2 * sum of 6 degree equations",
            format!("{dep:?}"),
            "the exponent system is singular",
        ));
        let t = Instant::now();
        let mut mismatch = None;
        for p in primes_up_to(11) {
            if family_multinomial_sum(p)? != parametric_sums_n3(p)?.unreduced {
                mismatch = Some(p);
                break;
            }
        }
        r.push(
            Check::verdict(
                "fedder3.family_sum_matches",
                mismatch.is_none(),
                "multinomial family sum equals the squared-binomial sum for p <= 11",
                mismatch.map_or("equal".to_string(), |p| format!("differs at p = {p}")),
                "closed form of the witness coefficient",
            )
            .timed(t),
        );
    }
    Ok(r)
}

fn fedder_conj(opts: &SuiteOptions) -> Result<CheckReport> {
    let n = opts.n.unwrap_or(4);
    let p = checked_prime(opts.p.unwrap_or(2))?;
    let mut r = CheckReport::new("fedder-conj").param("n", n).param("p", p);
    let t = Instant::now();
    let name = format!("fedder_conj.n{n}.p{p:03}");
    match fedder_witness(n, p, Method::Direct, Some(opts.budget)) {
        Ok(o) => r.push(
            Check::new(
                name,
                Status::Experiment,
                1,
                o.coefficient.value(),
                "general-n witness coefficient is 1 mod p (conjectural)",
            )
            .timed(t),
        ),
        Err(Error::Budget(b)) => r.push(budget_check(name, 1, b).timed(t)),
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn pcal_suite(opts: &SuiteOptions) -> Result<CheckReport> {
    let sizes = match opts.n {
        Some(n) => vec![n],
        None => vec![3, 4, 5],
    };
    let mut cases: Vec<(usize, u64)> = Vec::new();
    for &n in &sizes {
        match opts.characteristic {
            Some(ch) => cases.push((n, ch)),
            None => {
                cases.push((n, 0));
                for p in [5u64, 7] {
                    if !(n as u64).is_multiple_of(p) {
                        cases.push((n, p));
                    }
                }
                if is_prime(n as u64) {
                    cases.push((n, n as u64));
                } else if n == 4 {
                    cases.push((4, 2));
                }
            }
        }
    }
    let mut r = CheckReport::new("pcal").param("sizes", sizes.clone());
    let anchor = "P vanishes at a matrix with distinct eigenvalues";
    for (n, ch) in cases {
        let t = Instant::now();
        let ring = Ring::new(VariableTable::new(["t"])?, Domain::from_characteristic(ch)?);
        let e = witness_matrix(&ring, n)?;
        let kind = match witness_kind(n, ch) {
            WitnessKind::Cyclic => "cyclic",
            WitnessKind::Shifted => "shifted",
        };
        let prefix = format!("pcal.n{n}.{}.{kind}", field_label(ch));
        let value = pcal(&e);
        r.push(
            Check::equal(
                format!("{prefix}.pcal_zero"),
                "0".to_string(),
                value.to_string(),
                anchor,
            )
            .timed(t),
        );
        let cp = char_poly(&e);
        let disc = discriminant(&cp)?;
        r.push(Check::verdict(
            format!("{prefix}.discriminant_nonzero"),
            !disc.is_zero(),
            "nonzero",
            disc.to_string(),
            anchor,
        ));
        let mut expected = vec![0i64; n + 1];
        expected[n] = 1;
        match witness_kind(n, ch) {
            WitnessKind::Cyclic => expected[0] = -1,
            WitnessKind::Shifted => expected[1] = -1,
        }
        r.push(Check::verdict(
            format!("{prefix}.char_poly"),
            cp.equals_integers(&expected),
            if expected[0] == -1 {
                format!("t^{n} - 1")
            } else {
                format!("t^{n} - t")
            },
            cp.to_string(),
            "characteristic polynomial of the witness matrix",
        ));
    }

    let trials = opts.trials.unwrap_or(50);
    let fields = match opts.q {
        Some(q) => vec![q as u64],
        None => vec![7, 101],
    };
    for q in fields {
        for &n in sizes.iter().filter(|&&n| opts.n.is_some() || n <= 4) {
            let t = Instant::now();
            let ring = Ring::new(
                VariableTable::new(Vec::<String>::new())?,
                Domain::from_characteristic(q)?,
            );
            let cfg = ExperimentConfig {
                n,
                q: q as u32,
                trials,
                seed: opts.seed,
            };
            let mut rng = cfg.rng();
            let mut bad = 0u64;
            for _ in 0..trials {
                let a = crate::ffexp::FqMatrix::random(q as u32, n, &mut rng);
                let m = PolyMatrix::from_fn(&ring, n, |i, j| Polynomial::constant(&ring, a.get(i, j) as i64));
                let shift = Polynomial::constant(&ring, rand::Rng::gen_range(&mut rng, 0..q as i64));
                if pcal(&m) != pcal(&m.shift(&shift)) {
                    bad += 1;
                }
            }
            r.push(
                Check::equal(
                    format!("pcal.shift_invariance.q{q:03}.n{n}"),
                    0,
                    bad,
                    "P(A) = P(A - aI)",
                )
                .timed(t),
            );
        }
    }
    Ok(r)
}

fn case2(opts: &SuiteOptions) -> Result<CheckReport> {
    let sizes = match opts.n {
        Some(n) => vec![n],
        None => vec![3, 4],
    };
    let mut r = CheckReport::new("case2").param("sizes", sizes.clone());
    for n in sizes {
        r.extend(case2_verify(n)?);
    }
    Ok(r)
}

fn radical_b0(opts: &SuiteOptions) -> Result<CheckReport> {
    let n = opts.n.unwrap_or(3);
    let mut r = CheckReport::new("radical-b0").param("n", n);
    let prefix = format!("radical_b0.n{n}");
    let t = Instant::now();
    let sys = build_system(n, Domain::Rational)?;
    let b = coefficient_matrix(&sys);
    r.push(
        Check::verdict(
            format!("{prefix}.reconstructs_generators"),
            b.apply_to_y(&sys) == sys.generators(),
            "B * y = (u_ij)",
            "compared entrywise",
            "coefficient matrix of the generators in Y",
        )
        .timed(t),
    );
    let t = Instant::now();
    let det = b.b0().determinant();
    r.push(
        Check::verdict(
            format!("{prefix}.det_nonzero"),
            !det.is_zero(),
            "nonzero",
            if det.is_zero() { "0" } else { "nonzero" },
            "det B0 != 0",
        )
        .timed(t),
    );
    if det.is_zero() {
        return Ok(r);
    }
    let total = det.total_degree().unwrap_or(0);
    r.push(Check::equal(
        format!("{prefix}.total_degree"),
        (n * (n - 1)) as u32,
        total,
        "deg det B0 = n(n-1)",
    ));
    let weight = det.weighted_degree(&sys.grading())?;
    let stated = (n * n * (n - 1) * (n - 1) / 2) as i64;
    r.push(Check::equal(
        format!("{prefix}.weighted_degree"),
        stated,
        weight,
        "weighted degree of det B0 is n^2(n-1)^2/2",
    ));
    r.push(Check::verdict(
        format!("{prefix}.weighted_degree_nonzero"),
        weight != 0,
        "nonzero",
        weight,
        "det B0 is not a scalar multiple of P^2",
    ));
    let t = Instant::now();
    let p = pcal(sys.x());
    let q = det.exact_divide(&p)?;
    r.push(
        Check::verdict(
            format!("{prefix}.pcal_divides"),
            q.is_some(),
            "P | det B0",
            if q.is_some() { "divides" } else { "does not divide" },
            "det B0 in (P)",
        )
        .timed(t),
    );
    if let Some(q) = q {
        let q2 = q.exact_divide(&p)?;
        r.push(Check::verdict(
            format!("{prefix}.pcal_squared_not_divides"),
            q2.is_none(),
            "P^2 does not divide det B0",
            if q2.is_none() { "does not divide" } else { "divides" },
            "det B0 not in (P^2)",
        ));
    }
    Ok(r)
}

fn linkage2(opts: &SuiteOptions) -> Result<CheckReport> {
    let chars = match opts.characteristic {
        Some(c) => vec![c],
        None => vec![0, 5],
    };
    let mut r = CheckReport::new("linkage2").param("characteristics", chars.clone());
    for ch in chars {
        let prefix = format!("linkage2.{}", field_label(ch));
        let sys = build_system(2, Domain::from_characteristic(ch)?)?;
        let i = sys.generators();
        let (p, q) = n2_components(&sys)?;
        let t = Instant::now();
        let gi = buchberger_with_budget(&i, MonomialOrder::Grevlex, Some(opts.budget))?;
        r.push(Check::equal(format!("{prefix}.dimension"), 6, gi.dimension()?, "dim R/I = n^2 + n").timed(t));
        let t = Instant::now();
        let inter = ideal_intersection(&p, &q)?;
        let eq = ideal_equal(&inter, &i)?;
        r.push(
            Check::verdict(
                format!("{prefix}.intersection"),
                eq,
                "I = P ∩ Q",
                if eq { "equal" } else { "differ" },
                "I = P ∩ Q",
            )
            .timed(t),
        );
        let t = Instant::now();
        let eq = ideal_equal(&ideal_colon(&i, &p)?, &q)?;
        r.push(
            Check::verdict(
                format!("{prefix}.colon_p"),
                eq,
                "I : P = Q",
                if eq { "equal" } else { "differ" },
                "P and Q are linked via I",
            )
            .timed(t),
        );
        let t = Instant::now();
        let eq = ideal_equal(&ideal_colon(&i, &q)?, &p)?;
        r.push(
            Check::verdict(
                format!("{prefix}.colon_q"),
                eq,
                "I : Q = P",
                if eq { "equal" } else { "differ" },
                "P and Q are linked via I",
            )
            .timed(t),
        );
    }
    Ok(r)
}

fn sop_check(opts: &SuiteOptions) -> Result<CheckReport> {
    let n = opts.n.unwrap_or(3);
    let ch = opts.characteristic.unwrap_or(101);
    let mut r = CheckReport::new("sop-check").param("n", n).param("char", ch);
    let sys = build_system(n, Domain::from_characteristic(ch)?)?;
    let verified = n == 3;
    let mut variants = vec![("", sop_forms(&sys)?)];
    if n == 3 {
        variants.push((".displayed", sop_forms_display_n3(&sys)?));
    }
    for (tag, forms) in variants {
        let prefix = format!("sop_check.n{n}.{}{tag}", field_label(ch));
        let t = Instant::now();
        let mut gens = sys.generators();
        gens.extend(forms);
        let expected_dim = n.saturating_sub(3);
        let status_for = |ok: bool| match (verified, ok) {
            (false, _) => Status::Experiment,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        let gb = match buchberger_with_budget(&gens, MonomialOrder::Grevlex, Some(opts.budget)) {
            Ok(gb) => gb,
            Err(Error::Budget(b)) => {
                r.push(budget_check(format!("{prefix}.dimension"), expected_dim, b).timed(t));
                continue;
            }
            Err(e) => return Err(e),
        };
        let dim = gb.dimension()?;
        r.push(
            Check::new(
                format!("{prefix}.dimension"),
                status_for(dim == expected_dim),
                expected_dim,
                dim,
                "the theta-forms extend to a system of parameters",
            )
            .timed(t),
        );
        if expected_dim == 0 {
            let cert = gb.zero_dim_certificate(1 << 24)?;
            r.push(Check::new(
                format!("{prefix}.standard_monomials"),
                status_for(cert.is_some()),
                "a pure power of every variable leads; finite count",
                cert.map_or("some variable has no pure-power leading term".to_string(), |c| {
                    format!("{} standard monomials", c.standard_monomials)
                }),
                "zero-dimensional quotient",
            ));
        }
    }
    Ok(r)
}

fn lemma34(opts: &SuiteOptions) -> Result<CheckReport> {
    let cfg = ExperimentConfig {
        n: opts.n.unwrap_or(3),
        q: opts.q.unwrap_or(7),
        trials: opts.trials.unwrap_or(10_000),
        seed: opts.seed,
    };
    let mut r = CheckReport::new("lemma34")
        .param("n", cfg.n)
        .param("q", cfg.q)
        .param("trials", cfg.trials)
        .param("seed", cfg.seed);
    let prefix = format!("lemma34.n{}.q{:03}", cfg.n, cfg.q);
    let t = Instant::now();
    let s = witness_trials(&cfg)?;
    r.push(
        Check::equal(
            format!("{prefix}.violations"),
            0,
            s.violations,
            "a diagonal witness forces P(A) = 0",
        )
        .timed(t),
    );
    r.push(Check::equal(
        format!("{prefix}.nullity_at_least_n"),
        0,
        s.low_nullity,
        "polynomials in A commute with A",
    ));
    r.push(Check::new(
        format!("{prefix}.witness_count"),
        Status::Experiment,
        "reported",
        format!(
            "{} witnesses, {} with P = 0, of {} trials",
            s.witnesses, s.pcal_zero, s.trials
        ),
        "frequency of diagonal witnesses",
    ));
    if cfg.q >= 3 {
        let t = Instant::now();
        let hs = sample_hypersurface(&ExperimentConfig {
            trials: cfg.trials * 10,
            ..cfg
        })?;
        let q = cfg.q as f64;
        let in_band = hs.acceptance_rate >= 1.0 / (3.0 * q) && hs.acceptance_rate <= 3.0 / q;
        r.push(
            Check::new(
                format!("{prefix}.hypersurface_acceptance"),
                Status::Experiment,
                format!("within [{:.4}, {:.4}]", 1.0 / (3.0 * q), 3.0 / q),
                format!(
                    "{:.4}{}{}",
                    hs.acceptance_rate,
                    if in_band { "" } else { " (outside band)" },
                    hs.diagnostic.as_deref().map_or(String::new(), |d| format!("; {d}"))
                ),
                "P = 0 is a hypersurface",
            )
            .timed(t),
        );
        r.push(Check::new(
            format!("{prefix}.hypersurface_witness_density"),
            Status::Experiment,
            "positive",
            format!("{:.4}", hs.witness_fraction),
            "witnesses are dense on P = 0",
        ));
    }
    Ok(r)
}

fn count_pairs(opts: &SuiteOptions) -> Result<CheckReport> {
    let n = opts.n.unwrap_or(2);
    let qs = match opts.q {
        Some(q) => vec![q],
        None => vec![2, 3],
    };
    let mut r = CheckReport::new("count-pairs").param("n", n).param("q", qs.clone());
    for q in qs {
        let t = Instant::now();
        let count = count_commuting_pairs(n, q)?;
        let k = floor_log(&count, q);
        let expected = (n * n + n) as u32;
        r.push(
            Check::verdict(
                format!("count_pairs.n{n}.q{q:03}"),
                k == expected,
                format!("floor(log_q count) = {expected}"),
                format!("count {count}, floor log {k}"),
                "dimension of the commuting variety is n^2 + n",
            )
            .timed(t),
        );
    }
    Ok(r)
}
