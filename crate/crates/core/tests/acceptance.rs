//! Acceptance suite: one line per criterion, exact equality throughout.
//!
//! Two criteria are stated in a form that does not hold; their lines read FAIL and carry the
//! corrected statement that does hold. The process exits nonzero when any criterion deviates
//! from its recorded outcome, including a recorded failure that starts passing.

use std::time::Instant;

use dwork_core::crystal::{cubic, formal_expand, griffiths_reduce, lambda_untwisted, DiffForm, Poly};
use dwork_core::driver::{self, PlannedTask, RunConfig};
use dwork_core::hypergeometric::{constant_term_variable_power, hyp_coeffs, lookup_series};
use dwork_core::laurent::{cubic_family, generator, hasse_witt, laurent_pow_ct};
use dwork_core::ring::{legendre_eps, Ring, Zmod};
use dwork_core::series::{SeriesMatrix, SeriesRing, TruncatedSeries};
use dwork_core::verify::{default_cap, run_task, Control, StatementId, TwistMiddle, Verdict, VerificationReport, VerifyTask};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 4] = [5, 7, 11, 13];
const SEED: u64 = 20_240_601;

/// What a criterion is recorded to produce.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Recorded {
    Pass,
    Fail,
}

type Criterion = (&'static str, Recorded, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    /// For a recorded failure: the failure is exactly the recorded one and everything else holds.
    matches_record: bool,
}

impl Outcome {
    fn pass_if(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, matches_record: pass }
    }
}

fn task(id: StatementId, p: u64, s: u32, m: usize, cap: usize) -> VerifyTask {
    VerifyTask::new(id, p, s, m, cap).expect("valid task")
}

fn run(t: &VerifyTask) -> VerificationReport {
    run_task(t).unwrap_or_else(|e| panic!("{}: {e}", t.label()))
}

/// Runs every task and returns (passed, total, first unexpected summary).
fn tally(tasks: &[VerifyTask], want: Verdict) -> (usize, usize, Option<String>) {
    let mut ok = 0;
    let mut first_bad = None;
    for t in tasks {
        let r = run(t);
        if r.verdict == want {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(r.summary());
        }
    }
    (ok, tasks.len(), first_bad)
}

fn count(label: &str, (ok, total, bad): &(usize, usize, Option<String>)) -> String {
    match bad {
        None => format!("{label} {ok}/{total}"),
        Some(b) => format!("{label} {ok}/{total} [{b}]"),
    }
}

fn all_ok(t: &(usize, usize, Option<String>)) -> bool {
    t.0 == t.1
}

fn dwork_rank1() -> Outcome {
    let tasks: Vec<_> = PRIMES
        .iter()
        .flat_map(|&p| [1u32, 2].map(|s| task(StatementId::Rank1, p, s, 1, default_cap(p, s, 1)).with_series("dwork")))
        .collect();
    let t = tally(&tasks, Verdict::Pass);
    Outcome::pass_if(all_ok(&t), count("F(1/2,1/2;1) p in {5,7,11,13}, s in {1,2}, N = max(150, p^s+50):", &t))
}

fn corollary_families() -> Outcome {
    let mut tasks = Vec::new();
    for family in ["corollary1", "corollary2"] {
        for k in [2u64, 3, 4] {
            for &p in &PRIMES {
                if k % p == 0 {
                    continue;
                }
                for s in [1u32, 2] {
                    for m in [1usize, 2] {
                        tasks.push(task(StatementId::Rank1bis, p, s, m, default_cap(p, s, m)).with_series(&format!("{family}:{k}")));
                    }
                }
            }
        }
    }
    let t = tally(&tasks, Verdict::Pass);
    let mut routes_agree = true;
    let mut mismatch = None;
    for family in ["corollary1", "corollary2"] {
        for k in [2usize, 3, 4] {
            let name = format!("{family}:{k}");
            let ct = laurent_pow_ct(&generator(&name).unwrap(), 40).values;
            let step = constant_term_variable_power(&name).unwrap();
            let hyp = hyp_coeffs(&lookup_series(&name).unwrap(), 40 / step + 1).unwrap();
            for (r, v) in ct.iter().enumerate() {
                let expect = if r % step == 0 { hyp[r / step].clone() } else { Zero::zero() };
                if *v != expect {
                    routes_agree = false;
                    mismatch.get_or_insert(format!("{name} r={r}"));
                }
            }
        }
    }
    let routes = match mismatch {
        None => "constant-term route = hypergeometric route for r <= 40 (6 generators)".to_string(),
        Some(m) => format!("routes differ at {m}"),
    };
    Outcome::pass_if(all_ok(&t) && routes_agree, format!("{}; {routes}", count("rank1bis, both families, k in {2,3,4}, s,m in {1,2}:", &t)))
}

fn theorem_main() -> Outcome {
    let mut tasks = Vec::new();
    for &p in &PRIMES {
        for s in [1u32, 2] {
            for m in [1usize, 2] {
                let pow = p.pow(s) as usize;
                tasks.push(task(StatementId::TheoremMain, p, s, m, m * pow + pow.max(50)));
            }
        }
    }
    let good = tally(&tasks, Verdict::Pass);
    let negated: Vec<_> = tasks.iter().map(|t| t.clone().with_control(Control::NegateEps)).collect();
    let bad = tally(&negated, Verdict::Fail);
    let signs: Vec<String> = PRIMES.iter().map(|&p| format!("eps_{p}={:+}", legendre_eps(p).unwrap())).collect();
    Outcome::pass_if(
        all_ok(&good) && all_ok(&bad),
        format!(
            "{}; {} ({})",
            count("p in {5,7,11,13}, s,m in {1,2}, N >= mp^s+50:", &good),
            count("negated eps fails", &bad),
            signs.join(" ")
        ),
    )
}

fn lambda_crosscheck() -> Outcome {
    let untwisted: Vec<_> =
        [(5, 1), (5, 2), (7, 1), (7, 2)].iter().map(|&(p, s)| task(StatementId::LambdaCrosscheck, p, s, 1, 40)).collect();
    let u = tally(&untwisted, Verdict::Pass);
    let twisted = |middle| -> Vec<VerifyTask> {
        [5u64, 11].iter().map(|&p| task(StatementId::LambdaCrosscheck, p, 1, 1, 40).with_twist(middle)).collect()
    };
    let corrected = tally(&twisted(TwistMiddle::UnitEps), Verdict::Pass);
    let literal: Vec<VerificationReport> = twisted(TwistMiddle::EpsUnit).iter().map(run).collect();
    let literal_pass = literal.iter().all(|r| r.verdict == Verdict::Pass);
    // Recorded: the literal middle factor diag(eps, 1) fails only where eps = -1, at t^0.
    let literal_as_recorded = literal.iter().all(|r| {
        let eps = legendre_eps(r.task.p).unwrap();
        match (&r.first_failure, eps) {
            (None, 1) => r.verdict == Verdict::Pass,
            (Some(f), -1) => r.verdict == Verdict::Fail && f.degree == 0,
            _ => false,
        }
    });
    let literal_detail: Vec<String> = literal
        .iter()
        .map(|r| match &r.first_failure {
            None => format!("p={} {}", r.task.p, r.verdict),
            Some(f) => format!("p={} fails at entry {:?} t^{}", r.task.p, f.entry.unwrap_or((0, 0)), f.degree),
        })
        .collect();
    Outcome {
        pass: all_ok(&u) && literal_pass,
        detail: format!(
            "{}; twisted with diag(eps,1): {}; twisted with diag(1,eps): {}",
            count("untwisted mod (p^s, t^40):", &u),
            literal_detail.join(", "),
            count("", &corrected).trim_start()
        ),
        matches_record: all_ok(&u) && all_ok(&corrected) && literal_as_recorded,
    }
}

fn lift_invariance() -> Outcome {
    let mut agree = Vec::new();
    for (p, s) in [(5u64, 2u32), (7, 2)] {
        let at0 = lambda_untwisted(p, s, 40, 0).unwrap();
        let at1 = lambda_untwisted(p, s, 40, 1).unwrap();
        agree.push((p, at0.first_mismatch(&at1).unwrap().is_none()));
    }
    let pass = agree.iter().all(|a| a.1);
    let detail: Vec<String> = agree.iter().map(|(p, ok)| format!("p={p}: {}", if *ok { "equal" } else { "differ" })).collect();
    Outcome::pass_if(pass, format!("Lambda at a=0 vs a=1 mod (p^2, t^40): {}", detail.join(", ")))
}

fn disc_power(base: &Zmod, e: u64, cap: usize) -> TruncatedSeries<Zmod> {
    let disc = TruncatedSeries::from_ints(base.clone(), &[4, 0, -27], cap);
    (0..e).fold(TruncatedSeries::one(base.clone(), cap), |acc, _| acc.try_mul(&disc).unwrap())
}

fn hasse_witt_det() -> Outcome {
    let (mut literal, mut half, mut transpose) = (Vec::new(), Vec::new(), Vec::new());
    for &p in &PRIMES {
        let cap = 2 * p as usize;
        let base = Zmod::with_ps(p, 1).unwrap();
        let ring = SeriesRing::new(base.clone(), cap);
        let beta = hasse_witt(&cubic_family(&ring, base.one()), p).unwrap().to_series_matrix(&ring).unwrap();
        let det = beta.det();
        literal.push(det == disc_power(&base, p - 1, cap));
        half.push(det == disc_power(&base, (p - 1) / 2, cap));
        let e = beta.entries();
        let bt = SeriesMatrix::from_rows(e[0][0].clone(), e[1][0].clone(), e[0][1].clone(), e[1][1].clone()).unwrap();
        transpose.push(lambda_untwisted(p, 1, cap, 0).unwrap().first_mismatch(&bt).unwrap().is_none());
    }
    let n = |v: &[bool]| v.iter().filter(|b| **b).count();
    Outcome {
        pass: n(&literal) == 4 && n(&transpose) == 4,
        detail: format!(
            "det beta = (4-27t^2)^(p-1) mod p: {}/4; det beta = (4-27t^2)^((p-1)/2) mod p: {}/4; Lambda mod p = beta^T: {}/4",
            n(&literal),
            n(&half),
            n(&transpose)
        ),
        matches_record: n(&literal) == 0 && n(&half) == 4 && n(&transpose) == 4,
    }
}

fn residue_tables() -> Outcome {
    let r = run(&task(StatementId::ResidueTables, 5, 1, 1, 20));
    let checked = r.precision.as_ref().map(|p| p.checked.1).unwrap_or(0);
    Outcome::pass_if(
        r.verdict == Verdict::Pass && checked >= 41,
        format!("closed forms vs local expansions for n <= 20, pole orders through r = {checked}, sum rule: {}", r.verdict),
    )
}

fn ode() -> Outcome {
    let exact = run(&task(StatementId::OdeExact, 5, 1, 1, 202));
    let through = exact.precision.as_ref().map(|p| p.checked.1).unwrap_or(0);
    let mut tasks = Vec::new();
    for p in [5u64, 7] {
        for s in [1u32, 2] {
            for m in [1usize, 2] {
                tasks.push(task(StatementId::OdeCongruence, p, s, m, default_cap(p, s, m)));
            }
        }
    }
    let t = tally(&tasks, Verdict::Pass);
    Outcome::pass_if(
        exact.verdict == Verdict::Pass && through >= 200 && all_ok(&t),
        format!("exact over Q through t^{through}: {}; {}", exact.verdict, count("congruence p in {5,7}, s,m in {1,2}:", &t)),
    )
}

type FormRing = SeriesRing<Zmod>;

fn random_poly(rng: &mut ChaCha8Rng, ring: &FormRing, deg: usize) -> Poly<FormRing> {
    let modulus = ring.base().modulus();
    let coeffs = (0..=deg).map(|_| (0..ring.cap()).map(|_| rng.gen_range(0..modulus)).collect()).collect();
    Poly::new(ring.clone(), coeffs)
}

/// `d(A_0 / f) + d(A_1 / f^2)` with random numerators of the largest allowed degree.
fn random_exact(rng: &mut ChaCha8Rng, f: &Poly<FormRing>) -> DiffForm<FormRing> {
    let ring = f.ring().clone();
    DiffForm::exact(f.clone(), 0, &random_poly(rng, &ring, 2)).add(&DiffForm::exact(f.clone(), 1, &random_poly(rng, &ring, 5)))
}

fn cubic_over(p: u64, s: u32, cap: usize) -> Poly<FormRing> {
    let base = Zmod::with_ps(p, s).unwrap();
    cubic(&SeriesRing::new(base.clone(), cap), &base.one())
}

fn exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (p, s) = (7u64, 2u32);
    let f = cubic_over(p, s, 6);
    let (mut katz, mut cartier) = (0, 0);
    for _ in 0..10 {
        let e = formal_expand(&random_exact(&mut rng, &f), 60).unwrap();
        katz += usize::from(e.katz_exact().pass);
        cartier += usize::from((1..=s).all(|k| e.iterated_cartier_violation(k).is_none()));
    }
    let basis = formal_expand(&DiffForm::basis(f, 1), 60).unwrap().katz_exact();
    let control = match basis.first_violation {
        Some(m) => format!("dx/f fails at x^-{m}"),
        None => "dx/f passes".into(),
    };
    Outcome::pass_if(
        katz == 10 && cartier == 10 && !basis.pass,
        format!("p={p}, s={s}, depth 60: Katz {katz}/10, C^k lands in p^k for k <= {s}: {cartier}/10; {control}"),
    )
}

fn random_unit_matrix(rng: &mut ChaCha8Rng, base: &Zmod, cap: usize) -> SeriesMatrix<Zmod> {
    loop {
        let mut entry = || TruncatedSeries::new(base.clone(), (0..cap).map(|_| rng.gen_range(0..base.modulus())).collect());
        let m = SeriesMatrix::from_rows(entry(), entry(), entry(), entry()).unwrap();
        if m.det().is_unit() {
            return m;
        }
    }
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let cases = [(5u64, 1u32), (5, 2), (7, 1), (7, 2)];
    let (mut inversions, mut inv_total) = (0, 0);
    let (mut reductions, mut red_total) = (0, 0);
    for &(p, s) in &cases {
        let base = Zmod::with_ps(p, s).unwrap();
        for _ in 0..5 {
            let m = random_unit_matrix(&mut rng, &base, 30);
            let inv = m.invert().unwrap();
            let id = SeriesMatrix::identity(base.clone(), 30);
            inv_total += 1;
            inversions += usize::from(m.try_mul(&inv).unwrap() == id && inv.try_mul(&m).unwrap() == id);
        }
        let f = cubic_over(p, s, 6);
        let ring = f.ring().clone();
        for _ in 0..20 {
            let omega = DiffForm::level_form(f.clone(), 0, random_poly(&mut rng, &ring, 1)).add(&DiffForm::level_form(
                f.clone(),
                1,
                random_poly(&mut rng, &ring, 4),
            ));
            let perturbed = omega.add(&random_exact(&mut rng, &f));
            red_total += 1;
            reductions += usize::from(griffiths_reduce(&omega).unwrap() == griffiths_reduce(&perturbed).unwrap());
        }
    }
    let config = RunConfig::from_toml(
        "seed = 11\n\
         [[grid]]\nstatement = \"rank1\"\nseries = \"dwork\"\np = [5, 7, 11]\ns = [1, 2]\n\
         [[grid]]\nstatement = \"rank1bis\"\nseries = \"corollary1:3\"\np = 7\nm = 2\ncontrol = \"corrupt:random\"\nexpect = \"fail\"\n",
    )
    .unwrap();
    let first = driver::run(&RunConfig { jobs: Some(4), ..config.clone() }).unwrap().to_json();
    let second = driver::run(&RunConfig { jobs: Some(1), ..config }).unwrap().to_json();
    let deterministic = first == second;
    let planned: Vec<PlannedTask> = Vec::new();
    let empty = driver::run(&RunConfig { tasks: planned, ..RunConfig::default() }).unwrap().exit_code() == 0;
    Outcome::pass_if(
        inversions == inv_total && reductions == red_total && deterministic && empty,
        format!(
            "matrix inversion roundtrips {inversions}/{inv_total}; reduction invariant under exact perturbation {reductions}/{red_total}; \
             reports byte-identical across runs and job counts: {deterministic}"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("rank-1 congruence for the Legendre period", Recorded::Pass, dwork_rank1),
        ("truncated congruences for the corollary families", Recorded::Pass, corollary_families),
        ("matrix congruence for the twisted period matrix", Recorded::Pass, theorem_main),
        ("Cartier matrix against the period quotient", Recorded::Fail, lambda_crosscheck),
        ("lift invariance of the Cartier matrix", Recorded::Pass, lift_invariance),
        ("Hasse-Witt determinant and transpose", Recorded::Fail, hasse_witt_det),
        ("residue tables", Recorded::Pass, residue_tables),
        ("differential system", Recorded::Pass, ode),
        ("exactness criteria", Recorded::Pass, exactness),
        ("infrastructure", Recorded::Pass, infrastructure),
    ];
    let mut deviations = 0;
    let (mut passed, mut failed) = (0, 0);
    for (i, (title, recorded, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let secs = start.elapsed().as_secs_f64();
        let as_recorded = o.matches_record && (o.pass == (*recorded == Recorded::Pass));
        if o.pass {
            passed += 1;
        } else {
            failed += 1;
        }
        if !as_recorded {
            deviations += 1;
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = match (*recorded, as_recorded) {
            (Recorded::Fail, true) => " (recorded: statement as written does not hold)",
            (_, false) => " (DEVIATES FROM RECORD)",
            _ => "",
        };
        println!("criterion {:>2} {status} {title} [{secs:.1}s]{note}: {}", i + 1, o.detail);
    }
    println!("acceptance: {passed} pass, {failed} fail, {deviations} deviation(s) from the recorded outcomes");
    if deviations > 0 {
        std::process::exit(1);
    }
}
