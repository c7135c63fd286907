//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{boundary_map, mat, random_homotopy_components, random_split_complex, scramble};
use lefschetz::complex::{cohomology, ChainComplex, ChainMap};
use lefschetz::homotopy::{hom_k_presentation, homotopy_inverse, minimize, null_homotopy};
use lefschetz::io::{generate_instance, negative_control, perturbed_family, random_profile, Instance};
use lefschetz::lefschetz::{
    deligne_decompose, deligne_decompose_traced, verify_certificate, DecompositionCertificate, LefschetzData, StepTrace,
};
use lefschetz::linalg::{smith_normal_form, ExactMatrix, Ring};
use lefschetz::Error;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Z: Ring = Ring::Integers;
const INSTANCES_PER_RING: u64 = 100;
const TIME_LIMIT: Duration = Duration::from_secs(10);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// The `seed`-th instance of the end-to-end suite over `ring`.
fn suite_instance(ring: Ring, seed: u64) -> Instance {
    generate_instance(&random_profile(ring, 1 + (seed % 3) as i64, seed)).expect("valid profile")
}

struct Run {
    ring: Ring,
    seed: u64,
    instance: Instance,
    result: Result<(DecompositionCertificate, Vec<StepTrace>), Error>,
    elapsed: Duration,
}

fn run_suite(ring: Ring) -> Vec<Run> {
    (0..INSTANCES_PER_RING)
        .map(|seed| {
            let instance = suite_instance(ring, seed);
            let start = Instant::now();
            let result = deligne_decompose_traced(&instance.complex, &instance.data).map(|r| (r.certificate, r.trace));
            Run { ring, seed, instance, result, elapsed: start.elapsed() }
        })
        .collect()
}

/// Decompose, check, and compare `H^-k(R_k)` with `H^-k(A)` for every `k`
/// where either is nonzero.
fn end_to_end(runs: &[Run], field_minimality: bool) -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut max_rank = 0;
    for run in runs {
        slowest = slowest.max(run.elapsed);
        let a = &run.instance.complex;
        max_rank = max_rank.max(a.ranks().iter().copied().max().unwrap_or(0));
        let tag = format!("{} seed {}", run.ring, run.seed);
        let cert = match &run.result {
            Ok((c, _)) => c,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        if let Err(f) = verify_certificate(a, cert) {
            failures.push(format!("{tag}: verify: {f}"));
            continue;
        }
        for k in a.degrees() {
            let want = cohomology(a, k);
            let got = cert.summands.iter().find(|s| s.k == -k).map(|s| cohomology(&s.complex, k));
            let same = match &got {
                Some(h) => h.is_isomorphic(&want),
                None => want.is_zero(),
            };
            if !same {
                failures.push(format!("{tag}: H^{k} mismatch"));
            }
        }
        if field_minimality {
            for s in &cert.summands {
                let r = Arc::new(s.complex.clone());
                let m = minimize(&r).expect("minimize");
                let flat = m.complex.differentials().iter().all(|d| d.is_zero());
                let dim = cohomology(a, -s.k).free_rank();
                let concentrated = m.complex.degrees().all(|j| j == -s.k || m.complex.rank(j) == 0);
                if !flat || !concentrated || m.complex.rank(-s.k) != dim {
                    failures.push(format!("{tag}: R_{} does not minimize to rank {dim} in degree {}", s.k, -s.k));
                }
            }
        }
        if run.elapsed > TIME_LIMIT {
            failures.push(format!("{tag}: took {:?}", run.elapsed));
        }
    }
    let detail = format!(
        "{} instances, {} failures, max term rank {max_rank}, slowest {:.3}s{}",
        runs.len(),
        failures.len(),
        slowest.as_secs_f64(),
        failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
    );
    outcome(failures.is_empty() && max_rank <= 6, detail)
}

fn alpha_checks(runs: &[&Run]) -> Outcome {
    let (mut steps, mut bad) = (0, 0);
    for run in runs {
        if let Ok((_, trace)) = &run.result {
            for s in trace {
                steps += 1;
                if !s.alpha_check {
                    bad += 1;
                }
            }
        } else {
            bad += 1;
        }
    }
    outcome(bad == 0 && steps > 0, format!("{steps} induction steps, {bad} with a failed check"))
}

fn amplitude_ledger(runs: &[&Run]) -> Outcome {
    let (mut steps, mut bad) = (0, 0);
    for run in runs {
        if let Ok((_, trace)) = &run.result {
            for s in trace {
                steps += 1;
                if !(s.c_within() && s.d_within() && s.next_within()) {
                    bad += 1;
                }
            }
        } else {
            bad += 1;
        }
    }
    outcome(bad == 0 && steps > 0, format!("{steps} induction steps, {bad} amplitude violations"))
}

/// Free resolution `Z^r --R--> Z^g` of `coker R`, with `coker R` in degree `top`.
fn random_resolution(rng: &mut ChaCha8Rng, top: i64) -> ChainComplex {
    let g = rng.gen_range(1..=3);
    let r = rng.gen_range(0..=3);
    if r == 0 {
        return ChainComplex::concentrated(Z, top, g);
    }
    ChainComplex::new(Z, top - 1, vec![r, g], vec![common::random_matrix(rng, Z, g, r, 9)]).unwrap()
}

fn hom_vanishing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checks, mut nonzero) = (0, 0);
    for _ in 0..50 {
        let m = random_resolution(&mut rng, 0);
        let n_mod = random_resolution(&mut rng, 0);
        let target = Arc::new(n_mod);
        for n in 1..=4 {
            let source = Arc::new(m.shift(2 * n));
            checks += 1;
            if !hom_k_presentation(&source, &target).expect("same ring").is_zero() {
                nonzero += 1;
            }
        }
    }
    outcome(nonzero == 0, format!("{checks} Hom modules computed, {nonzero} nonzero"))
}

fn negative_control_suite() -> Outcome {
    let (mut tried, mut correct) = (0, 0);
    let mut wrong = Vec::new();
    for seed in 0..50u64 {
        let profile = random_profile(Z, 1, 1000 + seed);
        let inst = negative_control(&generate_instance(&profile).unwrap());
        if cohomology(&inst.complex, 1).is_zero() {
            continue;
        }
        tried += 1;
        match deligne_decompose(&inst.complex, &inst.data) {
            Err(Error::HardLefschetzViolation(1)) => correct += 1,
            other => wrong.push(format!("seed {seed}: {:?}", other.map(|c| c.summands.len()))),
        }
    }
    outcome(
        tried == 50 && correct == 50,
        format!("{correct}/{tried} rejected at n=1, {} false acceptances", wrong.len()),
    )
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors `d_k = gcd of k x k minors`.
fn invariant_factors_by_minors(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i64> {
    let mut divisors = vec![1i64];
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

fn oracle_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut snf_bad = 0;
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let vals: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let flat: Vec<i64> = vals.concat();
        let m = ExactMatrix::from_i64(Z, r, c, &flat);
        let snf = smith_normal_form(&m);
        let diag: Vec<i64> = snf.diagonal().iter().map(|x| Z.to_i64(x).unwrap()).collect();
        let transforms_ok = &(&snf.u * &m) * &snf.v == snf.d;
        if diag != invariant_factors_by_minors(&vals, r, c) || !transforms_ok {
            snf_bad += 1;
        }
    }

    let mut null_found = 0;
    for i in 0..200 {
        let ring = common::rings()[i % 3];
        let s = Arc::new(random_split_complex(&mut rng, ring, -1, 1));
        let t0 = Arc::new(random_split_complex(&mut rng, ring, -1, 1));
        let (t, _) = scramble(&mut rng, &t0);
        let h = random_homotopy_components(&mut rng, &s, &t);
        let u = boundary_map(&s, &t, &h);
        if let Ok(Some(w)) = null_homotopy(&u) {
            if w.verify().is_ok() {
                null_found += 1;
            }
        }
    }

    let mut inverses = 0;
    for i in 0..30 {
        let ring = common::rings()[i % 3];
        let a = Arc::new(random_split_complex(&mut rng, ring, -1, 1));
        let extra = ChainComplex::two_term(rng.gen_range(-2..=1), mat(ring, &[&[1]]));
        let b = Arc::new(a.direct_sum(&extra).unwrap());
        let inc = ChainMap::from_fn(a.clone(), b.clone(), |k| {
            ExactMatrix::identity(ring, a.rank(k)).vstack(&ExactMatrix::zeros(ring, extra.rank(k), a.rank(k)))
        })
        .unwrap();
        let (_, iso) = scramble(&mut rng, &b);
        if let Ok(Some(eq)) = homotopy_inverse(&iso.compose(&inc).unwrap()) {
            if eq.source_witness.verify().is_ok() && eq.target_witness.verify().is_ok() {
                inverses += 1;
            }
        }
    }

    let zed = Arc::new(ChainComplex::concentrated(Z, 0, 1));
    let z3 = Arc::new(ChainComplex::two_term(-1, mat(Z, &[&[3]])));
    let f = ChainMap::new(zed, z3, vec![mat(Z, &[&[1]])]).unwrap();
    let counterexample_rejected = matches!(homotopy_inverse(&f), Ok(None));

    outcome(
        snf_bad == 0 && null_found == 200 && inverses == 30 && counterexample_rejected,
        format!(
            "SNF {}/500 agree, null-homotopies {null_found}/200, inverses {inverses}/30, Z vs Z/3 rejected: {counterexample_rejected}",
            500 - snf_bad
        ),
    )
}

fn family_mode() -> Outcome {
    let mut agree = 0;
    let mut first_failure = None;
    for seed in 0..25u64 {
        let inst = suite_instance(Z, 200 + seed);
        let LefschetzData::Power(phi) = &inst.data else { unreachable!("random profiles are monotone") };
        let a = &inst.complex;
        let n0 = lefschetz::lefschetz::amplitude_bound(a);
        let power = deligne_decompose(a, &inst.data);
        let family = perturbed_family(phi, n0, seed).and_then(|fam| deligne_decompose(a, &LefschetzData::Family(fam)));
        match (power, family) {
            (Ok(p), Ok(f)) => {
                let checks = verify_certificate(a, &p).is_ok() && verify_certificate(a, &f).is_ok();
                let same_invariants = p.summands.len() == f.summands.len()
                    && p.summands.iter().zip(&f.summands).all(|(x, y)| {
                        x.k == y.k
                            && x.twist_weight == y.twist_weight
                            && cohomology(&x.complex, -x.k).is_isomorphic(&cohomology(&y.complex, -y.k))
                    });
                if checks && same_invariants {
                    agree += 1;
                } else if first_failure.is_none() {
                    first_failure = Some(format!("seed {seed}: certificates differ"));
                }
            }
            (p, f) => {
                first_failure.get_or_insert(format!("seed {seed}: power {:?} family {:?}", p.err(), f.err()));
            }
        }
    }
    outcome(
        agree == 25,
        format!(
            "{agree}/25 perturbed families agree with power mode{}",
            first_failure.map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

/// A copy of an integer certificate with one random entry (summand
/// differentials included) moved by a nonzero amount.
fn mutate(cert: &DecompositionCertificate, rng: &mut ChaCha8Rng) -> DecompositionCertificate {
    let mut out = cert.clone();
    let diff_entries: Vec<(usize, i64, usize, usize)> = out
        .summands
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            let c = &s.complex;
            (c.min_degree()..c.max_degree()).flat_map(move |k| {
                let d = c.d(k);
                let (r, cl) = (d.rows(), d.cols());
                (0..r * cl).map(move |e| (i, k, e / cl, e % cl))
            })
        })
        .collect();
    let other: usize = out.clone().matrices_mut().iter().map(|m| m.rows() * m.cols()).sum();
    let total = diff_entries.len() + other;
    let pick = rng.gen_range(0..total);
    let delta = Z.from_i64([-2, -1, 1, 2][rng.gen_range(0..4)]);
    if pick < diff_entries.len() {
        let (i, k, r, c) = diff_entries[pick];
        let s = &mut out.summands[i];
        let mut diffs = s.complex.differentials().to_vec();
        let idx = (k - s.complex.min_degree()) as usize;
        let v = Z.add(diffs[idx].get(r, c), &delta);
        diffs[idx].set(r, c, v);
        s.complex = ChainComplex::from_raw(
            Z,
            s.complex.min_degree(),
            s.complex.ranks().to_vec(),
            diffs,
            s.complex.twist_weight(),
        )
        .unwrap();
        return out;
    }
    let mut idx = pick - diff_entries.len();
    for m in out.matrices_mut() {
        let size = m.rows() * m.cols();
        if idx < size {
            let (r, c) = (idx / m.cols(), idx % m.cols());
            let v = Z.add(m.get(r, c), &delta);
            m.set(r, c, v);
            break;
        }
        idx -= size;
    }
    out
}

fn tamper_resistance(runs: &[Run]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let certs: Vec<(&Arc<ChainComplex>, &DecompositionCertificate)> = runs
        .iter()
        .filter_map(|r| r.result.as_ref().ok().map(|(c, _)| (&r.instance.complex, c)))
        .filter(|(_, c)| !c.summands.is_empty())
        .collect();
    let mut caught = 0;
    for i in 0..100 {
        let (a, cert) = certs[i % certs.len()];
        if verify_certificate(a, &mutate(cert, &mut rng)).is_err() {
            caught += 1;
        }
    }
    outcome(caught == 100, format!("{caught}/100 single-entry mutations rejected"))
}

fn main() {
    let integers = run_suite(Z);
    let rationals = run_suite(Ring::Rationals);
    let f5 = run_suite(Ring::prime_field(5).unwrap());
    let mut fields: Vec<Run> = Vec::new();
    fields.extend(rationals);
    fields.extend(f5);
    let all: Vec<&Run> = integers.iter().chain(&fields).collect();

    let results = [
        ("1 end-to-end over Z", end_to_end(&integers, false)),
        ("2 end-to-end over Q and F5", end_to_end(&fields, true)),
        ("3 alpha agrees with H^0 of the iterate", alpha_checks(&all)),
        ("4 amplitude ledger", amplitude_ledger(&all)),
        ("5 Hom vanishing", hom_vanishing()),
        ("6 negative control", negative_control_suite()),
        ("7 oracle suites", oracle_suites()),
        ("8 family mode", family_mode()),
        ("9 tamper resistance", tamper_resistance(&integers)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
