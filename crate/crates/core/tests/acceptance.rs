//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p dirset --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dirset::campaign::{run_campaign, run_search, to_sorted_json, CampaignSpec, Family, Theorem};
use dirset::criteria::{main2_criterion, sziklai_classify, SziklaiOutcome};
use dirset::direction::{build_h_set, direction_set, theorem1_check};
use dirset::field::gcd;
use dirset::{Elem, FieldContext, FqFunction, MonomialForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn verdict(n: u32, title: &str, failures: &[String], elapsed: Duration) {
    let tag = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("\n[{tag}] criterion {n}: {title} ({:.2?})", elapsed);
    for f in failures {
        println!("       {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn field(q: u64) -> Arc<FieldContext> {
    Arc::new(FieldContext::with_order(q).unwrap())
}

/// Mixed-radix decoding of `i` into a value table, written independently of the library.
fn nth_table(q: u64, mut i: u64) -> Vec<Elem> {
    (0..q)
        .map(|_| {
            let v = i % q;
            i /= q;
            Elem::from_index(v as u32)
        })
        .collect()
}

fn sorted_is_permutation(table: &[Elem]) -> bool {
    let mut v: Vec<u32> = table.iter().map(|e| e.index()).collect();
    v.sort_unstable();
    v.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

#[test]
fn criterion_1_subgroup_containment_exhaustive() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (q, d, expected) in [
        (5u32, 2u64, 15u64),
        (5, 4, 10),
        (7, 2, 28),
        (7, 3, 21),
        (7, 6, 14),
    ] {
        let spec = CampaignSpec::new(q, Family::All, Theorem::Conj)
            .with_d(d)
            .with_jobs(1);
        let t = Instant::now();
        let report = run_campaign(&spec).unwrap();
        let single_core = t.elapsed();
        let search = run_search(&spec).unwrap();
        let formula = q as u64 * (1 + (q as u64 - 1) / d);
        if formula != expected {
            failures.push(format!("q={q} d={d}: closed form gives {formula}"));
        }
        if report.checked != (q as u64).pow(q) {
            failures.push(format!("q={q} d={d}: checked {} functions", report.checked));
        }
        if report.fired != expected || search.count != expected {
            failures.push(format!(
                "q={q} d={d}: {} contained, {} listed, want {expected}",
                report.fired, search.count
            ));
        }
        if report.counterexample_count != 0 || search.counterexample_count != 0 {
            failures.push(format!(
                "q={q} d={d}: {} counterexamples",
                report.counterexample_count
            ));
        }
        // every listed member's form reproduces its table
        let ctx = field(q as u64);
        for m in &search.members {
            let ok = m.form.is_some_and(|form: MonomialForm| {
                ctx.elements()
                    .all(|x| form.eval(&ctx, x).index() == m.function_table[x.index() as usize])
            });
            if !ok {
                failures.push(format!("q={q} d={d}: member {} has no valid form", m.index));
            }
        }
        if single_core > Duration::from_secs(300) {
            failures.push(format!("q={q} d={d}: took {single_core:?} on one core"));
        }
    }
    verdict(
        1,
        "every function with directions in M_d ∪ {0} is a x^(p^k) + b; counts 15/10/28/21/14",
        &failures,
        start.elapsed(),
    );
}

#[test]
fn criterion_2_permutation_criteria_sound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for q in [3u32, 4, 5, 7, 8] {
        let ctx = field(q as u64);
        let total = (q as u64).pow(q);
        for theorem in [Theorem::Main2, Theorem::Cor1] {
            let mut spec = CampaignSpec::new(q, Family::All, theorem);
            spec.force = true;
            let t = Instant::now();
            let report = run_campaign(&spec).unwrap();
            if q == 7 && t.elapsed() > Duration::from_secs(600) {
                failures.push(format!("{theorem} q=7 took {:?}", t.elapsed()));
            }
            if report.checked != total || report.counterexample_count != 0 {
                failures.push(format!(
                    "{theorem} q={q}: checked {} of {total}, {} violations",
                    report.checked, report.counterexample_count
                ));
            }
            if report.fired == 0 || report.fired > report.permutations {
                failures.push(format!(
                    "{theorem} q={q}: fired {} of {} permutations",
                    report.fired, report.permutations
                ));
            }
            if q > 7 {
                continue;
            }
            // the same verdicts recomputed here against a sort-based oracle
            let fired: u64 = (0..total)
                .into_par_iter()
                .map(|i| {
                    let table = nth_table(q as u64, i);
                    let f = FqFunction::interpolate(ctx.clone(), table.clone()).unwrap();
                    if f.is_constant() {
                        return 0;
                    }
                    let v = match theorem {
                        Theorem::Main2 => main2_criterion(&f),
                        _ => dirset::criteria::cor1_criterion(&f),
                    }
                    .unwrap();
                    assert!(
                        !v.fired() || sorted_is_permutation(&table),
                        "{theorem} fired on {table:?}"
                    );
                    v.fired() as u64
                })
                .sum();
            if fired != report.fired {
                failures.push(format!(
                    "{theorem} q={q}: recount {fired} vs campaign {}",
                    report.fired
                ));
            }
        }
    }
    verdict(
        2,
        "main2 and cor1 verdicts agree with the permutation oracle for q in {3,4,5,7,8}",
        &failures,
        start.elapsed(),
    );
}

/// `|(D - m)^-1 (D - m)|` straight from the pairs of the value table.
fn shifted_quotient_size(ctx: &FieldContext, table: &[Elem], m: Elem) -> usize {
    let mut shifted = BTreeSet::new();
    for x in ctx.elements() {
        for y in ctx.elements().filter(|&y| y != x) {
            let num = ctx.sub(table[x.index() as usize], table[y.index() as usize]);
            let slope = ctx.div(num, ctx.sub(x, y)).unwrap();
            shifted.insert(ctx.sub(slope, m));
        }
    }
    let mut out = BTreeSet::new();
    for &a in shifted.iter().filter(|a| !a.is_zero()) {
        for &b in &shifted {
            out.insert(ctx.div(b, a).unwrap());
        }
    }
    out.len()
}

fn monic_up_to_cubic(q: u64) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for deg in 0..=3usize {
        for i in 0..q.pow(deg as u32) {
            let mut c = nth_table(q, i)[..deg.min(q as usize)].to_vec();
            c.resize(deg, Elem::ZERO);
            c.push(Elem::ONE);
            out.push(c);
        }
    }
    out
}

struct LineSweep {
    admissible: u64,
    equalities: u64,
    failures: Vec<String>,
}

fn sweep_lines(q: u64) -> LineSweep {
    let ctx = field(q);
    let polys = monic_up_to_cubic(q);
    let results: Vec<LineSweep> = polys
        .par_iter()
        .map(|coeffs| {
            let f = FqFunction::from_coefficients(ctx.clone(), coeffs).unwrap();
            let table: Vec<Elem> = ctx
                .elements()
                .map(|x| dirset::poly::horner(&ctx, coeffs, x))
                .collect();
            let mut s = LineSweep {
                admissible: 0,
                equalities: 0,
                failures: Vec::new(),
            };
            for m in ctx.elements() {
                let quotient = shifted_quotient_size(&ctx, &table, m);
                for b in ctx.elements() {
                    let k = ctx
                        .elements()
                        .filter(|&x| table[x.index() as usize] == ctx.add(ctx.mul(m, x), b))
                        .count();
                    if k <= 1 || k >= q as usize {
                        continue;
                    }
                    s.admissible += 1;
                    let bound = q as usize - k + 2;
                    if quotient < bound {
                        s.failures.push(format!(
                            "q={q} f={coeffs:?} m={m} b={b}: {quotient} < {bound}"
                        ));
                    }
                    s.equalities += (quotient == bound) as u64;
                    let check = theorem1_check(&f, m, b).unwrap();
                    if check.quotient_size != quotient || check.k != k {
                        s.failures
                            .push(format!("q={q} f={coeffs:?} m={m} b={b}: library disagrees"));
                    }
                    let h = build_h_set(&f, m, b).unwrap();
                    let ok = h.h_set.is_subset(&h.quotient_set)
                        && h.h_set.len() + k > q as usize
                        && h.h_set.contains(Elem::ONE)
                        && !h.h_set.contains(Elem::ZERO)
                        && h.all_hold();
                    if !ok {
                        s.failures.push(format!(
                            "q={q} f={coeffs:?} m={m} b={b}: H-set check failed"
                        ));
                    }
                }
            }
            s
        })
        .collect();
    let mut total = LineSweep {
        admissible: 0,
        equalities: 0,
        failures: Vec::new(),
    };
    for r in results {
        total.admissible += r.admissible;
        total.equalities += r.equalities;
        total.failures.extend(r.failures);
    }
    total
}

#[test]
fn criterion_3_line_inequality_on_low_degree_polynomials() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for q in [5u32, 7, 9, 11, 13] {
        let report =
            run_campaign(&CampaignSpec::new(q, Family::MonicDeg(3), Theorem::Main)).unwrap();
        let sweep = sweep_lines(q as u64);
        failures.extend(
            sweep
                .failures
                .into_iter()
                .filter(|f| !f.contains("H-set"))
                .take(5),
        );
        if report.counterexample_count != 0 {
            failures.push(format!(
                "q={q}: {} campaign counterexamples",
                report.counterexample_count
            ));
        }
        if report.fired != sweep.admissible {
            failures.push(format!(
                "q={q}: campaign saw {} admissible lines, recount {}",
                report.fired, sweep.admissible
            ));
        }
        if report.extremes.equality_count == 0 || report.extremes.equality_count != sweep.equalities
        {
            failures.push(format!(
                "q={q}: equality witnesses campaign {} recount {}",
                report.extremes.equality_count, sweep.equalities
            ));
        }
        if report.extremes.min_margin.as_ref().map(|e| e.margin) != Some(0) {
            failures.push(format!("q={q}: minimum margin is not 0"));
        }
    }
    let sq = FqFunction::monomial(field(5), 2);
    let w = theorem1_check(&sq, Elem::ZERO, Elem::from_index(4)).unwrap();
    if !(w.k == 2 && w.quotient_size == 5 && w.bound == 5) {
        failures.push(format!("x^2 over F_5, m=0, b=4: {w:?}"));
    }
    verdict(
        3,
        "|(D-m)^-1 (D-m)| >= q-k+2 on every admissible line, equality attained",
        &failures,
        start.elapsed(),
    );
}

#[test]
fn criterion_4_h_set_invariants() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut lines = 0;
    for q in [5u64, 7, 9, 11, 13] {
        let sweep = sweep_lines(q);
        lines += sweep.admissible;
        failures.extend(
            sweep
                .failures
                .into_iter()
                .filter(|f| f.contains("H-set"))
                .take(5),
        );
    }
    let sq = FqFunction::monomial(field(5), 2);
    let h = build_h_set(&sq, Elem::ZERO, Elem::from_index(4)).unwrap();
    if h.h_set.indices() != vec![1, 2, 3, 4] {
        failures.push(format!("x^2 over F_5: H = {:?}", h.h_set.indices()));
    }
    verdict(
        4,
        &format!("H ⊆ D_h^-1 D_h, |H| >= q-k+1, 1 ∈ H, 0 ∉ H on {lines} admissible lines"),
        &failures,
        start.elapsed(),
    );
}

#[test]
fn criterion_5_frobenius_regression() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [3u64, 5] {
        let ctx = Arc::new(FieldContext::new(p, 2).unwrap());
        let q = ctx.q() as u64;
        for k in 0..2u32 {
            let pk = p.pow(k);
            let f = FqFunction::monomial(ctx.clone(), pk);
            let d = gcd(pk - 1, q - 1);
            let mut permitted = ctx.mult_subgroup(d).unwrap();
            permitted.insert(Elem::ZERO);
            let dir = direction_set(&f);
            if !dir.set().is_subset(&permitted) {
                failures.push(format!("x^{pk} over F_{q}: D not in M_{d} ∪ {{0}}"));
            }
            if k == 1 && *dir.set() != ctx.mult_subgroup(p - 1).unwrap() {
                failures.push(format!("x^{pk} over F_{q}: D is not M_{}", p - 1));
            }
            if !main2_criterion(&f).unwrap().fired() {
                failures.push(format!("x^{pk} over F_{q}: main2 inconclusive"));
            }
            let want = MonomialForm {
                a: Elem::ONE,
                k,
                b: Elem::ZERO,
            };
            match sziklai_classify(&f, d).unwrap() {
                SziklaiOutcome::Contained { form: Some(form) } if form == want => {}
                other => failures.push(format!("x^{pk} over F_{q}: {other:?}")),
            }
        }
    }
    verdict(
        5,
        "x^(p^k) over F_(p^2), p in {3,5}: containment, main2 and exact form",
        &failures,
        start.elapsed(),
    );
}

#[test]
fn criterion_6_field_core() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let orders: Vec<u64> = (2..=49u64)
        .filter(|&q| dirset::field::split_prime_power(q).is_ok())
        .collect();
    for &q in &orders {
        let ctx = field(q);
        let els: Vec<Elem> = ctx.elements().collect();
        let bad = els
            .par_iter()
            .map(|&a| {
                let mut bad = 0u64;
                if ctx.add(a, Elem::ZERO) != a
                    || ctx.mul(a, Elem::ONE) != a
                    || ctx.add(a, ctx.neg(a)) != Elem::ZERO
                {
                    bad += 1;
                }
                if !a.is_zero() && ctx.mul(a, ctx.inv(a).unwrap()) != Elem::ONE {
                    bad += 1;
                }
                for &b in &els {
                    if ctx.add(a, b) != ctx.add(b, a) || ctx.mul(a, b) != ctx.mul(b, a) {
                        bad += 1;
                    }
                    for &c in &els {
                        if ctx.add(ctx.add(a, b), c) != ctx.add(a, ctx.add(b, c))
                            || ctx.mul(ctx.mul(a, b), c) != ctx.mul(a, ctx.mul(b, c))
                            || ctx.mul(a, ctx.add(b, c)) != ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                        {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum::<u64>();
        if bad > 0 {
            failures.push(format!("GF({q}): {bad} axiom violations"));
        }
    }
    if orders.len() != 23 {
        failures.push(format!("{} prime powers up to 49", orders.len()));
    }

    let all: Vec<u64> = (2..=1024u64)
        .filter(|&q| dirset::field::split_prime_power(q).is_ok())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let extensions: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&q| !dirset::field::is_prime(q))
        .collect();
    let mut sampled = BTreeSet::new();
    while sampled.len() < 10 {
        sampled.insert(extensions[rng.random_range(0..extensions.len())]);
    }
    while sampled.len() < 20 {
        sampled.insert(all[rng.random_range(0..all.len())]);
    }
    for &q in &sampled {
        let ctx = field(q);
        for d in 1..q {
            if (q - 1) % d != 0 {
                continue;
            }
            let m = ctx.mult_subgroup(d).unwrap();
            // independent: the distinct d-th powers, by repeated multiplication
            let powers: BTreeSet<Elem> = ctx
                .nonzero_elements()
                .map(|x| (0..d).fold(Elem::ONE, |acc, _| ctx.mul(acc, x)))
                .collect();
            if m.len() as u64 != (q - 1) / d || m.iter().collect::<BTreeSet<_>>() != powers {
                failures.push(format!("GF({q}) d={d}: |M_d| = {}", m.len()));
            }
        }
    }
    verdict(
        6,
        &format!("field axioms for all q <= 49, |M_d| = (q-1)/d over {sampled:?}"),
        &failures,
        start.elapsed(),
    );
}

#[test]
fn criterion_7_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let specs = [
        CampaignSpec::new(7, Family::All, Theorem::Conj).with_d(3),
        CampaignSpec::new(5, Family::All, Theorem::Main2),
        CampaignSpec::new(7, Family::All, Theorem::Cor1),
        CampaignSpec::new(9, Family::MonicDeg(3), Theorem::Main),
        CampaignSpec::new(9, Family::MonomialForms, Theorem::Cor2),
        CampaignSpec::new(16, Family::Random(20_000), Theorem::Main2).with_seed(7),
        CampaignSpec::new(11, Family::PolyDeg(2), Theorem::Result2),
        CampaignSpec::new(13, Family::Random(5_000), Theorem::Result1)
            .with_d(4)
            .with_seed(99),
    ];
    for spec in specs {
        let mut outputs = Vec::new();
        for jobs in [0usize, 1, 3, 0] {
            let mut report = run_campaign(&spec.clone().with_jobs(jobs)).unwrap();
            report.elapsed_ms = 0;
            outputs.push(to_sorted_json(&report));
        }
        if outputs.iter().any(|o| *o != outputs[0]) {
            failures.push(format!(
                "{} q={} {}: reports differ",
                spec.theorem, spec.q, spec.family
            ));
        }
    }
    verdict(
        7,
        "repeated runs give byte-identical reports apart from elapsed_ms",
        &failures,
        start.elapsed(),
    );
}
