//! Soundness of the permutation criteria on every small function, and the
//! classification results checked against brute-force membership counts.

use std::sync::Arc;

use dirset::campaign::{decode, run_search, CampaignSpec, Family, Theorem};
use dirset::criteria::{
    cor1_with, cor2_with, is_permutation_oracle, main2_with, result1_check, result2_with,
    sziklai_classify, triple_product, Cor2Outcome, SziklaiOutcome,
};
use dirset::direction::{direction_set, quotient_set, scale_set};
use dirset::{Elem, ElementSet, FieldContext, FqFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn field(p: u64, n: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(p, n).unwrap())
}

#[derive(Default)]
struct Counts {
    checked: u64,
    main2_fired: u64,
    cor1_fired: u64,
    cor2_proven: u64,
    permutations: u64,
}

fn sweep(ctx: &Arc<FieldContext>, f: &FqFunction) -> Counts {
    let mut c = Counts {
        checked: 1,
        ..Counts::default()
    };
    let perm = is_permutation_oracle(f);
    c.permutations = perm as u64;
    if f.is_constant() {
        return c;
    }
    let dir = direction_set(f);
    let q = ctx.q() as usize;

    let s1 = dir.len();
    let s2 = quotient_set(ctx, dir.set()).len();
    let s3 = triple_product(f, &dir).len();
    assert!(s1 <= s2 && s2 <= s3 && s3 <= q, "{s1} {s2} {s3}");

    let deg = f.reduced_degree();
    if deg < q {
        let v = main2_with(f, &dir).unwrap();
        assert_eq!(v.threshold, q + 2 - deg);
        assert_eq!(v.fired(), s2 < q + 2 - deg);
        if v.fired() {
            assert!(perm, "main2 fired on {:?}", f.table_indices());
            c.main2_fired += 1;
        }
    }
    let v = cor1_with(f, &dir).unwrap();
    if v.fired() {
        assert!(perm, "cor1 fired on {:?}", f.table_indices());
        c.cor1_fired += 1;
    }
    match cor2_with(f, &dir) {
        Cor2Outcome::FormProven { form, .. } => {
            for x in ctx.elements() {
                assert_eq!(form.eval(ctx, x), f.value(x));
            }
            c.cor2_proven += 1;
        }
        Cor2Outcome::Counterexample { .. } => panic!("cor2 counterexample {:?}", f.table_indices()),
        Cor2Outcome::Inconclusive { size } => assert!(2 * size > q + 1),
    }
    assert!(result2_with(f, &dir).unwrap().holds());
    c
}

fn exhaustive(p: u64, n: u32) -> Counts {
    let ctx = field(p, n);
    let q = ctx.q() as u64;
    (0..q.pow(q as u32))
        .into_par_iter()
        .map(|i| {
            let f = FqFunction::interpolate(ctx.clone(), decode(&ctx, Family::All, 0, i)).unwrap();
            sweep(&ctx, &f)
        })
        .reduce(Counts::default, |a, b| Counts {
            checked: a.checked + b.checked,
            main2_fired: a.main2_fired + b.main2_fired,
            cor1_fired: a.cor1_fired + b.cor1_fired,
            cor2_proven: a.cor2_proven + b.cor2_proven,
            permutations: a.permutations + b.permutations,
        })
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

#[test]
fn criteria_sound_on_every_function_up_to_q7() {
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
        let c = exhaustive(p, n);
        let q = p.pow(n);
        assert_eq!(c.checked, q.pow(q as u32));
        assert_eq!(c.permutations, factorial(q));
        // every affine permutation a x + b has a one-element direction set
        assert!(c.main2_fired >= q * (q - 1) || q == 2);
        assert!(c.cor1_fired >= q * (q - 1));
        assert!(c.cor2_proven >= q * (q - 1));
    }
}

#[test]
fn criteria_sound_on_sampled_larger_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (p, n) in [(2u64, 3u32), (3, 2), (11, 1), (2, 4), (13, 1)] {
        let ctx = field(p, n);
        for _ in 0..3000 {
            // random permutations exercise the firing branch far more than random maps
            let mut table: Vec<Elem> = ctx.elements().collect();
            for i in (1..table.len()).rev() {
                table.swap(i, rng.random_range(0..=i));
            }
            if rng.random_bool(0.3) {
                table[0] = table[1];
            }
            let f = FqFunction::interpolate(ctx.clone(), table).unwrap();
            sweep(&ctx, &f);
        }
        for k in 1..ctx.q() as u64 {
            sweep(&ctx, &FqFunction::monomial(ctx.clone(), k));
        }
    }
}

#[test]
fn sziklai_counts_on_prime_fields() {
    for q in [3u32, 5, 7, 11] {
        let ctx = FieldContext::with_order(q as u64).unwrap();
        for d in ctx.group_divisors().into_iter().filter(|&d| d > 1) {
            let family = if q <= 7 {
                Family::All
            } else {
                Family::MonomialForms
            };
            let report =
                run_search(&CampaignSpec::new(q, family, Theorem::Conj).with_d(d)).unwrap();
            assert_eq!(
                report.count,
                q as u64 * (1 + (q as u64 - 1) / d),
                "q={q} d={d}"
            );
            assert_eq!(report.counterexample_count, 0);
        }
    }
}

/// Members of the monomial-forms family with directions in `M_d ∪ {0}`,
/// counted from the shape of `D` for `a x^(p^k) + b`.
fn predicted_form_count(ctx: &FieldContext, d: u64) -> u64 {
    let mut permitted = ctx.mult_subgroup(d).unwrap();
    permitted.insert(Elem::ZERO);
    let q = ctx.q() as u64;
    let mut count = q;
    for k in 0..ctx.n() {
        let e = ctx.p() as u64;
        let pk = e.pow(k);
        // D of x^(p^k) is the image of x^(p^k - 1), or {1} when k = 0
        let base = if k == 0 {
            ElementSet::from_iter(ctx.q(), [Elem::ONE])
        } else {
            ctx.mult_subgroup(dirset::field::gcd(pk - 1, q - 1))
                .unwrap()
        };
        for a in ctx.nonzero_elements() {
            if scale_set(ctx, &base, a).is_subset(&permitted) {
                count += q;
            }
        }
    }
    count
}

#[test]
fn sziklai_counts_on_prime_power_fields() {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
        let ctx = field(p, n);
        for d in ctx.group_divisors().into_iter().filter(|&d| d > 1) {
            let q = ctx.q();
            let report =
                run_search(&CampaignSpec::new(q, Family::MonomialForms, Theorem::Conj).with_d(d))
                    .unwrap();
            assert_eq!(report.count, predicted_form_count(&ctx, d), "q={q} d={d}");
        }
    }
}

#[test]
fn sziklai_and_result1_exhaustive_small() {
    for (p, n) in [(3u64, 1u32), (2, 2), (5, 1)] {
        let ctx = field(p, n);
        let q = ctx.q() as u64;
        for d in ctx.group_divisors().into_iter().filter(|&d| d > 1) {
            let mut contained = 0u64;
            for i in 0..q.pow(q as u32) {
                let f =
                    FqFunction::interpolate(ctx.clone(), decode(&ctx, Family::All, 0, i)).unwrap();
                let outcome = sziklai_classify(&f, d).unwrap();
                assert!(!outcome.is_counterexample());
                if matches!(outcome, SziklaiOutcome::Contained { .. }) {
                    contained += 1;
                }
                assert!(result1_check(&f, d).unwrap().holds());
            }
            assert_eq!(contained, q * (1 + (q - 1) / d));
        }
    }
}
