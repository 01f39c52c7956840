//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.
//!
//! Run with `cargo test -p openbook-core --test acceptance`.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use openbook_core::{
    boundary_connected_sum_variation, brieskorn_multiplicity, classify_dichotomy, free_lie_ranks,
    growth_estimate, homotopy_ranks, is_rationally_elliptic, loop_ranks, milnor_openbook_spec,
    milnor_page, monodromy_constraint_report, openbook_loop_ranks, pbw_series, space_ranks,
    validate_spec, variation_is_iso, witt_number, BrieskornExponents, DichotomyVerdict,
    GradedRanks, GrowthClass, HyperbolicReason, MonodromyHypothesis, OpenBookSpec, SpaceModel,
    TruncatedSeries, VariationMatrix, Wedge,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn ranks(pairs: &[(usize, u64)]) -> GradedRanks {
    pairs.iter().copied().collect()
}

fn wedge(dims: &[usize]) -> SpaceModel {
    SpaceModel::WedgeOfSpheres(Wedge::from_dims(dims.iter().copied()))
}

// 1. Free Lie ranks on two even degree-2 generators against Witt numbers.
fn witt_ranks() -> Outcome {
    const EXPECTED: [u64; 12] = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335];
    for (k, &want) in EXPECTED.iter().enumerate().take(8) {
        let lyndon = common::lyndon_words(2, k + 1).len() as u64;
        ensure!(
            lyndon == want,
            "Lyndon count at k={} is {lyndon}, expected {want}",
            k + 1
        );
    }
    for (k, &want) in EXPECTED.iter().enumerate() {
        let w = witt_number(2, k as u64 + 1);
        ensure!(w == BigUint::from(want), "witt_number(2,{}) = {w}", k + 1);
    }
    let start = Instant::now();
    let lie = free_lie_ranks(&ranks(&[(2, 2)]), 24).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (k, &want) in EXPECTED.iter().enumerate() {
        let d = 2 * (k + 1);
        ensure!(
            lie.get(d) == BigUint::from(want),
            "degree {d}: {} vs {want}",
            lie.get(d)
        );
        ensure!(lie.get(d - 1).is_zero(), "odd degree {} nonzero", d - 1);
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

// 2. PBW roundtrip on 100 random generator sets at truncation 30.
fn pbw_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let n = 30;
    let start = Instant::now();
    for trial in 0..100 {
        let mut generators = GradedRanks::new();
        for d in 1..=6usize {
            if rng.gen_bool(0.5) {
                generators.set(d, rng.gen_range(0u64..=3));
            }
        }
        let lie = free_lie_ranks(&generators, n).map_err(|e| format!("trial {trial}: {e}"))?;
        let target = TruncatedSeries::one(n)
            .sub(&TruncatedSeries::from_ranks(&generators, n))
            .and_then(|s| s.reciprocal())
            .map_err(|e| e.to_string())?;
        ensure!(
            pbw_series(&lie, n) == target,
            "trial {trial}: roundtrip mismatch for generators {generators}"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(())
}

// 3. Classical sphere ranks and the Hilton count for S^2 v S^2.
fn sphere_ranks() -> Outcome {
    let classical = [
        (2, ranks(&[(1, 1), (2, 1)])),
        (3, ranks(&[(2, 1)])),
        (4, ranks(&[(3, 1), (6, 1)])),
        (5, ranks(&[(4, 1)])),
        (6, ranks(&[(5, 1), (10, 1)])),
        (7, ranks(&[(6, 1)])),
    ];
    for (n, want) in &classical {
        let got = loop_ranks(&SpaceModel::Sphere(*n), 40).map_err(|e| e.to_string())?;
        ensure!(&got == want, "Omega S^{n}: {got} vs {want}");
        // the singleton wedge goes through the free Lie algebra instead
        let via_lie = loop_ranks(&wedge(&[*n]), 40).map_err(|e| e.to_string())?;
        ensure!(&via_lie == want, "Omega S^{n} via Lie: {via_lie} vs {want}");
    }
    let oracle = common::hilton_wedge_ranks(2, 2, 6);
    let got = space_ranks(&wedge(&[2, 2]), 6).map_err(|e| e.to_string())?;
    for d in 1..=6 {
        let want = oracle.get(&d).copied().unwrap_or(0);
        ensure!(
            got.get(d) == BigUint::from(want),
            "pi_{d}(S2 v S2): {} vs Hilton {want}",
            got.get(d)
        );
    }
    ensure!(
        got.get(3) == BigUint::from(3u32),
        "pi_3(S2 v S2) rank {}",
        got.get(3)
    );
    Ok(())
}

// 4. Trivial open books with disk pages are rational spheres.
fn trivial_open_book() -> Outcome {
    for n in 2..=4usize {
        let spec = OpenBookSpec::new(
            2 * n + 1,
            SpaceModel::Contractible,
            Some(SpaceModel::Sphere(2 * n - 1)),
            MonodromyHypothesis::IdentityOnRationalHomotopy,
        );
        ensure!(validate_spec(&spec).is_empty(), "n={n}: spec rejected");
        let want = ranks(&[(2 * n + 1, 1)]);
        match classify_dichotomy(&spec, 40) {
            DichotomyVerdict::Elliptic { l, ranks: r } => {
                ensure!(l == 2 * n - 1, "n={n}: l = {l}");
                ensure!(r == want, "n={n}: verdict ranks {r}");
            }
            other => return Err(format!("n={n}: verdict {other:?}")),
        }
        let h = homotopy_ranks(&spec, 40).map_err(|e| e.to_string())?;
        ensure!(h == want, "n={n}: homotopy ranks {h}");
    }
    Ok(())
}

fn random_model(rng: &mut ChaCha8Rng, fibre: bool) -> SpaceModel {
    let lo = if fibre { 1 } else { 2 };
    let pick = rng.gen_range(0..if fibre { 2 } else { 4 });
    match (pick, fibre) {
        (0, _) => SpaceModel::Sphere(rng.gen_range(lo..=8)),
        (1, _) => {
            let count = rng.gen_range(2..=3);
            wedge(
                &(0..count)
                    .map(|_| rng.gen_range(lo..=5))
                    .collect::<Vec<_>>(),
            )
        }
        (2, false) => SpaceModel::Contractible,
        _ => {
            let pairs: Vec<(usize, u64)> = (0..rng.gen_range(1..=3))
                .map(|_| (rng.gen_range(2..=9), rng.gen_range(1..=2)))
                .collect();
            SpaceModel::EllipticRanks(ranks(&pairs))
        }
    }
}

// 5. Identity and finite-order monodromy give identical outputs.
fn variant_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let n = 30;
    for trial in 0..50 {
        let page = random_model(&mut rng, false);
        let fibre = random_model(&mut rng, true);
        let spec = OpenBookSpec::new(
            rng.gen_range(3..=20),
            page,
            Some(fibre),
            MonodromyHypothesis::IdentityOnRationalHomotopy,
        );
        ensure!(
            validate_spec(&spec).is_empty(),
            "trial {trial}: invalid spec {spec:?}"
        );
        let base = (
            openbook_loop_ranks(&spec, n),
            homotopy_ranks(&spec, n),
            classify_dichotomy(&spec, n),
        );
        ensure!(
            base.0.is_ok() && base.1.is_ok(),
            "trial {trial}: rank computation failed"
        );
        for m in [2u64, 3, 8] {
            let other = spec.with_monodromy(MonodromyHypothesis::finite_order(m, true));
            let got = (
                openbook_loop_ranks(&other, n),
                homotopy_ranks(&other, n),
                classify_dichotomy(&other, n),
            );
            ensure!(got == base, "trial {trial}, m={m}: outputs differ");
        }
    }
    Ok(())
}

// 6. Brieskorn pipeline.
fn brieskorn() -> Outcome {
    let b = BrieskornExponents::new(vec![3, 3, 3, 3], 3).map_err(|e| e.to_string())?;
    let mu = brieskorn_multiplicity(&b);
    ensure!(mu == BigUint::from(16u32), "mu = {mu}");
    let page = milnor_page(16, 3).map_err(|e| e.to_string())?;
    ensure!(!is_rationally_elliptic(&page), "page classified elliptic");
    let spec = milnor_openbook_spec(
        &b,
        MonodromyHypothesis::finite_order(2, true),
        Some(SpaceModel::Sphere(3)),
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        classify_dichotomy(&spec, 40)
            == DichotomyVerdict::Hyperbolic {
                reason: HyperbolicReason::PageHyperbolic
            },
        "open book verdict not page-hyperbolic"
    );
    let report = growth_estimate(&page, 40).map_err(|e| e.to_string())?;
    ensure!(
        report.classification == GrowthClass::Exponential,
        "growth not exponential"
    );
    let base = report.growth_base.ok_or("no growth base")?;
    ensure!((base - 4.0).abs() < 1e-9, "growth base {base}");

    let b = BrieskornExponents::new(vec![3, 2, 2, 2], 3).map_err(|e| e.to_string())?;
    let report = monodromy_constraint_report(&b);
    ensure!(
        report.multiplicity == BigUint::from(2u32),
        "mu = {}",
        report.multiplicity
    );
    ensure!(report.has_obstruction(), "no obstruction reported");
    let text = report.conclusions().join("\n");
    ensure!(
        text.contains("infinite order"),
        "missing the infinite-order disjunct"
    );
    ensure!(
        text.contains("non-nilpotently"),
        "missing the non-nilpotent disjunct"
    );
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> VariationMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    VariationMatrix::new(rows).expect("square")
}

/// Product of random elementary row operations, a permutation and sign
/// flips; unimodular by construction.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> VariationMatrix {
    let mut rows: Vec<Vec<BigInt>> = VariationMatrix::identity(n).rows().to_vec();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            let c = BigInt::from(rng.gen_range(-3..=3));
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x += &c * y;
            }
        }
    }
    rows.shuffle(rng);
    for row in rows.iter_mut() {
        if rng.gen_bool(0.5) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    VariationMatrix::new(rows).expect("square")
}

// 7. Kauffman criterion stable under boundary connected sum and base change.
fn kauffman_stability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for trial in 0..200 {
        let n = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, n);
        let det = a.determinant();
        ensure!(
            det == common::laplace_det(a.rows()),
            "trial {trial}: Bareiss vs cofactor"
        );
        let iso = variation_is_iso(&a);
        ensure!(
            iso == (det == BigInt::one() || det == -BigInt::one()),
            "trial {trial}: iso flag"
        );
        let doubled = boundary_connected_sum_variation(&a);
        ensure!(
            variation_is_iso(&doubled) == iso,
            "trial {trial}: diag(A,A) changes iso"
        );
        let u = random_unimodular(&mut rng, n);
        let w = random_unimodular(&mut rng, n);
        for m in [&u, &w] {
            let d = common::laplace_det(m.rows());
            ensure!(
                d == BigInt::one() || d == -BigInt::one(),
                "trial {trial}: U not unimodular"
            );
        }
        let changed = u
            .mul(&a)
            .and_then(|x| x.mul(&w))
            .map_err(|e| e.to_string())?;
        ensure!(
            variation_is_iso(&changed) == iso,
            "trial {trial}: base change changes iso"
        );
    }
    // a handful of known isomorphisms so the random sample is not all "false"
    for m in [
        VariationMatrix::identity(3),
        VariationMatrix::new(vec![vec![2, 1], vec![1, 1]]).unwrap(),
    ] {
        ensure!(
            variation_is_iso(&boundary_connected_sum_variation(&m)),
            "known iso lost"
        );
    }
    Ok(())
}

// 8. Elliptic models have stable total rank; wedges grow at the predicted rate.
fn finiteness() -> Outcome {
    let mut elliptic: Vec<SpaceModel> = vec![SpaceModel::Contractible];
    elliptic.extend((2..=20).map(SpaceModel::Sphere));
    elliptic.extend((2..=12).map(|n| wedge(&[n])));
    elliptic.push(SpaceModel::EllipticRanks(ranks(&[(3, 1), (5, 1), (7, 1)])));
    elliptic.push(SpaceModel::EllipticRanks(ranks(&[
        (2, 1),
        (3, 1),
        (4, 2),
        (7, 1),
    ])));
    for model in &elliptic {
        ensure!(
            is_rationally_elliptic(model),
            "{model} not classified elliptic"
        );
        let at40 = space_ranks(model, 40)
            .map_err(|e| e.to_string())?
            .total_rank();
        let at80 = space_ranks(model, 80)
            .map_err(|e| e.to_string())?
            .total_rank();
        ensure!(
            at40 == at80,
            "{model}: total rank {at40} at 40 vs {at80} at 80"
        );
    }
    // open books whose verdict is elliptic
    for (page, l) in [
        (SpaceModel::Contractible, 3usize),
        (SpaceModel::Sphere(4), 5),
        (SpaceModel::EllipticRanks(ranks(&[(3, 1)])), 2),
        (SpaceModel::Sphere(7), 9),
    ] {
        let spec = OpenBookSpec::new(
            11,
            page,
            Some(SpaceModel::Sphere(l)),
            MonodromyHypothesis::IdentityOnRationalHomotopy,
        );
        let (r40, r80) = match (classify_dichotomy(&spec, 40), classify_dichotomy(&spec, 80)) {
            (
                DichotomyVerdict::Elliptic { ranks: a, .. },
                DichotomyVerdict::Elliptic { ranks: b, .. },
            ) => (a, b),
            other => return Err(format!("expected elliptic verdicts, got {other:?}")),
        };
        ensure!(
            r40.total_rank() == r80.total_rank(),
            "open book total rank changes"
        );
    }

    let wedges: Vec<SpaceModel> = vec![
        wedge(&[2, 2]),
        wedge(&[2, 3]),
        wedge(&[3, 3]),
        wedge(&[2, 2, 2]),
        wedge(&[3, 3, 3]),
        wedge(&[2, 4]),
        wedge(&[3, 4]),
        wedge(&[4, 4]),
        wedge(&[4, 4, 4, 4]),
        wedge(&[3, 4, 4]),
        wedge(&[2, 2, 2, 2, 2]),
        SpaceModel::WedgeOfSpheres(Wedge::copies(3, 16)),
    ];
    for model in &wedges {
        ensure!(
            !is_rationally_elliptic(model),
            "{model} classified elliptic"
        );
        let report = growth_estimate(model, 40).map_err(|e| e.to_string())?;
        let base = report.growth_base.ok_or("missing growth base")?;
        let rate = report.window_rate(30, 40).ok_or("no growth window")?;
        ensure!(
            (rate / base - 1.0).abs() <= 0.05,
            "{model}: window rate {rate:.4} vs base {base:.4}"
        );
        ensure!(
            report.partial_sum(40) > report.partial_sum(30),
            "{model}: partial sums stall"
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "free Lie ranks on two degree-2 generators match Witt numbers",
            witt_ranks,
        ),
        ("PBW roundtrip on 100 random generator sets", pbw_roundtrip),
        (
            "classical sphere ranks and Hilton count for S^2 v S^2",
            sphere_ranks,
        ),
        (
            "trivial open books are rational (2n+1)-spheres",
            trivial_open_book,
        ),
        (
            "identity vs finite-order monodromy invariance",
            variant_invariance,
        ),
        ("Brieskorn pipeline", brieskorn),
        ("Kauffman criterion stability", kauffman_stability),
        ("ellipticity finiteness and wedge growth rate", finiteness),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
