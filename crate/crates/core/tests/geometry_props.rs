mod common;

use foxwright::exec::Execution;
use foxwright::geometry::{
    subordinating_check_with, verify_property, verify_property_with, DiscGrid, PropertyKind,
};
use foxwright::params::FWParams;
use foxwright::series::{FoxWrightSeries, Polynomial, SeriesControl};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coarse() -> DiscGrid {
    DiscGrid::geometric(16, 64, 0.05, 0.995).unwrap()
}

fn series(p: FWParams) -> FoxWrightSeries {
    FoxWrightSeries::new(p, SeriesControl::default(), 0.995).unwrap()
}

/// Upper values small against lower values, so the function stays near `z`
/// often enough for the implication premises to fire.
fn tame() -> impl Strategy<Value = FWParams> {
    (
        prop::collection::vec((0.1..3.0f64, 0.2..2.0f64), 0..=2),
        prop::collection::vec((1.0..10.0f64, 0.5..3.0f64), 1..=3),
    )
        .prop_map(|(u, l)| FWParams::new(u, l).unwrap())
        .prop_filter("entire", |p| p.delta() > -0.5)
}

fn kind() -> impl Strategy<Value = PropertyKind> {
    prop_oneof![
        Just(PropertyKind::Starlike),
        Just(PropertyKind::Convex),
        Just(PropertyKind::CloseToConvexLog),
        Just(PropertyKind::ReOverZ(0.5)),
        Just(PropertyKind::DerivDist(1.0)),
        Just(PropertyKind::RatioDist(2.0 / 5f64.sqrt())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smaller_disc_has_larger_margin(p in tame(), k in kind()) {
        let f = series(p);
        let g = coarse();
        let (Ok(whole), Ok(half)) = (verify_property(&f, k, &g, 1.0), verify_property(&f, k, &g, 0.5)) else {
            return Ok(());
        };
        prop_assert!(half.min_margin >= whole.min_margin);
        prop_assert!(!whole.pass || half.pass);
    }

    #[test]
    fn derivative_bound_implies_convex_in_half_disc(p in tame()) {
        let f = series(p);
        let g = coarse();
        if verify_property(&f, PropertyKind::DerivDist(1.0), &g, 1.0).unwrap().pass {
            prop_assert!(verify_property(&f, PropertyKind::Convex, &g, 0.5).unwrap().pass);
        }
    }

    #[test]
    fn unit_ratio_bound_implies_starlike_in_half_disc(p in tame()) {
        let f = series(p);
        let g = coarse();
        if verify_property(&f, PropertyKind::RatioDist(1.0), &g, 1.0).unwrap().pass {
            prop_assert!(verify_property(&f, PropertyKind::Starlike, &g, 0.5).unwrap().pass);
        }
    }

    #[test]
    fn execution_modes_agree_bitwise(p in tame(), k in kind()) {
        let f = series(p);
        let g = coarse();
        let a = verify_property_with(&f, k, &g, 1.0, Execution::Sequential);
        let b = verify_property_with(&f, k, &g, 1.0, Execution::Parallel);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.min_margin.to_bits(), b.min_margin.to_bits());
                prop_assert_eq!(a.witness, b.witness);
                prop_assert_eq!(a.points_skipped, b.points_skipped);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a.to_string(), b.to_string()),
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }
}

#[test]
fn ratio_bound_below_two_over_sqrt5_does_not_give_starlikeness() {
    let g = DiscGrid::default();
    let c = 2.0 / 5f64.sqrt();
    // |f/z - 1| = 0.8|z| < 2/√5, yet f' vanishes at z = -0.625
    let quad = Polynomial::new(vec![1.0, 0.8]);
    assert!(
        verify_property(&quad, PropertyKind::RatioDist(c), &g, 1.0)
            .unwrap()
            .pass
    );
    let r = verify_property(&quad, PropertyKind::Starlike, &g, 1.0).unwrap();
    assert!(!r.pass && r.witness.re < 0.0 && r.witness.im == 0.0);

    // same failure inside the Fox-Wright family
    let p = FWParams::new(
        [(1.7286008685338983, 1.153930889480067)],
        [(1.5673554714030347, 1.664199335539752)],
    )
    .unwrap();
    let f = series(p);
    assert!(
        verify_property(&f, PropertyKind::RatioDist(c), &g, 1.0)
            .unwrap()
            .pass
    );
    let r = verify_property(&f, PropertyKind::Starlike, &g, 1.0).unwrap();
    assert!(!r.pass);
    assert!(
        (r.min_margin + 0.023092582643258986).abs() < 1e-9,
        "{}",
        r.min_margin
    );
}

#[test]
fn theorem_hypotheses_imply_sampled_conclusions() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let g = coarse();
    for _ in 0..15 {
        let p = common::t1_case1(&mut rng);
        let r =
            verify_property(&series(p.clone()), PropertyKind::CloseToConvexLog, &g, 1.0).unwrap();
        assert!(r.pass, "{p}: {r}");

        let p = common::t3(&mut rng);
        let aug = p.with_unit_upper().unwrap();
        let r = verify_property(&series(aug), PropertyKind::ReOverZ(0.5), &g, 1.0).unwrap();
        assert!(r.pass, "{p}: {r}");
    }
}

#[test]
fn refinement_moves_margin_little() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let g = DiscGrid::default();
    let fine = g.refined();
    type Sampler = fn(&mut ChaCha8Rng) -> FWParams;
    let cases: [(Sampler, PropertyKind, bool); 5] = [
        (common::t1_case1, PropertyKind::CloseToConvexLog, false),
        (common::t1_case2, PropertyKind::CloseToConvexLog, false),
        (common::t1_case3, PropertyKind::CloseToConvexLog, false),
        (common::t2, PropertyKind::Starlike, false),
        (common::t3, PropertyKind::ReOverZ(0.5), true),
    ];
    for (draw, k, augment) in cases {
        for _ in 0..5 {
            let mut p = draw(&mut rng);
            if augment {
                p = p.with_unit_upper().unwrap();
            }
            let f = series(p.clone());
            let a = verify_property(&f, k, &g, 1.0).unwrap();
            let b = verify_property(&f, k, &fine, 1.0).unwrap();
            assert!(
                (a.min_margin - b.min_margin).abs() < 1e-3,
                "{p}: {} vs {}",
                a.min_margin,
                b.min_margin
            );
        }
    }
}

#[test]
fn identity_passes_everything() {
    let z = Polynomial::new(vec![1.0]);
    for k in [
        PropertyKind::Starlike,
        PropertyKind::Convex,
        PropertyKind::CloseToConvexLog,
        PropertyKind::ReOverZ(0.5),
    ] {
        let r = verify_property(&z, k, &coarse(), 1.0).unwrap();
        assert!(r.pass, "{k}: {r}");
    }
}

#[test]
fn koebe_like_quadratic_fails_convexity_on_the_axis() {
    // z + z^2/2 is starlike but f'(-1) = 0, so convexity breaks at the rim
    let f = Polynomial::new(vec![1.0, 0.5]);
    let g = DiscGrid::default();
    assert!(
        verify_property(&f, PropertyKind::Starlike, &g, 1.0)
            .unwrap()
            .pass
    );
    let r = verify_property(&f, PropertyKind::Convex, &g, 1.0).unwrap();
    assert!(!r.pass);
    assert_eq!(r.witness.im, 0.0);
    assert!(r.witness.re < 0.0);
}

#[test]
fn wilf_test_on_harmonic_sequence() {
    // α_k = 1/(k+1): 1 + 2Σ z^k/(k+1) has positive real part in the disc
    let seq: Vec<f64> = (1..=200).map(|k| 1.0 / (k + 1) as f64).collect();
    let g = coarse();
    for exec in [Execution::Sequential, Execution::Parallel] {
        assert!(subordinating_check_with(&seq, &g, 200, exec).unwrap().pass);
    }
    let bad: Vec<f64> = (1..=200).map(|_| 1.0).collect();
    assert!(
        !subordinating_check_with(&bad, &g, 200, Execution::Sequential)
            .unwrap()
            .pass
    );
}

#[test]
fn property_kind_text_round_trips() {
    for k in [
        PropertyKind::Starlike,
        PropertyKind::Convex,
        PropertyKind::StarlikeOrder(0.25),
        PropertyKind::ConvexOrder(0.5),
        PropertyKind::CloseToConvexLog,
        PropertyKind::ReOverZ(0.5),
        PropertyKind::DerivDist(1.0),
        PropertyKind::RatioDist(0.75),
    ] {
        assert_eq!(k.to_string().parse::<PropertyKind>().unwrap(), k);
    }
}
