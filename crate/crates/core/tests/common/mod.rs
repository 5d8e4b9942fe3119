#![allow(dead_code)]

use foxwright::criteria::{check_theorem, CriterionId, Overall};
use foxwright::gamma::gamma_min_abscissa;
use foxwright::params::FWParams;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Draws from `draw` until the criterion's hypotheses hold.
fn satisfying(
    rng: &mut ChaCha8Rng,
    id: CriterionId,
    draw: impl Fn(&mut ChaCha8Rng) -> FWParams,
) -> FWParams {
    for _ in 0..10_000 {
        let p = draw(rng);
        if check_theorem(id, &p, false).unwrap().overall == Overall::Pass {
            return p;
        }
    }
    panic!("no parameter set satisfying {id} found");
}

/// `a_i <= b_i`, `A_i = B_i`, all in `(0, 10]`.
pub fn t1_case1(rng: &mut ChaCha8Rng) -> FWParams {
    satisfying(rng, CriterionId::T1Case1, |rng| {
        let p = rng.gen_range(1..=3);
        let mut up = Vec::new();
        let mut lo = Vec::new();
        for _ in 0..p {
            let a = uniform(rng, 0.01, 10.0);
            let w = uniform(rng, 0.01, 10.0);
            up.push((a, w));
            lo.push((uniform(rng, a, 10.0), w));
        }
        FWParams::new(up, lo).unwrap()
    })
}

/// `a_i <= b_i`, `A_i <= B_i`, `b_i > x*`.
pub fn t1_case2(rng: &mut ChaCha8Rng) -> FWParams {
    let x = gamma_min_abscissa();
    satisfying(rng, CriterionId::T1Case2, move |rng| {
        let p = rng.gen_range(1..=3);
        let mut up = Vec::new();
        let mut lo = Vec::new();
        for _ in 0..p {
            let a = uniform(rng, 0.01, 10.0);
            let aw = uniform(rng, 0.01, 10.0);
            up.push((a, aw));
            lo.push((uniform(rng, a.max(x) + 1e-9, 10.0), uniform(rng, aw, 10.0)));
        }
        FWParams::new(up, lo).unwrap()
    })
}

/// One upper pair `(a, 1)`, `b_j > max(a, x*)`, `B_j >= 1`, and the gamma
/// product condition.
pub fn t1_case3(rng: &mut ChaCha8Rng) -> FWParams {
    let x = gamma_min_abscissa();
    satisfying(rng, CriterionId::T1Case3, move |rng| {
        let q = rng.gen_range(1..=3);
        let a = uniform(rng, 0.01, 9.9);
        let lo: Vec<(f64, f64)> = (0..q)
            .map(|_| (uniform(rng, a.max(x) + 1e-9, 10.0), uniform(rng, 1.0, 10.0)))
            .collect();
        FWParams::new([(a, 1.0)], lo).unwrap()
    })
}

/// One upper pair `(a, 1)` with `a >= 1`, `b_j >= 2a`, `B_j >= 2`, and the
/// gamma product condition.
pub fn t2(rng: &mut ChaCha8Rng) -> FWParams {
    satisfying(rng, CriterionId::T2, |rng| {
        let q = rng.gen_range(1..=3);
        let a = uniform(rng, 1.0, 5.0);
        let lo: Vec<(f64, f64)> = (0..q)
            .map(|_| (uniform(rng, 2.0 * a, 10.0), uniform(rng, 2.0, 10.0)))
            .collect();
        FWParams::new([(a, 1.0)], lo).unwrap()
    })
}

/// `b_i > a_i`, `A_i = B_i`.
pub fn t3(rng: &mut ChaCha8Rng) -> FWParams {
    satisfying(rng, CriterionId::T3, |rng| {
        let p = rng.gen_range(1..=3);
        let mut up = Vec::new();
        let mut lo = Vec::new();
        for _ in 0..p {
            let a = uniform(rng, 0.01, 9.9);
            let w = uniform(rng, 0.01, 10.0);
            up.push((a, w));
            lo.push((uniform(rng, a + 1e-9, 10.0), w));
        }
        FWParams::new(up, lo).unwrap()
    })
}

/// `p = q = 2`, `ΣA = ΣB`, `min(a_i/A_i) >= 1`, everything in `(0, 10]`.
pub fn balanced_pair_set(rng: &mut ChaCha8Rng) -> FWParams {
    let aw = [uniform(rng, 0.01, 10.0), uniform(rng, 0.01, 10.0)];
    let total = aw[0] + aw[1];
    let b1w = uniform(rng, (total - 10.0).max(0.0) + 1e-6, total.min(10.0) - 1e-6);
    let bw = [b1w, total - b1w];
    let up = [
        (uniform(rng, aw[0], 10.0), aw[0]),
        (uniform(rng, aw[1], 10.0), aw[1]),
    ];
    let lo = [
        (uniform(rng, 0.01, 10.0), bw[0]),
        (uniform(rng, 0.01, 10.0), bw[1]),
    ];
    FWParams::new(up, lo).unwrap()
}

/// Random parameters with `Δ > -1` (entire) and `p, q <= 3`.
pub fn entire_set(rng: &mut ChaCha8Rng) -> FWParams {
    loop {
        let p = rng.gen_range(0..=3);
        let q = rng.gen_range(0..=3);
        let up: Vec<(f64, f64)> = (0..p)
            .map(|_| (uniform(rng, 0.1, 10.0), uniform(rng, 0.1, 3.0)))
            .collect();
        let lo: Vec<(f64, f64)> = (0..q)
            .map(|_| (uniform(rng, 0.1, 10.0), uniform(rng, 0.1, 3.0)))
            .collect();
        let params = FWParams::new(up, lo).unwrap();
        if params.delta() > -0.9 {
            return params;
        }
    }
}
