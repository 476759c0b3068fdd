//! Independent oracles for the optimization paths: exhaustive enumeration and
//! closed forms computed without touching the code they check.

use sumnorms::budget::SearchBudget;
use sumnorms::exp::Exp;
use sumnorms::gen;
use sumnorms::seqnorms::VectorFamily;
use sumnorms::spaces::{SpaceSpec, Vector};
use sumnorms::summing::{estimate_norm, lhs_rhs, SummingParams, SummingWitness};
use sumnorms::tensors::MultilinearMap;

/// All vectors with entries in {−1, 0, 1}, excluding zero.
fn ternary_patterns(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(dim as u32);
    for mask in 0..total {
        let mut rem = mask;
        let mut coords = Vec::with_capacity(dim);
        for _ in 0..dim {
            coords.push((rem % 3) as f64 - 1.0);
            rem /= 3;
        }
        if coords.iter().any(|&c| c != 0.0) {
            out.push(coords);
        }
    }
    out
}

/// Brute-force maximum of LHS/RHS for a linear map over all families drawn
/// from ternary sign patterns.
fn exhaustive_linear_ratio(u: &MultilinearMap, p: f64, q: f64, m: usize) -> f64 {
    let space = u.domain[0];
    let patterns = ternary_patterns(space.dim);
    let k = patterns.len();
    let mut best: f64 = 0.0;
    let mut idx = vec![0usize; m];
    let total = k.pow(m as u32);
    let budget = SearchBudget::default();
    for flat in 0..total {
        let mut rem = flat;
        for slot in idx.iter_mut() {
            *slot = rem % k;
            rem /= k;
        }
        let members: Vec<Vector> = idx
            .iter()
            .map(|&i| Vector::new(space, patterns[i].clone()).unwrap())
            .collect();
        let fam = VectorFamily::new(space, members).unwrap();
        let witness = SummingWitness {
            x_families: vec![fam],
            phis: None,
            ratio: 0.0,
        };
        let params = SummingParams::AsLinear { p, q };
        let (lhs, rhs) = lhs_rhs(u, &params, &witness, budget).unwrap();
        if rhs > 1e-12 {
            best = best.max(lhs / rhs);
        }
    }
    best
}

/// On ℓ∞^N domains the (1;1)-summing norm has the closed form Σ_i ‖u(e_i)‖,
/// attained by the canonical basis family. The exhaustive ternary-pattern
/// search must agree, and the block-ascent estimator must find it.
#[test]
fn linear_11_summing_matches_exhaustive_and_closed_form() {
    for seed in 0..6u64 {
        for n in [2usize, 3] {
            let space = SpaceSpec::linf(n);
            let codomain = SpaceSpec::lp(2.0, 2);
            let u = gen::gaussian_tensor(vec![space], codomain, seed).unwrap();

            let closed_form: f64 = (0..n)
                .map(|i| {
                    u.evaluate(&[Vector::basis(space, i)]).unwrap().norm()
                })
                .sum();
            let exhaustive = exhaustive_linear_ratio(&u, 1.0, 1.0, n);
            assert!(
                (exhaustive - closed_form).abs() <= 1e-9 * (1.0 + closed_form),
                "seed {seed}, N={n}: exhaustive {exhaustive} vs closed form {closed_form}"
            );

            let params = SummingParams::AsLinear { p: 1.0, q: 1.0 };
            let budget = SearchBudget::default().with_m_max(n).with_seed(seed);
            let est = estimate_norm(&u, &params, budget).unwrap();
            assert!(
                est.value <= exhaustive + 1e-9 * (1.0 + exhaustive),
                "estimate {} exceeds exhaustive {exhaustive}",
                est.value
            );
            assert!(
                (est.value - exhaustive).abs() <= 1e-9 * (1.0 + exhaustive),
                "seed {seed}, N={n}: estimate {} below exhaustive {exhaustive}",
                est.value
            );
        }
    }
}

/// The Rademacher-type witness certifies a ratio of at least 2 for the
/// identity on ℓ1², and the estimator reaches it.
#[test]
fn identity_l1_estimator_reaches_two() {
    let space = SpaceSpec::lp(1.0, 2);
    let u = MultilinearMap::new(vec![space], space, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
    let params = SummingParams::AsLinear { p: 1.0, q: 1.0 };
    let est = estimate_norm(&u, &params, SearchBudget::default().with_m_max(2)).unwrap();
    assert!(est.value >= 2.0 - 1e-9, "estimate {}", est.value);
}

/// Dense grid over the ℓ2 dual sphere as an independent weak-norm oracle,
/// small version (the acceptance suite runs the full 10^6-point oracle).
#[test]
fn weak_norm_ascent_matches_circle_grid() {
    use sumnorms::seqnorms::weak_norm;
    let space = SpaceSpec::lp(2.0, 2);
    for seed in 0..8u64 {
        let fam = gen::gaussian_family(space, 4, seed).unwrap();
        for p in [1.0, 2.0, 4.0] {
            let est = weak_norm(&fam, Exp::finite(p), SearchBudget::default()).unwrap();
            let grid = 200_000usize;
            let mut best: f64 = 0.0;
            for g in 0..grid {
                let theta = 2.0 * std::f64::consts::PI * g as f64 / grid as f64;
                let (c, s) = (theta.cos(), theta.sin());
                let mut acc = 0.0;
                for v in &fam.members {
                    let d = (c * v.coords[0] + s * v.coords[1]).abs();
                    acc += if p == 1.0 { d } else { d.powf(p) };
                }
                let val = if p == 1.0 { acc } else { acc.powf(1.0 / p) };
                best = best.max(val);
            }
            assert!(
                (est.value - best).abs() < 1e-3 * (1.0 + best),
                "seed {seed}, p={p}: ascent {} vs grid {best}",
                est.value
            );
            // The ascent value is itself a valid lower bound of the sup, so
            // it may exceed the grid only by the grid's resolution error.
            assert!(est.value >= best - 1e-3);
        }
    }
}
