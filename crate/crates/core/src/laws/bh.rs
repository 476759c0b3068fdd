//! The multilinear 2n/(n+1)-exponent inequality for scalar n-linear forms:
//! `(Σ_{j₁…jₙ} |T(x_{j₁}^{(1)},…,x_{jₙ}^{(n)})|^{2n/(n+1)})^{(n+1)/2n}
//!  ≤ C_n Π_k ‖(x_j^{(k)})‖_{w,1}`.
//!
//! No numeric C_n is asserted; corpus runs record the empirical maximum
//! ratio. What is asserted is the exponent structure: on the scaled
//! sign-tensor family with canonical basis inputs the ratio is flat in N at
//! the critical exponent and grows like `N^{n/p' − (n+1)/2}` below it.

use crate::budget::SearchBudget;
use crate::error::Result;
use crate::gen;
use crate::seqnorms::VectorFamily;
use crate::spaces::SpaceSpec;
use crate::summing::{lhs_rhs, SummingParams, SummingWitness};
use crate::tensors::MultilinearMap;

use super::{CorpusOptions, LawReport};

pub fn critical_exponent(n: usize) -> f64 {
    2.0 * n as f64 / (n as f64 + 1.0)
}

/// LHS and RHS of the inequality on explicit families, evaluated through the
/// multiple-summing machinery at exponent `2n/(n+1)` and weak exponent 1.
pub fn bh_ratio(t: &MultilinearMap, families: &[VectorFamily]) -> Result<(f64, f64)> {
    let n = t.arity();
    let params = SummingParams::Multiple {
        p: critical_exponent(n),
        q_list: vec![1.0; n],
    };
    let witness = SummingWitness {
        x_families: families.to_vec(),
        phis: None,
        ratio: 0.0,
    };
    lhs_rhs(t, &params, &witness, SearchBudget::default())
}

/// Records the ratio of one instance; the constant is empirical, so there is
/// no assertion to fail.
pub fn bh_empirical_report(
    t: &MultilinearMap,
    families: &[VectorFamily],
    seed: u64,
) -> Result<LawReport> {
    let (lhs, rhs) = bh_ratio(t, families)?;
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    let instance = format!(
        "{}-linear form, N={}, m={}",
        t.arity(),
        t.domain[0].dim,
        families[0].len()
    );
    Ok(LawReport::recorded("bh", &instance, seed, ratio).with_details(serde_json::json!({
        "lhs": lhs,
        "rhs": rhs,
        "exponent": critical_exponent(t.arity()),
    })))
}

/// Exponent-structure check on the designed family: sign tensors scaled by
/// `N^{-(n+1)/2}` with canonical basis inputs. At the critical exponent the
/// log-log slope of the ratio in N is 0; at `p' = 1` it is `n − (n+1)/2`.
/// Both slopes are measured through the general evaluator and compared to
/// the closed forms.
pub fn bh_designed_family_report(n: usize, dims: &[usize], seed: u64) -> Result<Vec<LawReport>> {
    let p_star = critical_exponent(n);
    let p_low = 1.0;
    let mut at_star = Vec::new();
    let mut at_low = Vec::new();
    for &big_n in dims {
        let space = SpaceSpec::linf(big_n);
        let raw = gen::sign_tensor(vec![space; n], SpaceSpec::scalar(), seed)?;
        let scale = (big_n as f64).powf(-(n as f64 + 1.0) / 2.0);
        let t = raw.scale(scale);
        let families: Vec<VectorFamily> = (0..n)
            .map(|_| gen::basis_family(space, big_n))
            .collect::<Result<Vec<_>>>()?;
        for (p_val, bucket) in [(p_star, &mut at_star), (p_low, &mut at_low)] {
            let params = SummingParams::Multiple {
                p: p_val,
                q_list: vec![1.0; n],
            };
            let witness = SummingWitness {
                x_families: families.clone(),
                phis: None,
                ratio: 0.0,
            };
            let (lhs, rhs) = lhs_rhs(&t, &params, &witness, SearchBudget::default())?;
            bucket.push((big_n, lhs / rhs));
        }
    }

    let slope_star = loglog_slope(&at_star);
    let slope_low = loglog_slope(&at_low);
    let predicted_low = n as f64 / p_low - (n as f64 + 1.0) / 2.0;

    let flat = LawReport::exact_vs_exact(
        "bh",
        &format!("designed family, n={n}, slope at critical exponent"),
        seed,
        slope_star.abs(),
        0.0,
        1e-9,
    )
    .with_details(serde_json::json!({ "ratios": at_star, "exponent": p_star }));
    let growing = LawReport::exact_vs_exact(
        "bh",
        &format!("designed family, n={n}, slope below critical exponent"),
        seed,
        (slope_low - predicted_low).abs(),
        0.0,
        1e-9,
    )
    .with_details(serde_json::json!({
        "ratios": at_low,
        "exponent": p_low,
        "predicted_slope": predicted_low,
        "measured_slope": slope_low,
    }));
    Ok(vec![flat, growing])
}

fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, r)| *r > 0.0)
        .map(|(n, r)| ((*n as f64).ln(), r.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Corpus: the designed-family assertions for n ∈ {2, 3}, plus recorded
/// empirical ratios over random sign tensors.
pub fn run_bh(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let mut reports = Vec::new();
    let dims: Vec<usize> = (2..=opts.dim.max(3)).collect();
    for n in [2usize, 3] {
        reports.extend(bh_designed_family_report(n, &dims, opts.seed)?);
    }
    let n = 3usize;
    let mut max_ratio: f64 = 0.0;
    for i in 0..opts.count {
        let big_n = dims[i % dims.len()].min(6);
        let space = SpaceSpec::linf(big_n);
        let seed = opts.seed.wrapping_add(100 + i as u64);
        let t = gen::sign_tensor(vec![space; n], SpaceSpec::scalar(), seed)?;
        let families: Vec<VectorFamily> = (0..n)
            .map(|_| gen::basis_family(space, big_n))
            .collect::<Result<Vec<_>>>()?;
        let report = bh_empirical_report(&t, &families, seed)?;
        max_ratio = max_ratio.max(report.lhs);
        reports.push(report);
    }
    reports.push(
        LawReport::recorded(
            "bh",
            &format!("empirical max ratio over {} sign tensors, n={n}", opts.count),
            opts.seed,
            max_ratio,
        )
        .with_details(serde_json::json!({ "normalized_by": "product of weak-1 norms" })),
    );
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_reduces_to_littlewood_at_n2() {
        assert!((critical_exponent(2) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn product_form_with_basis_inputs_ratio_one() {
        // n-fold product form on 1-dimensional spaces: LHS = 1, RHS = 1.
        let one = SpaceSpec::scalar();
        let t = MultilinearMap::scalar_form(vec![one, one, one], vec![1.0]).unwrap();
        let fam = gen::basis_family(one, 1).unwrap();
        let (lhs, rhs) = bh_ratio(&t, &[fam.clone(), fam.clone(), fam]).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn designed_family_slopes() {
        let reports = bh_designed_family_report(2, &[2, 3, 4, 5], 11).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}: margin {}", r.instance, r.margin);
        }
    }

    #[test]
    fn empirical_reruns_reproduce() {
        let opts = CorpusOptions {
            count: 5,
            seed: 13,
            dim: 4,
            m: 3,
        };
        let a = run_bh(&opts).unwrap();
        let b = run_bh(&opts).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }
}
