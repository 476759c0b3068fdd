//! The 4/3 inequality for bilinear forms on ℓ∞^N × ℓ∞^N:
//! `(Σ_{i,j} |T(e_i,e_j)|^{4/3})^{3/4} ≤ √2 ‖T‖`.

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::estimate::EstimateKind;
use crate::exp::{lp_norm, Exp};
use crate::gen;
use crate::par;
use crate::tensors::{op_norm, MultilinearMap};

use super::{CorpusOptions, LawReport};

pub const LITTLEWOOD_EXPONENT: f64 = 4.0 / 3.0;

/// Checks one bilinear scalar form. In exhaustive mode both sides are exact;
/// otherwise the operator norm is a lower bound and an exceedance is reported
/// as inconclusive, never as a violation.
pub fn littlewood_43(t: &MultilinearMap, exhaustive: bool, seed: u64) -> Result<LawReport> {
    if t.arity() != 2 || !t.is_scalar() {
        return Err(Error::InvalidFamily(
            "littlewood_43 takes a bilinear scalar form".into(),
        ));
    }
    if t.domain.iter().any(|s| !s.exponent.is_inf()) {
        return Err(Error::SpaceMismatch(
            "littlewood_43 is stated on l-infinity domains".into(),
        ));
    }
    let lhs = lp_norm(t.coeffs.iter().copied(), Exp::finite(LITTLEWOOD_EXPONENT));
    let norm = op_norm(t, SearchBudget::op_norm_default().with_seed(seed));
    let rhs = 2.0f64.sqrt() * norm.value;
    let instance = format!("bilinear form on linf^{}", t.domain[0].dim);
    let report = if exhaustive {
        if norm.kind != EstimateKind::Exact {
            return Err(Error::InvalidFamily(format!(
                "exhaustive mode needs enumerable domains (N = {} exceeds the cap?)",
                t.domain[0].dim
            )));
        }
        LawReport::exact_vs_exact("littlewood43", &instance, seed, lhs, rhs, 1e-9)
    } else {
        LawReport::exact_vs_lower_rhs("littlewood43", &instance, seed, lhs, rhs, 1e-9)
    };
    Ok(report.with_details(serde_json::json!({
        "coefficient_norm_4_3": lhs,
        "op_norm": norm.value,
        "op_norm_kind": norm.kind,
        "ratio": if norm.value > 0.0 { lhs / norm.value } else { 0.0 },
        "sqrt2": 2.0f64.sqrt(),
    })))
}

/// Seeded corpus: random sign and Gaussian forms plus the identity and
/// Fourier forms, exhaustive mode, N from 2 up to `opts.dim`.
pub fn run_littlewood(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let dims: Vec<usize> = (2..=opts.dim.max(2)).collect();
    let mut structured = Vec::new();
    for &n in &dims {
        structured.push(gen::diagonal_form(2, n)?);
        structured.push(gen::fourier_tensor(2, n)?);
    }
    let random_count = opts.count;
    let total = structured.len() + random_count;
    let reports = par::map_indexed(total, |i| {
        if i < structured.len() {
            littlewood_43(&structured[i], true, opts.seed)
        } else {
            let j = i - structured.len();
            let n = dims[j % dims.len()];
            let space = crate::spaces::SpaceSpec::linf(n);
            let seed = opts.seed.wrapping_add(1 + j as u64);
            let t = if j % 2 == 0 {
                gen::sign_tensor(vec![space, space], crate::spaces::SpaceSpec::scalar(), seed)
            } else {
                gen::gaussian_tensor(vec![space, space], crate::spaces::SpaceSpec::scalar(), seed)
            }?;
            littlewood_43(&t, true, seed)
        }
    });
    reports.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_form_n4() {
        // LHS = (4·1)^{3/4} ≈ 2.828, ‖T‖ = 4, ratio 4^{-1/4} ≤ √2.
        let t = gen::diagonal_form(2, 4).unwrap();
        let report = littlewood_43(&t, true, 0).unwrap();
        assert!(report.passed());
        assert!((report.lhs - 4.0f64.powf(0.75)).abs() < 1e-12);
        let details = report.details.as_object().unwrap();
        assert!((details["op_norm"].as_f64().unwrap() - 4.0).abs() < 1e-12);
        let ratio = details["ratio"].as_f64().unwrap();
        assert!((ratio - 4.0f64.powf(-0.25)).abs() < 1e-12);
    }

    #[test]
    fn rank_one_form_ratio_one() {
        // T = e₁* ⊗ e₁*: LHS = 1, ‖T‖ = 1.
        let space = crate::spaces::SpaceSpec::linf(3);
        let mut coeffs = vec![0.0; 9];
        coeffs[0] = 1.0;
        let t = MultilinearMap::scalar_form(vec![space, space], coeffs).unwrap();
        let report = littlewood_43(&t, true, 0).unwrap();
        assert!(report.passed());
        assert!((report.lhs - 1.0).abs() < 1e-12);
        let details = report.details.as_object().unwrap();
        assert!((details["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extremal_sign_form_attains_sqrt2() {
        // T = [[1,1],[1,-1]]: LHS = 4^{3/4} = 2√2, ‖T‖ = 2: ratio exactly √2.
        let space = crate::spaces::SpaceSpec::linf(2);
        let t =
            MultilinearMap::scalar_form(vec![space, space], vec![1.0, 1.0, 1.0, -1.0]).unwrap();
        let report = littlewood_43(&t, true, 0).unwrap();
        assert!(report.passed(), "margin {}", report.margin);
        let details = report.details.as_object().unwrap();
        let ratio = details["ratio"].as_f64().unwrap();
        assert!((ratio - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_corpus_zero_violations() {
        let opts = CorpusOptions {
            count: 20,
            seed: 3,
            dim: 5,
            m: 3,
        };
        let reports = run_littlewood(&opts).unwrap();
        assert!(reports.iter().all(LawReport::passed));
    }
}
