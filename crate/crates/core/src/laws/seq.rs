//! Sequence-norm structure laws: the endpoint isometries and comparison
//! chain of the mixed norm, the inclusion transport between the φ-free and
//! φ-carrying multiple kinds, and the triviality divergence drivers.

use crate::budget::SearchBudget;
use crate::error::Result;
use crate::estimate::Witness;
use crate::exp::Exp;
use crate::gen;
use crate::par;
use crate::seqnorms::{
    mixed_norm_dual, mixed_norm_primal, strong_norm, weak_norm, VectorFamily,
};
use crate::spaces::{norming_functional, Functional, SpaceSpec};
use crate::summing::{
    check_triviality_at, estimate_norm, lhs_rhs, MultiIndexedFunctionals, SummingParams,
    SummingWitness,
};

use super::{CorpusOptions, LawReport};

/// Endpoint isometries `mx(q,q) = w,q` and `mx(∞,q) = ℓq`, plus the
/// comparison chain `weak ≤ dual-mixed ≤ primal-mixed ≤ strong`, per family.
pub fn endpoint_reports(fam: &VectorFamily, q: f64, seed: u64) -> Result<Vec<LawReport>> {
    let budget = SearchBudget::default().with_seed(seed);
    let qe = Exp::finite(q);
    let weak = weak_norm(fam, qe, budget)?;
    let strong = strong_norm(fam, qe);
    let at_q = mixed_norm_primal(fam, qe, qe, budget)?;
    let at_inf = mixed_norm_primal(fam, Exp::Inf, qe, budget)?;
    let instance = format!(
        "family of {} in l_{}^{}, q={q}",
        fam.len(),
        fam.space.exponent,
        fam.space.dim
    );
    let mut reports = vec![
        LawReport::exact_vs_exact(
            "endpoints",
            &format!("{instance}: mx(q,q) = weak"),
            seed,
            (at_q.value - weak.value).abs(),
            0.0,
            1e-6,
        ),
        LawReport::exact_vs_exact(
            "endpoints",
            &format!("{instance}: mx(inf,q) = strong"),
            seed,
            (at_inf.value - strong.value).abs(),
            0.0,
            1e-6,
        ),
    ];

    // Chain at a strict interior pair (s = 2q).
    let s = Exp::finite(2.0 * q);
    let primal = mixed_norm_primal(fam, s, qe, budget)?;
    let dual = mixed_norm_dual(fam, s, qe, budget)?;
    reports.push(LawReport::lower_vs_upper(
        "endpoints",
        &format!("{instance}: weak <= dual-mixed, s={}", 2.0 * q),
        seed,
        weak.value,
        dual.value,
        1e-9,
    ));
    reports.push(LawReport::lower_vs_upper(
        "endpoints",
        &format!("{instance}: dual-mixed <= primal-mixed, s={}", 2.0 * q),
        seed,
        dual.value,
        primal.value,
        1e-9,
    ));
    reports.push(LawReport::lower_vs_upper(
        "endpoints",
        &format!("{instance}: primal-mixed <= strong, s={}", 2.0 * q),
        seed,
        primal.value,
        strong.value,
        1e-9,
    ));
    Ok(reports)
}

pub fn run_endpoints(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let per_instance = par::map_indexed(opts.count, |i| {
        let seed = opts.seed.wrapping_add(i as u64);
        let dim = 2 + i % opts.dim.saturating_sub(1).max(1);
        let m = 1 + i % opts.m.max(1);
        let space = gen::corpus_space(i, dim);
        let fam = gen::gaussian_family(space, m, seed)?;
        let q = if i % 2 == 0 { 1.0 } else { 2.0 };
        endpoint_reports(&fam, q, seed)
    });
    let mut out = Vec::new();
    for group in per_instance {
        out.extend(group?);
    }
    Ok(out)
}

/// Inclusion transport: the best φ-free multiple witness induces a finite-r
/// witness via norming φ's; the evaluated identity is
/// `ratio_r · ‖(φ)‖_{w,r} = ratio_free`, and since the norming family has
/// weak-r norm ≥ 1 the induced ratio never exceeds the source ratio.
pub fn inclusion_report(
    t: &crate::tensors::MultilinearMap,
    p: f64,
    q_list: &[f64],
    r: Exp,
    seed: u64,
) -> Result<LawReport> {
    let budget = SearchBudget::default().with_seed(seed).with_m_max(2);
    let free_params = SummingParams::Multiple {
        p,
        q_list: q_list.to_vec(),
    };
    let r_params = SummingParams::MultipleR {
        p,
        q_list: q_list.to_vec(),
        r,
    };
    let free = estimate_norm(t, &free_params, budget)?;
    let witness = match &free.witness {
        Witness::Summing { witness } => witness.clone(),
        _ => unreachable!("estimate_norm returns a summing witness"),
    };

    // Induce the finite-r witness by attaching norming φ's.
    let outputs =
        crate::summing::output_family(t, &witness.x_families, false)?;
    let dims: Vec<usize> = witness.x_families.iter().map(VectorFamily::len).collect();
    let members: Vec<Functional> = outputs
        .members
        .iter()
        .map(|out| {
            if out.is_zero() {
                Functional::basis(t.codomain, 0, 1.0)
            } else {
                norming_functional(out)
            }
        })
        .collect();
    let induced = SummingWitness {
        x_families: witness.x_families.clone(),
        phis: Some(MultiIndexedFunctionals::new(t.codomain, dims, members)?),
        ratio: 0.0,
    };

    let (free_lhs, free_rhs) = lhs_rhs(t, &free_params, &witness, budget)?;
    let (r_lhs, r_rhs) = lhs_rhs(t, &r_params, &induced, budget)?;
    let phi_weak = induced
        .phis
        .as_ref()
        .expect("just attached")
        .weak_norm(r, budget)?;

    let scale = free_lhs.abs().max(1.0);
    // Identity: LHS values agree and the RHS gains exactly the φ factor.
    let identity_gap = (r_lhs - free_lhs)
        .abs()
        .max((r_rhs - free_rhs * phi_weak).abs());
    // Order: the induced finite-r ratio never exceeds the φ-free ratio.
    let ratio_free = if free_rhs > 0.0 { free_lhs / free_rhs } else { 0.0 };
    let ratio_r = if r_rhs > 0.0 { r_lhs / r_rhs } else { 0.0 };
    let order_margin = ratio_free + 1e-12 * (1.0 + ratio_free) - ratio_r;
    let margin = (1e-10 * scale - identity_gap).min(order_margin);

    let r_estimate = estimate_norm(t, &r_params, budget)?;
    let mut report = LawReport::transported_exact(
        "inclusion",
        &format!(
            "{}-linear, (p;q;r)=({p};{:?};{r}), induced witness",
            t.arity(),
            q_list
        ),
        seed,
        -margin,
        0.0,
        1e-9,
    );
    report.details = serde_json::json!({
        "ratio_free": ratio_free,
        "ratio_induced": ratio_r,
        "phi_weak_r_norm": phi_weak,
        "estimate_multiple": free.value,
        "estimate_multiple_r": r_estimate.value,
    });
    Ok(report)
}

pub fn run_inclusion(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let reports = par::map_indexed(opts.count, |i| {
        let seed = opts.seed.wrapping_add(i as u64);
        let dim = 2 + i % 2;
        let space = SpaceSpec::linf(dim);
        let codomain = if i % 2 == 0 {
            SpaceSpec::scalar()
        } else {
            SpaceSpec::lp(2.0, 2)
        };
        let t = gen::gaussian_tensor(vec![space, space], codomain, seed)?;
        inclusion_report(&t, 1.0, &[1.0, 1.0], Exp::finite(2.0), seed)
    });
    reports.into_iter().collect()
}

/// Triviality drivers: measured divergence exponent within 2% (relative) of
/// the defect δ.
pub fn triviality_report(
    t: &crate::tensors::MultilinearMap,
    params: &SummingParams,
    seed: u64,
) -> Result<LawReport> {
    let report = check_triviality_at(t, params, &[2, 4, 8, 16], SearchBudget::default())?;
    if report.zero_map {
        return Ok(LawReport::recorded(
            "triviality",
            "zero map: sole member of the trivial class, no divergence",
            seed,
            0.0,
        ));
    }
    let measured = report.measured_exponent.expect("nonzero map");
    let delta = report.predicted_exponent;
    let gap = (measured - delta).abs();
    Ok(LawReport::exact_vs_exact(
        "triviality",
        &format!(
            "{}: {} (delta={delta})",
            report.kind, report.violated_constraint
        ),
        seed,
        gap,
        0.0,
        0.02 * delta.abs(),
    )
    .with_details(serde_json::json!({
        "predicted": delta,
        "measured": measured,
        "ratios": report.ratios,
    })))
}

pub fn run_triviality(opts: &CorpusOptions, deltas: &[f64]) -> Result<Vec<LawReport>> {
    let mut out = Vec::new();
    for (d_idx, &delta) in deltas.iter().enumerate() {
        for i in 0..opts.count.clamp(1, 20) {
            let seed = opts.seed.wrapping_add((d_idx * 1000 + i) as u64);
            let q = 4.0;
            let r = 4.0;
            let p = 1.0 / (1.0 / q + 1.0 / r + delta);
            let params = SummingParams::AsLinearPqr {
                p,
                q,
                r: Exp::finite(r),
            };
            let dim = 2 + i % 2;
            let space = gen::corpus_space(i, dim);
            let t = gen::gaussian_tensor(vec![space], space, seed)?;
            out.push(triviality_report(&t, &params, seed)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_isometries_on_small_corpus() {
        let opts = CorpusOptions {
            count: 6,
            seed: 2,
            dim: 3,
            m: 3,
        };
        let reports = run_endpoints(&opts).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}: margin {}", r.instance, r.margin);
        }
    }

    #[test]
    fn inclusion_transport_small_corpus() {
        let opts = CorpusOptions {
            count: 5,
            seed: 4,
            dim: 3,
            m: 2,
        };
        let reports = run_inclusion(&opts).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}: margin {}", r.instance, r.margin);
        }
    }

    #[test]
    fn triviality_exponents_match() {
        let opts = CorpusOptions {
            count: 3,
            seed: 6,
            dim: 3,
            m: 2,
        };
        let reports = run_triviality(&opts, &[0.1, 0.25]).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}: margin {}", r.instance, r.margin);
        }
    }
}
