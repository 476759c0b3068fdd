//! The quotient identity for multiple mixing maps: compositions with
//! s-summing operators are multiple summing, with
//! `‖u∘A‖_{(q;p₁,…,pₙ)} ≤ π_s(u) ‖A‖_{mx(s,q;p₁,…,pₙ)}`.
//!
//! Forward direction: rank-one `u = ψ ⊗ y₀` has the closed form
//! `π_s(u) = ‖ψ‖·‖y₀‖`, and on any witness the composed LHS equals exactly
//! `π_s(u)` times the Maurey functional of the point mass at ψ/‖ψ‖ — a lower
//! bound of the mixed norm of the outputs — so the inequality is checked as
//! exact-vs-upper against the primal mixed bound.
//!
//! Backward direction: `S(y) = (φ_j(y))_j : F → ℓ_s^k` built from any φ-list
//! satisfies the evaluated summing bound `π_s(S) ≤ ‖(φ_j)‖_s` on every test
//! family, and the φ-list functional coincides exactly with the multiple
//! (q;p)-LHS of `S∘A` on the same data.

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exp::{lp_norm, Exp};
use crate::gen;
use crate::par;
use crate::rng;
use crate::seqnorms::{mixed_norm_primal, weak_norm, DiscreteMeasure, VectorFamily};
use crate::spaces::{gaussian_coords, Functional, SpaceSpec, Vector};
use crate::summing::{lhs_rhs, output_family, SummingParams, SummingWitness};
use crate::tensors::MultilinearMap;

use super::{CorpusOptions, LawReport};

/// `u∘A` for the rank-one operator `u = ψ ⊗ y₀ : F → G`.
pub fn compose_rank_one(
    a_map: &MultilinearMap,
    psi: &Functional,
    y0: &Vector,
) -> Result<MultilinearMap> {
    if psi.space.dim != a_map.codomain.dim {
        return Err(Error::DimensionMismatch {
            expected: a_map.codomain.dim,
            got: psi.space.dim,
        });
    }
    let nf = a_map.codomain.dim;
    let ng = y0.space.dim;
    let boxes = a_map.coeffs.len() / nf;
    let mut coeffs = vec![0.0; boxes * ng];
    for b in 0..boxes {
        let scalar: f64 = (0..nf)
            .map(|f| psi.coords[f] * a_map.coeffs[b * nf + f])
            .sum();
        for g in 0..ng {
            coeffs[b * ng + g] = scalar * y0.coords[g];
        }
    }
    MultilinearMap::new(a_map.domain.clone(), y0.space, coeffs)
}

/// `S∘A` where `S(y) = (φ_j(y))_{j=1}^k : F → ℓ_s^k`.
pub fn compose_philist(
    a_map: &MultilinearMap,
    phis: &[Functional],
    s: f64,
) -> Result<MultilinearMap> {
    let k = phis.len();
    let nf = a_map.codomain.dim;
    let boxes = a_map.coeffs.len() / nf;
    let codomain = SpaceSpec::lp(s, k);
    let mut coeffs = vec![0.0; boxes * k];
    for b in 0..boxes {
        for (j, phi) in phis.iter().enumerate() {
            coeffs[b * k + j] = (0..nf)
                .map(|f| phi.coords[f] * a_map.coeffs[b * nf + f])
                .sum();
        }
    }
    MultilinearMap::new(a_map.domain.clone(), codomain, coeffs)
}

/// Runs both directions for one instance; margin is the worst sub-assertion.
#[allow(clippy::too_many_arguments)]
pub fn quotient_theorem(
    a_map: &MultilinearMap,
    psi: &Functional,
    y0: &Vector,
    s: f64,
    q: f64,
    p_list: &[f64],
    m: usize,
    seed: u64,
) -> Result<LawReport> {
    let budget = SearchBudget::default().with_seed(seed);
    let n = a_map.arity();
    let mut rng = rng::seeded(seed ^ 0x714f);

    let x_families: Vec<VectorFamily> = a_map
        .domain
        .iter()
        .map(|&space| {
            let members = (0..m)
                .map(|_| Vector::new(space, gaussian_coords(&mut rng, space.dim)))
                .collect::<Result<Vec<_>>>()?;
            VectorFamily::new(space, members)
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = SummingWitness {
        x_families: x_families.clone(),
        phis: None,
        ratio: 0.0,
    };
    let mas_params = SummingParams::Multiple {
        p: q,
        q_list: p_list.to_vec(),
    };

    // Forward (rank-one u): exact identity and the (ggs) chain.
    let ua = compose_rank_one(a_map, psi, y0)?;
    let (lhs_ua, _) = lhs_rhs(&ua, &mas_params, &witness, budget)?;
    let pi_s = psi.dual_norm() * y0.norm();
    let outputs = output_family(a_map, &x_families, false)?;

    let scale_val = lhs_ua.abs().max(1.0);
    let (identity_gap, ggs_margin) = if pi_s == 0.0 {
        // u = 0: both sides vanish.
        (lhs_ua.abs(), 1e-12 * scale_val)
    } else {
        let point_mass = DiscreteMeasure::new(
            vec![psi.scale(1.0 / psi.dual_norm())],
            vec![1.0],
        )?;
        let maurey_at_point = point_mass.maurey_value(&outputs, s, q);
        let identity_gap = (lhs_ua - pi_s * maurey_at_point).abs();
        let mixed_upper = mixed_norm_primal(&outputs, Exp::finite(s), Exp::finite(q), budget)?;
        let ggs_margin = pi_s * mixed_upper.value + 1e-9 * scale_val - lhs_ua;
        (identity_gap, ggs_margin)
    };

    // Backward (pp9): S from a seeded φ-list normalized to ‖(φ_j)‖_s = 1.
    let k = m + 1;
    let mut phis: Vec<Functional> = (0..k)
        .map(|_| Functional::new(a_map.codomain, gaussian_coords(&mut rng, a_map.codomain.dim)))
        .collect::<Result<Vec<_>>>()?;
    let total_s: f64 = phis.iter().map(|p| p.dual_norm().powf(s)).sum();
    if total_s > 0.0 {
        let c = total_s.powf(-1.0 / s);
        for p in phis.iter_mut() {
            *p = p.scale(c);
        }
    }
    let phi_s_norm = lp_norm(phis.iter().map(Functional::dual_norm), Exp::finite(s));

    // π_s-witness bound for S on a fresh family in F.
    let y_members = (0..m)
        .map(|_| Vector::new(a_map.codomain, gaussian_coords(&mut rng, a_map.codomain.dim)))
        .collect::<Result<Vec<_>>>()?;
    let y_fam = VectorFamily::new(a_map.codomain, y_members)?;
    let s_lhs = lp_norm(
        y_fam.members.iter().map(|y| {
            lp_norm(phis.iter().map(|phi| phi.apply(y)), Exp::finite(s))
        }),
        Exp::finite(s),
    );
    let y_weak = weak_norm(&y_fam, Exp::finite(s), budget)?.value;
    let pi_s_margin = phi_s_norm * y_weak + 1e-12 * (1.0 + s_lhs.abs()) - s_lhs;

    // (jj) identity: the φ-list functional equals the multiple (q;p)-LHS of
    // S∘A on the same families.
    let sa = compose_philist(a_map, &phis, s)?;
    let (sa_lhs, _) = lhs_rhs(&sa, &mas_params, &witness, budget)?;
    let jj_params = SummingParams::MixingMulti {
        s,
        q,
        p_list: p_list.to_vec(),
    };
    let jj_witness = SummingWitness {
        x_families: x_families.clone(),
        phis: Some(crate::summing::MultiIndexedFunctionals::new(
            a_map.codomain,
            vec![k],
            phis.clone(),
        )?),
        ratio: 0.0,
    };
    let (jj_lhs, _) = lhs_rhs(a_map, &jj_params, &jj_witness, budget)?;
    let jj_identity_gap = (jj_lhs - sa_lhs).abs();

    // And the (jj) value, normalized by ‖(φ_j)‖_s, is dominated by the mixed
    // norm of the outputs (lower vs upper).
    let mixed_upper = mixed_norm_primal(&outputs, Exp::finite(s), Exp::finite(q), budget)?;
    let jj_bound_margin = if phi_s_norm > 0.0 {
        mixed_upper.value + 1e-9 * (1.0 + jj_lhs) - jj_lhs / phi_s_norm
    } else {
        0.0
    };

    let identity_tol = 1e-11 * scale_val;
    let margin = (identity_tol - identity_gap)
        .min(ggs_margin)
        .min(pi_s_margin)
        .min(identity_tol.max(1e-11 * (1.0 + jj_lhs)) - jj_identity_gap)
        .min(jj_bound_margin);

    let instance = format!(
        "{n}-linear into l_{}^{}, rank-one u, (s,q)=({s},{q}), m={m}",
        a_map.codomain.exponent, a_map.codomain.dim
    );
    let mut report =
        LawReport::transported_exact("quotient", &instance, seed, -margin, 0.0, 1e-9);
    report.details = serde_json::json!({
        "pi_s_u": pi_s,
        "composed_lhs": lhs_ua,
        "identity_gap": identity_gap,
        "ggs_margin": ggs_margin,
        "pi_s_witness_margin": pi_s_margin,
        "jj_identity_gap": jj_identity_gap,
        "jj_bound_margin": jj_bound_margin,
    });
    Ok(report)
}

pub fn run_quotient(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let reports = par::map_indexed(opts.count, |i| {
        let seed = opts.seed.wrapping_add(i as u64);
        let n = 2usize;
        let dim = 2 + i % 2;
        let domain_space = SpaceSpec::linf(dim);
        let codomain = if i % 2 == 0 {
            SpaceSpec::linf(2)
        } else {
            SpaceSpec::lp(1.0, 2)
        };
        let a_map = gen::gaussian_tensor(vec![domain_space; n], codomain, seed)?;
        let mut rng = rng::seeded(seed ^ 0x77);
        let psi = Functional::new(codomain, gaussian_coords(&mut rng, codomain.dim))?;
        let g_space = SpaceSpec::lp(2.0, 2);
        let y0 = Vector::new(g_space, gaussian_coords(&mut rng, 2))?;
        quotient_theorem(
            &a_map,
            &psi,
            &y0,
            2.0,
            1.0,
            &vec![1.0; n],
            opts.m.clamp(1, 3),
            seed,
        )
    });
    reports.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_u_both_sides_zero() {
        let space = SpaceSpec::linf(2);
        let codomain = SpaceSpec::linf(2);
        let a_map = gen::gaussian_tensor(vec![space, space], codomain, 3).unwrap();
        let psi = Functional::new(codomain, vec![0.0, 0.0]).unwrap();
        let y0 = Vector::new(SpaceSpec::lp(2.0, 2), vec![1.0, 0.0]).unwrap();
        let report =
            quotient_theorem(&a_map, &psi, &y0, 2.0, 1.0, &[1.0, 1.0], 2, 5).unwrap();
        assert!(report.passed(), "margin {}", report.margin);
        assert_eq!(report.details["pi_s_u"].as_f64().unwrap(), 0.0);
    }

    #[test]
    fn rank_one_instances_pass() {
        let opts = CorpusOptions {
            count: 10,
            seed: 21,
            dim: 3,
            m: 2,
        };
        let reports = run_quotient(&opts).unwrap();
        for r in &reports {
            assert!(r.passed(), "{}: margin {}", r.instance, r.margin);
        }
    }

    #[test]
    fn philist_s_construction_is_contractive() {
        // φ-list of s-norm 1 gives evaluated π_s-witness ratios ≤ 1.
        let codomain = SpaceSpec::lp(1.0, 3);
        let mut rng = rng::seeded(9);
        let s = 2.0;
        let mut phis: Vec<Functional> = (0..4)
            .map(|_| Functional::new(codomain, gaussian_coords(&mut rng, 3)).unwrap())
            .collect();
        let total: f64 = phis.iter().map(|p| p.dual_norm().powf(s)).sum();
        let c = total.powf(-1.0 / s);
        for p in phis.iter_mut() {
            *p = p.scale(c);
        }
        for trial in 0..20 {
            let members = (0..3)
                .map(|_| Vector::new(codomain, gaussian_coords(&mut rng, 3)).unwrap())
                .collect();
            let fam = VectorFamily::new(codomain, members).unwrap();
            let lhs = lp_norm(
                fam.members.iter().map(|y| {
                    lp_norm(phis.iter().map(|phi| phi.apply(y)), Exp::finite(s))
                }),
                Exp::finite(s),
            );
            let weak = weak_norm(&fam, Exp::finite(s), SearchBudget::default())
                .unwrap()
                .value;
            assert!(lhs <= weak + 1e-10, "trial {trial}: {lhs} vs {weak}");
        }
    }
}
