//! Coherence and compatibility of the multiple (p;q;r) polynomial scale,
//! checked by exact witness transport.
//!
//! (i) Fixed-point restriction: a witness for `P̌_a` embeds into a witness
//! for `P̌` via a length-1 leading family, and the evaluated ratios satisfy
//! `ratio(P̌_a) = ‖a‖ · ratio(P̌)` exactly — the coherence constant β₁ = 1.
//!
//! (ii) Functional product: a witness for `(γP)^∨` is dominated through the
//! polarization expansion by the n+1 index re-blockings, each re-blocking
//! being an exact re-indexing of the same data into a witness for `P̌` whose
//! merged family obeys the weak-norm product bound with constant ‖γ‖ —
//! giving β₂ = 1. Every inequality is evaluated on both sides.

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exp::{abs_pow, Exp};
use crate::gen;
use crate::par;
use crate::rng;
use crate::seqnorms::{weak_norm, VectorFamily};
use crate::spaces::{gaussian_coords, Functional, SpaceSpec, Vector};
use crate::summing::{
    lhs_rhs, restriction_transport, MultiIndexedFunctionals, SummingParams, SummingWitness,
};
use crate::tensors::{multiply, HomogeneousPolynomial};

use super::{CorpusOptions, LawReport};

/// Exponents of the multiple (p;q;r) scale used by the transport.
#[derive(Clone, Copy, Debug)]
pub struct PqrScale {
    pub p: f64,
    pub q: f64,
    pub r: Exp,
}

impl PqrScale {
    fn params(&self, arity: usize) -> SummingParams {
        SummingParams::MultipleR {
            p: self.p,
            q_list: vec![self.q; arity],
            r: self.r,
        }
    }
}

/// Runs the transports for one (P, a, γ) triple with seeded witness data and
/// returns a combined report; the margin is the worst sub-assertion. The
/// fixed-point restriction is checked on both the multiple (p;q;r) scale and
/// the multiple mixing scale (inserting the constant family at the last
/// slot), the γ-product on the (p;q;r) scale.
pub fn coherence_compatibility(
    p_poly: &HomogeneousPolynomial,
    scale: PqrScale,
    a: &Vector,
    gamma: &Functional,
    m: usize,
    seed: u64,
) -> Result<LawReport> {
    let budget = SearchBudget::default().with_seed(seed);
    let fixed = fix_point_transport(p_poly, scale, a, m, seed, budget)?;
    let fixed_mixing = fix_point_transport_mixing(p_poly, scale, a, m, seed, budget)?;
    let product = gamma_product_transport(p_poly, scale, gamma, m, seed, budget)?;

    let margin = fixed.margin.min(fixed_mixing.margin).min(product.margin);
    let instance = format!(
        "degree-{} polynomial on l_{}^{}, (p;q;r)=({};{};{})",
        p_poly.degree,
        p_poly.space.exponent,
        p_poly.space.dim,
        scale.p,
        scale.q,
        scale.r
    );
    let mut report = LawReport::transported_exact(
        "coherence",
        &instance,
        seed,
        -margin,
        0.0,
        1e-9,
    );
    report.details = serde_json::json!({
        "fix_point": fixed.details,
        "fix_point_mixing": fixed_mixing.details,
        "gamma_product": product.details,
        "beta1": fixed.beta.max(fixed_mixing.beta),
        "beta2": product.beta,
    });
    Ok(report)
}

struct TransportOutcome {
    margin: f64,
    beta: f64,
    details: serde_json::Value,
}

/// (i): every witness for P̌_a maps to a witness for P̌ with the evaluated
/// identity ratio(P̌_a witness) = ‖a‖ · ratio(transported witness).
fn fix_point_transport(
    p_poly: &HomogeneousPolynomial,
    scale: PqrScale,
    a: &Vector,
    m: usize,
    seed: u64,
    budget: SearchBudget,
) -> Result<TransportOutcome> {
    let n = p_poly.degree;
    if n < 2 {
        return Err(Error::InvalidFamily(
            "fixed-point transport needs degree >= 2".into(),
        ));
    }
    let sub_poly = p_poly.fix_point(a, 1)?;
    let sub_params = scale.params(n - 1);
    let full_params = scale.params(n);

    let witness = seeded_witness(&sub_poly.sym.domain, p_poly.codomain, m, seed, &sub_params)?;
    let (sub_lhs, sub_rhs) = lhs_rhs(&sub_poly.sym, &sub_params, &witness, budget)?;

    if a.is_zero() {
        // The transported witness has LHS 0; nothing else to compare.
        let transported =
            restriction_transport(&p_poly.sym, &full_params, a, &witness, budget)?;
        let (lhs_t, _) = lhs_rhs(&p_poly.sym, &full_params, &transported, budget)?;
        return Ok(TransportOutcome {
            margin: -lhs_t.abs(),
            beta: 1.0,
            details: serde_json::json!({ "zero_a": true, "transported_lhs": lhs_t }),
        });
    }

    let transported = restriction_transport(&p_poly.sym, &full_params, a, &witness, budget)?;
    let (lhs_t, rhs_t) = lhs_rhs(&p_poly.sym, &full_params, &transported, budget)?;

    let scale_val = sub_lhs.abs().max(1.0);
    // LHS is unchanged by the embedding; RHS gains exactly ‖a‖.
    let lhs_gap = (lhs_t - sub_lhs).abs();
    let rhs_gap = (rhs_t - sub_rhs * a.norm()).abs();
    let ratio_sub = if sub_rhs > 0.0 { sub_lhs / sub_rhs } else { 0.0 };
    let ratio_t = if rhs_t > 0.0 { lhs_t / rhs_t } else { 0.0 };
    let beta = if ratio_t > 0.0 {
        ratio_sub / (a.norm() * ratio_t)
    } else {
        1.0
    };
    let margin = 1e-12f64.max(1e-12 * scale_val) - lhs_gap.max(rhs_gap);
    Ok(TransportOutcome {
        margin,
        beta,
        details: serde_json::json!({
            "sub_ratio": ratio_sub,
            "transported_ratio": ratio_t,
            "a_norm": a.norm(),
            "lhs_gap": lhs_gap,
            "rhs_gap": rhs_gap,
        }),
    })
}

/// (i) on the mixing scale: the same fixed-point transport for the multiple
/// `mx(s,q;p…)` norm, with `s = 2q` and slot exponents `q`, mirroring the
/// constant-family insertion of the polynomial mixing coherence statement.
fn fix_point_transport_mixing(
    p_poly: &HomogeneousPolynomial,
    scale: PqrScale,
    a: &Vector,
    m: usize,
    seed: u64,
    budget: SearchBudget,
) -> Result<TransportOutcome> {
    let n = p_poly.degree;
    if n < 2 {
        return Err(Error::InvalidFamily(
            "fixed-point transport needs degree >= 2".into(),
        ));
    }
    let mixing = |arity: usize| SummingParams::MixingMulti {
        s: 2.0 * scale.q,
        q: scale.q,
        p_list: vec![scale.q; arity],
    };
    let sub_poly = p_poly.fix_point(a, 1)?;
    let sub_params = mixing(n - 1);
    let full_params = mixing(n);

    let witness = seeded_witness(&sub_poly.sym.domain, p_poly.codomain, m, seed ^ 0x3c3c, &sub_params)?;
    let (sub_lhs, sub_rhs) = lhs_rhs(&sub_poly.sym, &sub_params, &witness, budget)?;
    let transported = restriction_transport(&p_poly.sym, &full_params, a, &witness, budget)?;
    let (lhs_t, rhs_t) = lhs_rhs(&p_poly.sym, &full_params, &transported, budget)?;

    if a.is_zero() {
        return Ok(TransportOutcome {
            margin: -lhs_t.abs(),
            beta: 1.0,
            details: serde_json::json!({ "zero_a": true, "transported_lhs": lhs_t }),
        });
    }

    let scale_val = sub_lhs.abs().max(1.0);
    let lhs_gap = (lhs_t - sub_lhs).abs();
    let rhs_gap = (rhs_t - sub_rhs * a.norm()).abs();
    let ratio_sub = if sub_rhs > 0.0 { sub_lhs / sub_rhs } else { 0.0 };
    let ratio_t = if rhs_t > 0.0 { lhs_t / rhs_t } else { 0.0 };
    let beta = if ratio_t > 0.0 {
        ratio_sub / (a.norm() * ratio_t)
    } else {
        1.0
    };
    let margin = 1e-12f64.max(1e-12 * scale_val) - lhs_gap.max(rhs_gap);
    Ok(TransportOutcome {
        margin,
        beta,
        details: serde_json::json!({
            "scale": "mixing",
            "sub_ratio": ratio_sub,
            "transported_ratio": ratio_t,
            "lhs_gap": lhs_gap,
            "rhs_gap": rhs_gap,
        }),
    })
}

/// (ii): the polarization expansion of a (γP)^∨ witness, with each of the
/// n+1 terms re-blocked exactly into a P̌ witness.
fn gamma_product_transport(
    p_poly: &HomogeneousPolynomial,
    scale: PqrScale,
    gamma: &Functional,
    m: usize,
    seed: u64,
    budget: SearchBudget,
) -> Result<TransportOutcome> {
    let n = p_poly.degree;
    let gp = multiply(gamma, p_poly)?;
    let arity = n + 1;
    let params_gp = scale.params(arity);
    let params_p = scale.params(n);

    let witness = seeded_witness(&gp.sym.domain, gp.codomain, m, seed ^ 0x5a5a, &params_gp)?;
    let (lhs_gp, rhs_gp) = lhs_rhs(&gp.sym, &params_gp, &witness, budget)?;

    if gamma.coords.iter().all(|&c| c == 0.0) {
        return Ok(TransportOutcome {
            margin: -lhs_gp.abs(),
            beta: 1.0,
            details: serde_json::json!({ "zero_gamma": true, "lhs": lhs_gp }),
        });
    }

    let phis = witness.phis.as_ref().expect("pqr witness carries phis");
    let dims: Vec<usize> = witness.x_families.iter().map(VectorFamily::len).collect();

    // The n+1 polarization terms, evaluated directly on the original data.
    let mut terms = Vec::with_capacity(arity);
    for k in 0..arity {
        terms.push(polarization_term(p_poly, gamma, &witness, phis, &dims, k, scale.p)?);
    }
    let term_sum: f64 = terms.iter().sum();
    let triangle_rhs = term_sum / arity as f64;
    let scale_val = lhs_gp.abs().max(1.0);
    let triangle_margin = triangle_rhs + 1e-12 * scale_val - lhs_gp;

    // Each term re-blocks into an exact P̌ witness; collect ratios and check
    // the re-indexing identity and the merged-family weak-norm bound.
    let mut max_ratio: f64 = 0.0;
    let mut worst_identity: f64 = 0.0;
    let mut worst_holder: f64 = f64::INFINITY;
    for (k, &term_k) in terms.iter().enumerate() {
        let (reblocked, merged_bound) =
            reblock_witness(p_poly, scale, gamma, &witness, phis, &dims, k)?;
        let (lhs_k, rhs_k) = lhs_rhs(&p_poly.sym, &params_p, &reblocked, budget)?;
        worst_identity = worst_identity.max((lhs_k - term_k).abs());
        worst_holder = worst_holder.min(merged_bound.bound - merged_bound.value);
        if rhs_k > 0.0 {
            max_ratio = max_ratio.max(lhs_k / rhs_k);
        }
    }

    let ratio_gp = if rhs_gp > 0.0 { lhs_gp / rhs_gp } else { 0.0 };
    let gamma_norm = gamma.dual_norm();
    let final_rhs = gamma_norm * max_ratio;
    let final_margin = final_rhs + 1e-9 * scale_val - ratio_gp;
    let beta = if final_rhs > 0.0 { ratio_gp / final_rhs } else { 1.0 };

    let identity_margin = 1e-11 * scale_val - worst_identity;
    let margin = triangle_margin
        .min(final_margin)
        .min(identity_margin)
        .min(worst_holder + 1e-11 * scale_val);
    Ok(TransportOutcome {
        margin,
        beta,
        details: serde_json::json!({
            "lhs": lhs_gp,
            "ratio": ratio_gp,
            "max_reblocked_ratio": max_ratio,
            "gamma_norm": gamma_norm,
            "triangle_margin": triangle_margin,
            "reindex_identity_gap": worst_identity,
            "holder_margin": worst_holder,
        }),
    })
}

/// `(Σ_J |φ_J(γ(x^{(k)}_{J_k}) P̌(x_J with slot k dropped))|^p)^{1/p}`.
fn polarization_term(
    p_poly: &HomogeneousPolynomial,
    gamma: &Functional,
    witness: &SummingWitness,
    phis: &MultiIndexedFunctionals,
    dims: &[usize],
    k: usize,
    p: f64,
) -> Result<f64> {
    let total: usize = dims.iter().product();
    let mut idx = vec![0usize; dims.len()];
    let mut acc = 0.0;
    for flat in 0..total {
        crate::summing::decompose(flat, dims, &mut idx);
        let mut args = Vec::with_capacity(dims.len() - 1);
        for (slot, &j) in idx.iter().enumerate() {
            if slot == k {
                continue;
            }
            args.push(witness.x_families[slot].members[j].clone());
        }
        let g = gamma.apply(&witness.x_families[k].members[idx[k]]);
        let out = p_poly.sym.evaluate(&args)?;
        let v = g * phis.members[flat].apply(&out);
        acc += abs_pow(v, p);
    }
    Ok(acc.powf(1.0 / p))
}

struct MergedBound {
    value: f64,
    bound: f64,
}

/// The §5.1 re-indexing: drop slot k, merge the γ-weights onto the first
/// kept slot (index pairs `(j_k, j_f) ↦ j_k·m_f + j_f`), and re-index φ the
/// same way. Returns the P̌ witness and the evaluated weak-norm product
/// bound for the merged family.
fn reblock_witness(
    p_poly: &HomogeneousPolynomial,
    scale: PqrScale,
    gamma: &Functional,
    witness: &SummingWitness,
    phis: &MultiIndexedFunctionals,
    dims: &[usize],
    k: usize,
) -> Result<(SummingWitness, MergedBound)> {
    let arity = dims.len();
    let kept: Vec<usize> = (0..arity).filter(|&s| s != k).collect();
    let f = kept[0];
    let mk = dims[k];
    let mf = dims[f];

    // Merged family z_{(j_k, j_f)} = γ(x^{(k)}_{j_k}) · x^{(f)}_{j_f}.
    let mut merged = Vec::with_capacity(mk * mf);
    for jk in 0..mk {
        let g = gamma.apply(&witness.x_families[k].members[jk]);
        for jf in 0..mf {
            merged.push(witness.x_families[f].members[jf].scale(g));
        }
    }
    let merged_family = VectorFamily::new(p_poly.space, merged)?;

    let mut x_families = vec![merged_family.clone()];
    for &s in &kept[1..] {
        x_families.push(witness.x_families[s].clone());
    }

    // φ̃ re-indexed over the box (m_k·m_f, dims of kept[1..]).
    let new_dims: Vec<usize> = x_families.iter().map(VectorFamily::len).collect();
    let count: usize = new_dims.iter().product();
    let mut members = vec![Functional::basis(phis.space, 0, 1.0); count];
    let total: usize = dims.iter().product();
    let mut idx = vec![0usize; arity];
    for flat in 0..total {
        crate::summing::decompose(flat, dims, &mut idx);
        let mut new_idx = Vec::with_capacity(new_dims.len());
        new_idx.push(idx[k] * mf + idx[f]);
        for &s in &kept[1..] {
            new_idx.push(idx[s]);
        }
        let mut new_flat = 0usize;
        for (i, &d) in new_dims.iter().enumerate() {
            new_flat = new_flat * d + new_idx[i];
        }
        members[new_flat] = phis.members[flat].clone();
    }
    let new_phis = MultiIndexedFunctionals::new(phis.space, new_dims, members)?;

    // Weak-norm product bound for the merged family (the Hölder step).
    let budget = SearchBudget::default();
    let q = Exp::finite(scale.q);
    let value = weak_norm(&merged_family, q, budget)?.value;
    let bound = gamma.dual_norm()
        * weak_norm(&witness.x_families[k], q, budget)?.value
        * weak_norm(&witness.x_families[f], q, budget)?.value;

    Ok((
        SummingWitness {
            x_families,
            phis: Some(new_phis),
            ratio: 0.0,
        },
        MergedBound { value, bound },
    ))
}

fn seeded_witness(
    domain: &[SpaceSpec],
    codomain: SpaceSpec,
    m: usize,
    seed: u64,
    params: &SummingParams,
) -> Result<SummingWitness> {
    let mut rng = rng::seeded(seed);
    let x_families: Vec<VectorFamily> = domain
        .iter()
        .map(|&space| {
            let members = (0..m)
                .map(|_| Vector::new(space, gaussian_coords(&mut rng, space.dim)))
                .collect::<Result<Vec<_>>>()?;
            VectorFamily::new(space, members)
        })
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = x_families.iter().map(VectorFamily::len).collect();
    let phis = match params {
        SummingParams::MultipleR { .. } => {
            let count: usize = dims.iter().product();
            let members = (0..count)
                .map(|_| Functional::new(codomain, gaussian_coords(&mut rng, codomain.dim)))
                .collect::<Result<Vec<_>>>()?;
            Some(MultiIndexedFunctionals::new(codomain, dims, members)?)
        }
        SummingParams::MixingMulti { .. } => {
            let k = m + 1;
            let members = (0..k)
                .map(|_| Functional::new(codomain, gaussian_coords(&mut rng, codomain.dim)))
                .collect::<Result<Vec<_>>>()?;
            Some(MultiIndexedFunctionals::new(codomain, vec![k], members)?)
        }
        _ => None,
    };
    Ok(SummingWitness {
        x_families,
        phis,
        ratio: 0.0,
    })
}

pub fn run_coherence(opts: &CorpusOptions) -> Result<Vec<LawReport>> {
    let scale = PqrScale {
        p: 1.0,
        q: 1.0,
        r: Exp::finite(2.0),
    };
    let reports = par::map_indexed(opts.count, |i| {
        let seed = opts.seed.wrapping_add(i as u64);
        let n = 2 + i % 2;
        let dim = 2 + i % 2;
        let space = if i % 2 == 0 {
            SpaceSpec::linf(dim)
        } else {
            SpaceSpec::lp(1.0, dim)
        };
        let raw = gen::gaussian_tensor(vec![space; n], SpaceSpec::scalar(), seed)?;
        let p_poly = HomogeneousPolynomial::from_multilinear(&raw)?;
        let mut rng = rng::seeded(seed ^ 0xc0de);
        let a = Vector::new(space, gaussian_coords(&mut rng, dim))?;
        let gamma = Functional::new(space, gaussian_coords(&mut rng, dim))?;
        coherence_compatibility(&p_poly, scale, &a, &gamma, opts.m.clamp(1, 2), seed)
    });
    reports.into_iter().collect()
}
