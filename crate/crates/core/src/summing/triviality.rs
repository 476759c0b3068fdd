//! The triviality regime: inadmissible exponents force the zero class, and a
//! repeated witness makes the divergence quantitative. Repeating one slot's
//! vector m times scales the LHS like `m^{1/p}` (or `m^{1/q}` for mixing)
//! while the RHS scales like the slot and φ factors combined, so the ratio
//! grows like `m^δ` with δ the admissibility defect.

use serde::{Deserialize, Serialize};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::seqnorms::VectorFamily;
use crate::spaces::{norming_functional, Functional, Vector};
use crate::tensors::MultilinearMap;

use super::{MultiIndexedFunctionals, SummingParams, SummingWitness};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrivialityReport {
    pub kind: String,
    pub violated_constraint: String,
    /// The admissibility defect δ; the witness ratio grows like m^δ.
    pub predicted_exponent: f64,
    /// Log-log slope fitted to the measured ratios; `None` for the zero map.
    pub measured_exponent: Option<f64>,
    pub ratios: Vec<(usize, f64)>,
    /// The zero map is the sole member of the trivial class; no divergence.
    pub zero_map: bool,
}

pub fn check_triviality(
    t: &MultilinearMap,
    params: &SummingParams,
    budget: SearchBudget,
) -> Result<TrivialityReport> {
    check_triviality_at(t, params, &[2, 4, 8, 16], budget)
}

pub fn check_triviality_at(
    t: &MultilinearMap,
    params: &SummingParams,
    ms: &[usize],
    budget: SearchBudget,
) -> Result<TrivialityReport> {
    let constraint = params
        .violated_constraint(t.arity())
        .ok_or_else(|| Error::Inadmissible {
            constraint: "triviality check requires inadmissible exponents".into(),
        })?;

    let (repeat_slot, delta) = divergence_plan(params);

    let base = match base_point(t) {
        Some(b) => b,
        None => {
            return Ok(TrivialityReport {
                kind: params.kind_name().into(),
                violated_constraint: constraint,
                predicted_exponent: delta,
                measured_exponent: None,
                ratios: Vec::new(),
                zero_map: true,
            })
        }
    };

    let mut ratios = Vec::with_capacity(ms.len());
    for &m in ms {
        let witness = repeated_witness(t, params, &base, repeat_slot, m)?;
        let (lhs, rhs) = super::eval_lhs_rhs(t, params, &witness, budget)?;
        if rhs <= 0.0 {
            return Err(Error::InvalidWitness(
                "repeated witness has vanishing right-hand side".into(),
            ));
        }
        ratios.push((m, lhs / rhs));
    }

    let measured = fit_loglog_slope(&ratios);
    Ok(TrivialityReport {
        kind: params.kind_name().into(),
        violated_constraint: constraint,
        predicted_exponent: delta,
        measured_exponent: Some(measured),
        ratios,
        zero_map: false,
    })
}

/// Which slot to repeat, and the predicted growth exponent.
fn divergence_plan(params: &SummingParams) -> (RepeatPlan, f64) {
    match params {
        SummingParams::AsLinear { p, q } => (RepeatPlan::AllSlots, 1.0 / p - 1.0 / q),
        SummingParams::AsLinearPqr { p, q, r } => {
            (RepeatPlan::AllSlots, 1.0 / p - 1.0 / q - r.recip())
        }
        SummingParams::AsMulti { p, q_list } => {
            let sum: f64 = q_list.iter().map(|q| 1.0 / q).sum();
            (RepeatPlan::AllSlots, 1.0 / p - sum)
        }
        SummingParams::AsMultiR { p, q_list, r } => {
            let sum: f64 = q_list.iter().map(|q| 1.0 / q).sum::<f64>() + r.recip();
            (RepeatPlan::AllSlots, 1.0 / p - sum)
        }
        SummingParams::Multiple { p, q_list } => {
            let (slot, q) = worst_slot(q_list, 0.0);
            (RepeatPlan::OneSlot(slot), 1.0 / p - 1.0 / q)
        }
        SummingParams::MultipleR { p, q_list, r } => {
            let (slot, q) = worst_slot(q_list, r.recip());
            (RepeatPlan::OneSlot(slot), 1.0 / p - 1.0 / q - r.recip())
        }
        SummingParams::MixingMulti { q, p_list, .. } => {
            let (slot, pk) = p_list
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, v)| (i, *v))
                .expect("p_list nonempty");
            (RepeatPlan::OneSlot(slot), 1.0 / q - 1.0 / pk)
        }
    }
}

#[derive(Clone, Copy)]
enum RepeatPlan {
    AllSlots,
    OneSlot(usize),
}

fn worst_slot(q_list: &[f64], r_recip: f64) -> (usize, f64) {
    // Most violated slot: the one minimizing 1/q_i + 1/r coverage.
    q_list
        .iter()
        .enumerate()
        .max_by(|a, b| {
            let da = 1.0 / a.1 + r_recip;
            let db = 1.0 / b.1 + r_recip;
            db.total_cmp(&da)
        })
        .map(|(i, v)| (i, *v))
        .expect("q_list nonempty")
}

/// A basis tuple where the map does not vanish, if one exists. By
/// multilinearity a map vanishing on every basis tuple is the zero map.
fn base_point(t: &MultilinearMap) -> Option<Vec<Vector>> {
    let dims: Vec<usize> = t.domain.iter().map(|s| s.dim).collect();
    let total: usize = dims.iter().product();
    let mut idx = vec![0usize; dims.len()];
    for flat in 0..total {
        super::decompose(flat, &dims, &mut idx);
        let args: Vec<Vector> = t
            .domain
            .iter()
            .zip(&idx)
            .map(|(&s, &i)| Vector::basis(s, i))
            .collect();
        if let Ok(v) = t.evaluate(&args) {
            if !v.is_zero() {
                return Some(args);
            }
        }
    }
    None
}

fn repeated_witness(
    t: &MultilinearMap,
    params: &SummingParams,
    base: &[Vector],
    plan: RepeatPlan,
    m: usize,
) -> Result<SummingWitness> {
    let n = t.arity();
    let lengths: Vec<usize> = (0..n)
        .map(|k| match plan {
            RepeatPlan::AllSlots => m,
            RepeatPlan::OneSlot(slot) if k == slot => m,
            RepeatPlan::OneSlot(_) => 1,
        })
        .collect();
    let x_families: Vec<VectorFamily> = (0..n)
        .map(|k| VectorFamily::new(t.domain[k], vec![base[k].clone(); lengths[k]]))
        .collect::<Result<Vec<_>>>()?;

    let out = t.evaluate(base)?;
    let phi0 = if out.is_zero() {
        Functional::basis(t.codomain, 0, 1.0)
    } else {
        norming_functional(&out)
    };
    let phis = match params {
        SummingParams::AsLinear { .. }
        | SummingParams::AsMulti { .. }
        | SummingParams::Multiple { .. } => None,
        SummingParams::AsLinearPqr { .. } | SummingParams::AsMultiR { .. } => Some(
            MultiIndexedFunctionals::new(t.codomain, vec![m], vec![phi0; m])?,
        ),
        SummingParams::MultipleR { .. } => {
            let count: usize = lengths.iter().product();
            Some(MultiIndexedFunctionals::new(
                t.codomain,
                lengths.clone(),
                vec![phi0; count],
            )?)
        }
        SummingParams::MixingMulti { .. } => Some(MultiIndexedFunctionals::new(
            t.codomain,
            vec![1],
            vec![phi0],
        )?),
    };

    Ok(SummingWitness {
        x_families,
        phis,
        ratio: 0.0,
    })
}

fn fit_loglog_slope(ratios: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = ratios
        .iter()
        .filter(|(_, r)| *r > 0.0)
        .map(|(m, r)| ((*m as f64).ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::Exp;
    use crate::spaces::SpaceSpec;

    fn id_on_l2() -> MultilinearMap {
        let space = SpaceSpec::lp(2.0, 2);
        MultilinearMap::new(vec![space], space, vec![1.0, 0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn admissible_params_are_rejected() {
        let t = id_on_l2();
        let params = SummingParams::AsLinearPqr {
            p: 1.0,
            q: 2.0,
            r: Exp::finite(2.0),
        };
        assert!(check_triviality(&t, &params, SearchBudget::default()).is_err());
    }

    #[test]
    fn divergence_exponent_matches_defect() {
        // 1/p − 1/q − 1/r = 1 − 1/4 − 1/4 = 1/2.
        let t = id_on_l2();
        let params = SummingParams::AsLinearPqr {
            p: 1.0,
            q: 4.0,
            r: Exp::finite(4.0),
        };
        let report = check_triviality(&t, &params, SearchBudget::default()).unwrap();
        assert!(!report.zero_map);
        let measured = report.measured_exponent.unwrap();
        assert!(
            (measured - 0.5).abs() < 0.01,
            "measured {measured}, predicted {}",
            report.predicted_exponent
        );
    }

    #[test]
    fn zero_map_is_flagged() {
        let space = SpaceSpec::lp(2.0, 2);
        let t = MultilinearMap::new(vec![space], space, vec![0.0; 4]).unwrap();
        let params = SummingParams::AsLinear { p: 1.0, q: 2.0 };
        let report = check_triviality(&t, &params, SearchBudget::default()).unwrap();
        assert!(report.zero_map);
        assert!(report.measured_exponent.is_none());
    }
}
