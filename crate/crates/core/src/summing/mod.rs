//! Summing-type norms of (multi)linear maps: evaluation of the defining
//! inequalities on explicit test data, certified lower-bound estimation with
//! stored witnesses, the triviality (divergence) regime, and exact witness
//! transport along slot restrictions.
//!
//! Kinds covered, by their exponent signatures:
//! `as_linear (p;q)`, `as_linear_pqr (p;q;r)`, `as_multi (p;q₁,…,qₙ)`,
//! `as_multi_r (p;q₁,…,qₙ;r)` (diagonal index), `multiple (p;q₁,…,qₙ)`,
//! `multiple_r (p;q₁,…,qₙ;r)` (full multi-index box), and
//! `mixing_multi mx(s,q;p₁,…,pₙ)` (box plus a separate φ-list).

mod ascent;
mod triviality;

pub use ascent::estimate_norm;
pub use triviality::{check_triviality, check_triviality_at, TrivialityReport};

use serde::{Deserialize, Serialize};

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::exp::{abs_pow, lp_norm, Exp};
use crate::seqnorms::{weak_norm, VectorFamily};
use crate::spaces::{Functional, SpaceSpec, Vector};
use crate::tensors::MultilinearMap;

/// Exponent data for each summing kind. Admissibility is per kind; see
/// [`SummingParams::validate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SummingParams {
    AsLinear { p: f64, q: f64 },
    AsLinearPqr { p: f64, q: f64, r: Exp },
    AsMulti { p: f64, q_list: Vec<f64> },
    AsMultiR { p: f64, q_list: Vec<f64>, r: Exp },
    Multiple { p: f64, q_list: Vec<f64> },
    MultipleR { p: f64, q_list: Vec<f64>, r: Exp },
    MixingMulti { s: f64, q: f64, p_list: Vec<f64> },
}

impl SummingParams {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SummingParams::AsLinear { .. } => "as_linear",
            SummingParams::AsLinearPqr { .. } => "as_linear_pqr",
            SummingParams::AsMulti { .. } => "as_multi",
            SummingParams::AsMultiR { .. } => "as_multi_r",
            SummingParams::Multiple { .. } => "multiple",
            SummingParams::MultipleR { .. } => "multiple_r",
            SummingParams::MixingMulti { .. } => "mixing_multi",
        }
    }

    /// Weak-norm exponent for each domain slot.
    pub fn slot_exponents(&self) -> Vec<f64> {
        match self {
            SummingParams::AsLinear { q, .. } | SummingParams::AsLinearPqr { q, .. } => {
                vec![*q]
            }
            SummingParams::AsMulti { q_list, .. }
            | SummingParams::AsMultiR { q_list, .. }
            | SummingParams::Multiple { q_list, .. }
            | SummingParams::MultipleR { q_list, .. } => q_list.clone(),
            SummingParams::MixingMulti { p_list, .. } => p_list.clone(),
        }
    }

    /// Whether test data is indexed over the full multi-index box (as opposed
    /// to the shared diagonal index).
    pub fn is_box(&self) -> bool {
        matches!(
            self,
            SummingParams::Multiple { .. }
                | SummingParams::MultipleR { .. }
                | SummingParams::MixingMulti { .. }
        )
    }

    /// Weak exponent of the φ family, if this kind carries one.
    pub fn phi_exponent(&self) -> Option<Exp> {
        match self {
            SummingParams::AsLinearPqr { r, .. }
            | SummingParams::AsMultiR { r, .. }
            | SummingParams::MultipleR { r, .. } => Some(*r),
            _ => None,
        }
    }

    /// The inadmissibility witness: `Some(description)` when the exponents
    /// violate the kind's constraint, `None` when admissible.
    pub fn violated_constraint(&self, arity: usize) -> Option<String> {
        let slots = self.slot_exponents();
        if slots.len() != arity {
            return Some(format!(
                "kind {} needs {} slot exponents for an arity-{arity} map",
                self.kind_name(),
                slots.len()
            ));
        }
        match self {
            SummingParams::AsLinear { p, q } => {
                (1.0 / p > 1.0 / q).then(|| format!("1/p > 1/q (p={p}, q={q})"))
            }
            SummingParams::AsLinearPqr { p, q, r } => (1.0 / p > 1.0 / q + r.recip())
                .then(|| format!("1/p > 1/q + 1/r (p={p}, q={q}, r={r})")),
            SummingParams::AsMulti { p, q_list } => {
                let sum: f64 = q_list.iter().map(|q| 1.0 / q).sum();
                (1.0 / p > sum).then(|| format!("1/p > sum(1/q_i) (p={p})"))
            }
            SummingParams::AsMultiR { p, q_list, r } => {
                let sum: f64 = q_list.iter().map(|q| 1.0 / q).sum::<f64>() + r.recip();
                (1.0 / p > sum).then(|| format!("1/p > sum(1/q_i) + 1/r (p={p}, r={r})"))
            }
            SummingParams::Multiple { p, q_list } => q_list
                .iter()
                .enumerate()
                .find(|(_, q)| 1.0 / p > 1.0 / **q)
                .map(|(i, q)| format!("1/p > 1/q_{} (p={p}, q_{}={q})", i + 1, i + 1)),
            SummingParams::MultipleR { p, q_list, r } => q_list
                .iter()
                .enumerate()
                .find(|(_, q)| 1.0 / p > 1.0 / **q + r.recip())
                .map(|(i, q)| {
                    format!("1/p > 1/q_i + 1/r (p={p}, q_{}={q}, r={r})", i + 1)
                }),
            SummingParams::MixingMulti { s, q, p_list } => {
                if q > s {
                    return Some(format!("q > s (q={q}, s={s})"));
                }
                p_list
                    .iter()
                    .enumerate()
                    .find(|(_, pk)| **pk > *q)
                    .map(|(k, pk)| format!("p_k > q (p_{}={pk}, q={q})", k + 1))
            }
        }
    }

    pub fn validate(&self, arity: usize) -> Result<()> {
        let all_exponents_ok = self
            .slot_exponents()
            .iter()
            .chain(self.primary_exponents().iter())
            .all(|&e| e >= 1.0 && e.is_finite());
        if !all_exponents_ok {
            return Err(Error::Inadmissible {
                constraint: "all finite exponents must lie in [1, inf)".into(),
            });
        }
        match self.violated_constraint(arity) {
            Some(c) => Err(Error::Inadmissible { constraint: c }),
            None => Ok(()),
        }
    }

    fn primary_exponents(&self) -> Vec<f64> {
        match self {
            SummingParams::AsLinear { p, .. }
            | SummingParams::AsLinearPqr { p, .. }
            | SummingParams::AsMulti { p, .. }
            | SummingParams::AsMultiR { p, .. }
            | SummingParams::Multiple { p, .. }
            | SummingParams::MultipleR { p, .. } => vec![*p],
            SummingParams::MixingMulti { s, q, .. } => vec![*s, *q],
        }
    }

    /// Parameters for the restricted map `T_a` (first slot removed). Only the
    /// box-indexed kinds restrict; diagonal kinds have no slotwise witness.
    pub fn drop_first_slot(&self) -> Result<SummingParams> {
        match self {
            SummingParams::Multiple { p, q_list } if q_list.len() > 1 => {
                Ok(SummingParams::Multiple {
                    p: *p,
                    q_list: q_list[1..].to_vec(),
                })
            }
            SummingParams::MultipleR { p, q_list, r } if q_list.len() > 1 => {
                Ok(SummingParams::MultipleR {
                    p: *p,
                    q_list: q_list[1..].to_vec(),
                    r: *r,
                })
            }
            SummingParams::MixingMulti { s, q, p_list } if p_list.len() > 1 => {
                Ok(SummingParams::MixingMulti {
                    s: *s,
                    q: *q,
                    p_list: p_list[1..].to_vec(),
                })
            }
            _ => Err(Error::Inadmissible {
                constraint: format!(
                    "kind {} with one slot cannot drop its first slot",
                    self.kind_name()
                ),
            }),
        }
    }
}

/// A family of functionals indexed over a multi-index box (shape `[k]` for
/// plain lists).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiIndexedFunctionals {
    /// The predual the functionals act on (the codomain F of the map).
    pub space: SpaceSpec,
    pub shape: Vec<usize>,
    pub members: Vec<Functional>,
}

impl MultiIndexedFunctionals {
    pub fn new(space: SpaceSpec, shape: Vec<usize>, members: Vec<Functional>) -> Result<Self> {
        if shape.iter().product::<usize>() != members.len() {
            return Err(Error::InvalidFamily(format!(
                "phi shape {:?} does not match member count {}",
                shape,
                members.len()
            )));
        }
        for f in &members {
            if f.space != space {
                return Err(Error::SpaceMismatch(
                    "phi members must act on the stated space".into(),
                ));
            }
        }
        Ok(MultiIndexedFunctionals {
            space,
            shape,
            members,
        })
    }

    /// Weak-r norm, computed by viewing the functionals as vectors in the
    /// dual space (the sup runs over the ball of the original space).
    pub fn weak_norm(&self, r: Exp, budget: SearchBudget) -> Result<f64> {
        let fam = VectorFamily::from_functionals(self.space, &self.members)?;
        Ok(weak_norm(&fam, r, budget)?.value)
    }

    /// Strong ℓs norm of the dual norms.
    pub fn strong_norm(&self, s: f64) -> f64 {
        lp_norm(self.members.iter().map(|f| f.dual_norm()), Exp::finite(s))
    }
}

/// Test data certifying a lower bound for a summing norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummingWitness {
    /// One family per domain slot.
    pub x_families: Vec<VectorFamily>,
    /// Functional data for the kinds that carry it.
    pub phis: Option<MultiIndexedFunctionals>,
    /// Achieved LHS/RHS; re-derivable from the data via [`lhs_rhs`].
    pub ratio: f64,
}

/// Evaluates the box (or diagonal) of outputs `T(x_{j₁}^{(1)},…,x_{jₙ}^{(n)})`
/// in row-major order over the index box.
pub fn output_family(
    t: &MultilinearMap,
    x_families: &[VectorFamily],
    diag: bool,
) -> Result<VectorFamily> {
    if x_families.len() != t.arity() {
        return Err(Error::DimensionMismatch {
            expected: t.arity(),
            got: x_families.len(),
        });
    }
    if diag {
        let m = x_families[0].len();
        if x_families.iter().any(|f| f.len() != m) {
            return Err(Error::InvalidWitness(
                "diagonal kinds need equal-length families".into(),
            ));
        }
        let members: Result<Vec<Vector>> = (0..m)
            .map(|j| {
                let args: Vec<Vector> = x_families
                    .iter()
                    .map(|f| f.members[j].clone())
                    .collect();
                t.evaluate(&args)
            })
            .collect();
        VectorFamily::with_shape(t.codomain, members?, vec![m])
    } else {
        let dims: Vec<usize> = x_families.iter().map(VectorFamily::len).collect();
        let total: usize = dims.iter().product();
        let mut idx = vec![0usize; dims.len()];
        let mut members = Vec::with_capacity(total);
        for flat in 0..total {
            decompose(flat, &dims, &mut idx);
            let args: Vec<Vector> = x_families
                .iter()
                .zip(&idx)
                .map(|(f, &j)| f.members[j].clone())
                .collect();
            members.push(t.evaluate(&args)?);
        }
        VectorFamily::with_shape(t.codomain, members, dims)
    }
}

pub(crate) fn decompose(mut flat: usize, dims: &[usize], out: &mut [usize]) {
    for i in (0..dims.len()).rev() {
        out[i] = flat % dims[i];
        flat /= dims[i];
    }
}

/// Exact evaluation of both sides of the defining inequality on explicit
/// witness data. Weak norms on the right use the exact extreme-point path
/// whenever the spaces admit one.
pub fn lhs_rhs(
    t: &MultilinearMap,
    params: &SummingParams,
    witness: &SummingWitness,
    budget: SearchBudget,
) -> Result<(f64, f64)> {
    params.validate(t.arity())?;
    eval_lhs_rhs(t, params, witness, budget)
}

/// The evaluation itself, shape-checked but with no admissibility gate; the
/// triviality driver evaluates deliberately inadmissible exponents.
pub(crate) fn eval_lhs_rhs(
    t: &MultilinearMap,
    params: &SummingParams,
    witness: &SummingWitness,
    budget: SearchBudget,
) -> Result<(f64, f64)> {
    check_witness_shape(t, params, witness)?;
    let diag = !params.is_box();
    let outputs = output_family(t, &witness.x_families, diag)?;

    let lhs = match params {
        SummingParams::AsLinear { p, .. }
        | SummingParams::AsMulti { p, .. }
        | SummingParams::Multiple { p, .. } => {
            lp_norm(outputs.members.iter().map(Vector::norm), Exp::finite(*p))
        }
        SummingParams::AsLinearPqr { p, .. }
        | SummingParams::AsMultiR { p, .. }
        | SummingParams::MultipleR { p, .. } => {
            let phis = witness.phis.as_ref().expect("shape checked");
            lp_norm(
                outputs
                    .members
                    .iter()
                    .zip(&phis.members)
                    .map(|(out, phi)| phi.apply(out)),
                Exp::finite(*p),
            )
        }
        SummingParams::MixingMulti { s, q, .. } => {
            let phis = witness.phis.as_ref().expect("shape checked");
            let mut acc = 0.0;
            for out in &outputs.members {
                let inner: f64 = phis
                    .members
                    .iter()
                    .map(|phi| abs_pow(phi.apply(out), *s))
                    .sum();
                acc += inner.powf(*q / *s);
            }
            acc.powf(1.0 / *q)
        }
    };

    let mut rhs = 1.0;
    for (fam, qk) in witness.x_families.iter().zip(params.slot_exponents()) {
        rhs *= weak_norm(fam, Exp::finite(qk), budget)?.value;
    }
    if let Some(r) = params.phi_exponent() {
        let phis = witness.phis.as_ref().expect("shape checked");
        rhs *= phis.weak_norm(r, budget)?;
    }
    if let SummingParams::MixingMulti { s, .. } = params {
        let phis = witness.phis.as_ref().expect("shape checked");
        rhs *= phis.strong_norm(*s);
    }
    Ok((lhs, rhs))
}

fn check_witness_shape(
    t: &MultilinearMap,
    params: &SummingParams,
    witness: &SummingWitness,
) -> Result<()> {
    if witness.x_families.len() != t.arity() {
        return Err(Error::InvalidWitness(format!(
            "witness has {} families for an arity-{} map",
            witness.x_families.len(),
            t.arity()
        )));
    }
    for (fam, space) in witness.x_families.iter().zip(&t.domain) {
        if fam.space.dim != space.dim {
            return Err(Error::InvalidWitness(
                "witness family dimensions must match the map domain".into(),
            ));
        }
    }
    let diag = !params.is_box();
    if diag {
        let m = witness.x_families[0].len();
        if witness.x_families.iter().any(|f| f.len() != m) {
            return Err(Error::InvalidWitness(
                "diagonal kinds need equal-length families".into(),
            ));
        }
    }
    match params {
        SummingParams::AsLinear { .. }
        | SummingParams::AsMulti { .. }
        | SummingParams::Multiple { .. } => {
            if witness.phis.is_some() {
                return Err(Error::InvalidWitness(
                    "phi-free kinds take no functional family".into(),
                ));
            }
        }
        SummingParams::AsLinearPqr { .. } | SummingParams::AsMultiR { .. } => {
            let phis = witness
                .phis
                .as_ref()
                .ok_or_else(|| Error::InvalidWitness("this kind needs a phi list".into()))?;
            let m = witness.x_families[0].len();
            if phis.members.len() != m {
                return Err(Error::InvalidWitness(format!(
                    "diagonal phi list must have length {m}"
                )));
            }
            if phis.space.dim != t.codomain.dim {
                return Err(Error::InvalidWitness(
                    "phi family must act on the codomain".into(),
                ));
            }
        }
        SummingParams::MultipleR { .. } => {
            let phis = witness
                .phis
                .as_ref()
                .ok_or_else(|| Error::InvalidWitness("this kind needs a phi box".into()))?;
            let dims: Vec<usize> = witness.x_families.iter().map(VectorFamily::len).collect();
            if phis.shape != dims {
                return Err(Error::InvalidWitness(format!(
                    "phi box shape {:?} must match family lengths {:?}",
                    phis.shape, dims
                )));
            }
            if phis.space.dim != t.codomain.dim {
                return Err(Error::InvalidWitness(
                    "phi family must act on the codomain".into(),
                ));
            }
        }
        SummingParams::MixingMulti { .. } => {
            let phis = witness
                .phis
                .as_ref()
                .ok_or_else(|| Error::InvalidWitness("mixing kinds need a phi list".into()))?;
            if phis.shape.len() != 1 || phis.members.is_empty() {
                return Err(Error::InvalidWitness(
                    "mixing phi data is a flat nonempty list".into(),
                ));
            }
            if phis.space.dim != t.codomain.dim {
                return Err(Error::InvalidWitness(
                    "phi family must act on the codomain".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Embeds a witness for the restriction `T_a` (slot 1 fixed at `a`) into a
/// witness for `T` by prepending the length-1 family `(a)`; the φ box gains a
/// leading axis of size 1 with the same members. The evaluated LHS is
/// unchanged and the RHS gains exactly the factor `‖(a)‖_{w,q₁} = ‖a‖`, which
/// is the witness-level content of the restriction inequality.
pub fn restriction_transport(
    t: &MultilinearMap,
    params: &SummingParams,
    a: &Vector,
    ta_witness: &SummingWitness,
    budget: SearchBudget,
) -> Result<SummingWitness> {
    if !params.is_box() {
        return Err(Error::Inadmissible {
            constraint: "restriction transport applies to box-indexed kinds".into(),
        });
    }
    params.validate(t.arity())?;
    if ta_witness.x_families.len() + 1 != t.arity() {
        return Err(Error::InvalidWitness(
            "restricted witness must have one fewer family than the map".into(),
        ));
    }
    let first = VectorFamily::new(a.space, vec![a.clone()])?;
    let mut x_families = vec![first];
    x_families.extend(ta_witness.x_families.iter().cloned());
    // The φ box gains the leading length-1 axis; a mixing φ-list is indexed
    // independently of the box and passes through unchanged.
    let phis = match (&ta_witness.phis, params) {
        (Some(p), SummingParams::MixingMulti { .. }) => Some(p.clone()),
        (Some(p), _) => {
            let mut shape = vec![1usize];
            shape.extend(&p.shape);
            Some(MultiIndexedFunctionals::new(
                p.space,
                shape,
                p.members.clone(),
            )?)
        }
        (None, _) => None,
    };
    let mut witness = SummingWitness {
        x_families,
        phis,
        ratio: 0.0,
    };
    let (lhs, rhs) = lhs_rhs(t, params, &witness, budget)?;
    witness.ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::norming_functional;

    fn id_on_l1(n: usize) -> MultilinearMap {
        let space = SpaceSpec::lp(1.0, n);
        let mut coeffs = vec![0.0; n * n];
        for i in 0..n {
            coeffs[i * n + i] = 1.0;
        }
        MultilinearMap::new(vec![space], space, coeffs).unwrap()
    }

    #[test]
    fn admissibility_checks() {
        assert!(SummingParams::AsLinear { p: 1.0, q: 1.0 }.validate(1).is_ok());
        assert!(SummingParams::AsLinear { p: 1.0, q: 2.0 }.validate(1).is_err());
        assert!(SummingParams::AsLinearPqr {
            p: 1.0,
            q: 2.0,
            r: Exp::finite(2.0)
        }
        .validate(1)
        .is_ok());
        assert!(SummingParams::MultipleR {
            p: 1.0,
            q_list: vec![4.0, 4.0],
            r: Exp::finite(4.0)
        }
        .validate(2)
        .is_err());
        assert!(SummingParams::MixingMulti {
            s: 2.0,
            q: 1.0,
            p_list: vec![1.0, 1.0]
        }
        .validate(2)
        .is_ok());
        assert!(SummingParams::MixingMulti {
            s: 2.0,
            q: 1.0,
            p_list: vec![1.5, 1.0]
        }
        .validate(2)
        .is_err());
    }

    #[test]
    fn identity_on_l1_basis_witness() {
        // Identity on ℓ1², kind (1;1), witness (e₁, e₂): the outputs have
        // strong 1-norm 2 and the family has weak-1 norm 2 (the sup over the
        // sign box of |φ₁| + |φ₂|), for ratio 1.
        let t = id_on_l1(2);
        let space = t.domain[0];
        let fam = VectorFamily::new(
            space,
            vec![Vector::basis(space, 0), Vector::basis(space, 1)],
        )
        .unwrap();
        let witness = SummingWitness {
            x_families: vec![fam],
            phis: None,
            ratio: 0.0,
        };
        let params = SummingParams::AsLinear { p: 1.0, q: 1.0 };
        let (lhs, rhs) = lhs_rhs(&t, &params, &witness, SearchBudget::default()).unwrap();
        assert!((lhs - 2.0).abs() < 1e-12);
        assert!((rhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_on_l1_rademacher_witness_ratio_two() {
        // The classical witness for π₁(id: ℓ1² → ℓ1²) ≥ 2: x₁ = (1,1),
        // x₂ = (1,−1). Strong 1-norm of outputs is 4, weak-1 norm is 2.
        let t = id_on_l1(2);
        let space = t.domain[0];
        let fam = VectorFamily::new(
            space,
            vec![
                Vector::new(space, vec![1.0, 1.0]).unwrap(),
                Vector::new(space, vec![1.0, -1.0]).unwrap(),
            ],
        )
        .unwrap();
        let witness = SummingWitness {
            x_families: vec![fam],
            phis: None,
            ratio: 0.0,
        };
        let params = SummingParams::AsLinear { p: 1.0, q: 1.0 };
        let (lhs, rhs) = lhs_rhs(&t, &params, &witness, SearchBudget::default()).unwrap();
        assert!((lhs - 4.0).abs() < 1e-12);
        assert!((rhs - 2.0).abs() < 1e-12);
        assert!((lhs / rhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_map_gives_zero_lhs() {
        let space = SpaceSpec::linf(2);
        let t = MultilinearMap::scalar_form(vec![space, space], vec![0.0; 4]).unwrap();
        let fam = VectorFamily::new(
            space,
            vec![Vector::basis(space, 0), Vector::basis(space, 1)],
        )
        .unwrap();
        let witness = SummingWitness {
            x_families: vec![fam.clone(), fam],
            phis: None,
            ratio: 0.0,
        };
        let params = SummingParams::Multiple {
            p: 2.0,
            q_list: vec![1.0, 1.0],
        };
        let (lhs, _) = lhs_rhs(&t, &params, &witness, SearchBudget::default()).unwrap();
        assert_eq!(lhs, 0.0);
    }

    #[test]
    fn product_map_single_point_ratio_one() {
        // Tₙ with every input the scalar 1, m = 1, norming φ: LHS = RHS = 1.
        let one = SpaceSpec::scalar();
        let t = MultilinearMap::scalar_form(vec![one, one], vec![1.0]).unwrap();
        let unit = Vector::new(one, vec![1.0]).unwrap();
        let fam = VectorFamily::new(one, vec![unit.clone()]).unwrap();
        let out = t.evaluate(&[unit.clone(), unit.clone()]).unwrap();
        let phis = MultiIndexedFunctionals::new(
            one,
            vec![1, 1],
            vec![norming_functional(&out)],
        )
        .unwrap();
        let witness = SummingWitness {
            x_families: vec![fam.clone(), fam],
            phis: Some(phis),
            ratio: 0.0,
        };
        let params = SummingParams::MultipleR {
            p: 1.0,
            q_list: vec![1.0, 1.0],
            r: Exp::Inf,
        };
        let (lhs, rhs) = lhs_rhs(&t, &params, &witness, SearchBudget::default()).unwrap();
        assert!((lhs - 1.0).abs() < 1e-12);
        assert!((rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transport_preserves_ratio_for_unit_a() {
        let mut rng = crate::rng::seeded(9);
        let space = SpaceSpec::linf(2);
        let coeffs = crate::spaces::gaussian_coords(&mut rng, 8);
        let t = MultilinearMap::scalar_form(vec![space, space, space], coeffs).unwrap();
        let a = Vector::basis(space, 0); // unit norm in ℓ∞
        let ta = t.restrict(0, &a).unwrap();

        let fam = VectorFamily::new(
            space,
            vec![Vector::basis(space, 0), Vector::basis(space, 1)],
        )
        .unwrap();
        let ta_witness = SummingWitness {
            x_families: vec![fam.clone(), fam],
            phis: None,
            ratio: 0.0,
        };
        let sub_params = SummingParams::Multiple {
            p: 1.0,
            q_list: vec![1.0, 1.0],
        };
        let params = SummingParams::Multiple {
            p: 1.0,
            q_list: vec![1.0, 1.0, 1.0],
        };
        let (sub_lhs, sub_rhs) =
            lhs_rhs(&ta, &sub_params, &ta_witness, SearchBudget::default()).unwrap();
        let transported =
            restriction_transport(&t, &params, &a, &ta_witness, SearchBudget::default()).unwrap();
        let (lhs, rhs) = lhs_rhs(&t, &params, &transported, SearchBudget::default()).unwrap();
        assert!((lhs - sub_lhs).abs() < 1e-12);
        assert!((rhs - sub_rhs * a.norm()).abs() < 1e-12);
    }

    #[test]
    fn transport_with_zero_a_gives_zero_lhs() {
        let space = SpaceSpec::linf(2);
        let t = MultilinearMap::scalar_form(vec![space, space], vec![1.0, 0.0, 0.0, 1.0])
            .unwrap();
        let a = Vector::zero(space);
        let fam = VectorFamily::new(space, vec![Vector::basis(space, 0)]).unwrap();
        let ta_witness = SummingWitness {
            x_families: vec![fam],
            phis: None,
            ratio: 0.0,
        };
        let params = SummingParams::Multiple {
            p: 1.0,
            q_list: vec![1.0, 1.0],
        };
        let transported =
            restriction_transport(&t, &params, &a, &ta_witness, SearchBudget::default()).unwrap();
        let (lhs, _) = lhs_rhs(&t, &params, &transported, SearchBudget::default()).unwrap();
        assert_eq!(lhs, 0.0);
    }
}
