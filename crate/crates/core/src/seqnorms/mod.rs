//! Sequence norms on finite vector families: strong ℓp, weak ℓp, and the
//! mixed (s,q) norm in primal (factorization) and dual (Maurey) form.
//!
//! Strong norms are closed forms. Weak norms are exact maxima over dual-ball
//! extreme points when those are enumerable, otherwise certified lower bounds
//! from multi-start ascent. The mixed norm is bracketed: the primal descent
//! over factorizations yields an upper bound, the dual search over discrete
//! probability measures a lower bound, and callers get both sides.

mod mixed;
mod weak;

pub use mixed::{
    maurey_philist_value, maximize_philist, mixed_norm_dual, mixed_norm_dual_with_atoms,
    mixed_norm_primal,
};
pub use weak::{weak_norm, weak_norm_value_at};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{NormEstimate, Witness};
use crate::exp::{lp_norm, Exp};
use crate::spaces::{Functional, SpaceSpec, Vector};

/// A finite indexed family of vectors sharing one space. `shape` is the
/// multi-index box for families indexed over ℕ_{m₁}×…×ℕ_{mₙ} (row-major);
/// flat families have shape `[m]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorFamily {
    pub space: SpaceSpec,
    pub members: Vec<Vector>,
    pub shape: Vec<usize>,
}

impl VectorFamily {
    pub fn new(space: SpaceSpec, members: Vec<Vector>) -> Result<Self> {
        let shape = vec![members.len()];
        Self::with_shape(space, members, shape)
    }

    pub fn with_shape(space: SpaceSpec, members: Vec<Vector>, shape: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidFamily("family must have m >= 1 members".into()));
        }
        if shape.iter().product::<usize>() != members.len() {
            return Err(Error::InvalidFamily(format!(
                "shape {:?} does not match member count {}",
                shape,
                members.len()
            )));
        }
        for v in &members {
            if v.space != space {
                return Err(Error::SpaceMismatch(
                    "family members must share the family space".into(),
                ));
            }
        }
        Ok(VectorFamily {
            space,
            members,
            shape,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn scale(&self, c: f64) -> VectorFamily {
        VectorFamily {
            space: self.space,
            members: self.members.iter().map(|v| v.scale(c)).collect(),
            shape: self.shape.clone(),
        }
    }

    /// Family of the coefficient rows as vectors of the dual space; used to
    /// take weak norms of functional families.
    pub fn from_functionals(space: SpaceSpec, phis: &[Functional]) -> Result<Self> {
        let dual = space.dual();
        let members = phis
            .iter()
            .map(|f| Vector::new(dual, f.coords.clone()))
            .collect::<Result<Vec<_>>>()?;
        VectorFamily::new(dual, members)
    }
}

/// Strong ℓp norm: the ℓp norm of the member norms. Exact.
pub fn strong_norm(fam: &VectorFamily, p: Exp) -> NormEstimate {
    let value = lp_norm(fam.members.iter().map(|v| v.norm()), p);
    NormEstimate::exact(value, Witness::None)
}

/// Witness for `x_i = τ_i · y_i` factorizations of the mixed norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationWitness {
    pub taus: Vec<f64>,
    pub ys: VectorFamily,
}

impl FactorizationWitness {
    /// Checks that `taus[i] * ys[i]` reconstructs `members[i]` to 1e-10 and
    /// that `taus[i] > 0` wherever the member is nonzero.
    pub fn validate(&self, fam: &VectorFamily) -> Result<()> {
        if self.taus.len() != fam.len() || self.ys.len() != fam.len() {
            return Err(Error::InvalidWitness(
                "factorization length must match the family".into(),
            ));
        }
        for i in 0..fam.len() {
            let member = &fam.members[i];
            if !member.is_zero() && self.taus[i] <= 0.0 {
                return Err(Error::InvalidWitness(format!(
                    "tau[{i}] must be positive for a nonzero member"
                )));
            }
            for (d, &xc) in member.coords.iter().enumerate() {
                let rec = self.taus[i] * self.ys.members[i].coords[d];
                if (rec - xc).abs() > 1e-10 * (1.0 + xc.abs()) {
                    return Err(Error::InvalidWitness(format!(
                        "tau[{i}] * y[{i}] fails to reconstruct member {i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A discrete probability measure on the dual unit ball.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Functional>,
    pub weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Functional>, weights: Vec<f64>) -> Result<Self> {
        let m = DiscreteMeasure { atoms, weights };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.atoms.len() != self.weights.len() || self.atoms.is_empty() {
            return Err(Error::InvalidWitness(
                "measure needs matching nonempty atoms and weights".into(),
            ));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWitness(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        if self.weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidWitness("weights must be nonnegative".into()));
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if a.dual_norm() > 1.0 + 1e-12 {
                return Err(Error::InvalidWitness(format!(
                    "atom {i} lies outside the dual unit ball"
                )));
            }
        }
        Ok(())
    }

    /// The Maurey functional `(Σ_j (Σ_a w_a |⟨φ_a, z_j⟩|^s)^{q/s})^{1/q}`.
    pub fn maurey_value(&self, fam: &VectorFamily, s: f64, q: f64) -> f64 {
        let mut acc = 0.0;
        for z in &fam.members {
            let mut inner = 0.0;
            for (a, &w) in self.atoms.iter().zip(&self.weights) {
                inner += w * crate::exp::abs_pow(a.apply(z), s);
            }
            acc += inner.powf(q / s);
        }
        acc.powf(1.0 / q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::Exp;

    fn fam(space: SpaceSpec, rows: &[&[f64]]) -> VectorFamily {
        let members = rows
            .iter()
            .map(|r| Vector::new(space, r.to_vec()).unwrap())
            .collect();
        VectorFamily::new(space, members).unwrap()
    }

    #[test]
    fn strong_norm_examples() {
        let l2 = SpaceSpec::lp(2.0, 2);
        // Single vector family: its norm.
        let single = fam(l2, &[&[3.0, 4.0]]);
        assert!((strong_norm(&single, Exp::finite(2.0)).value - 5.0).abs() < 1e-12);
        // Two unit vectors at p = 2: sqrt(2).
        let two = fam(l2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!((strong_norm(&two, Exp::finite(2.0)).value - 2.0f64.sqrt()).abs() < 1e-12);
        // p = infinity: max member norm.
        let mixed = fam(l2, &[&[3.0, 4.0], &[1.0, 0.0]]);
        assert!((strong_norm(&mixed, Exp::Inf).value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn family_shape_must_match() {
        let l2 = SpaceSpec::lp(2.0, 2);
        let members = vec![Vector::zero(l2), Vector::zero(l2)];
        assert!(VectorFamily::with_shape(l2, members, vec![3]).is_err());
    }

    #[test]
    fn measure_validation() {
        let space = SpaceSpec::lp(2.0, 2);
        let phi = Functional::new(space, vec![1.0, 0.0]).unwrap();
        assert!(DiscreteMeasure::new(vec![phi.clone()], vec![1.0]).is_ok());
        assert!(DiscreteMeasure::new(vec![phi.clone()], vec![0.5]).is_err());
        let big = Functional::new(space, vec![2.0, 0.0]).unwrap();
        assert!(DiscreteMeasure::new(vec![big], vec![1.0]).is_err());
    }
}
