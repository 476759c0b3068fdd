//! The universal return type of norm computations: a value, its certainty
//! kind, and the witness data achieving it.

use serde::{Deserialize, Serialize};

use crate::budget::SearchBudget;
use crate::seqnorms::{DiscreteMeasure, FactorizationWitness};
use crate::spaces::{Functional, Vector};
use crate::summing::SummingWitness;

/// `Exact` is only produced by closed forms or exhaustive enumeration;
/// optimization paths return the bound direction they certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    None,
    /// Maximizing dual functional (weak norms).
    Functional { phi: Functional },
    /// Achieved factorization (mixed norm, primal side).
    Factorization { factorization: FactorizationWitness },
    /// Achieved discrete measure on the dual ball (mixed norm, dual side).
    Measure { measure: DiscreteMeasure },
    /// Maximizing arguments of a multilinear map, plus the norming functional
    /// on the codomain when the ascent tracked one.
    Arguments {
        args: Vec<Vector>,
        codomain_functional: Option<Functional>,
    },
    /// Test data achieving a summing-norm ratio.
    Summing { witness: SummingWitness },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub witness: Witness,
    /// Budget actually used; `None` for closed forms.
    pub budget: Option<SearchBudget>,
}

impl NormEstimate {
    pub fn exact(value: f64, witness: Witness) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::Exact,
            witness,
            budget: None,
        }
    }

    pub fn lower(value: f64, witness: Witness, budget: SearchBudget) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::LowerBound,
            witness,
            budget: Some(budget),
        }
    }

    pub fn upper(value: f64, witness: Witness, budget: SearchBudget) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::UpperBound,
            witness,
            budget: Some(budget),
        }
    }
}
