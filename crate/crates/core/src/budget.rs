//! Search budgets for the iterative lower/upper-bound estimators.

use serde::{Deserialize, Serialize};

/// Controls multi-start ascent/descent loops. All estimators are monotone in
/// the budget under a fixed seed: restart sets are nested (restart `i` always
/// uses the same derived stream), so growing `restarts` can only improve the
/// bound, and inner iterations only ever accept improving steps.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SearchBudget {
    pub restarts: usize,
    pub iters: usize,
    /// Largest family length per slot tried by summing-norm estimators.
    pub m_max: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 16,
            iters: 160,
            m_max: 4,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(self, seed: u64) -> Self {
        SearchBudget { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        SearchBudget { restarts, ..self }
    }

    pub fn with_iters(self, iters: usize) -> Self {
        SearchBudget { iters, ..self }
    }

    pub fn with_m_max(self, m_max: usize) -> Self {
        SearchBudget { m_max, ..self }
    }

    /// Default for multilinear operator-norm ascent, which needs more starts
    /// than the sequence-norm searches.
    pub fn op_norm_default() -> Self {
        SearchBudget::default().with_restarts(32)
    }
}
