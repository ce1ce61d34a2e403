use serde::{Deserialize, Serialize};

/// Numerical tolerances and search budgets used by every verdict in the toolkit.
///
/// Every check is a pure function of its inputs plus one of these; two runs
/// with the same config and seed produce identical results.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative slack for positive-semidefiniteness decisions.
    pub tol_psd: f64,
    /// Eigensolver convergence threshold (relative off-diagonal mass).
    pub tol_eig: f64,
    /// Relative Hermitian-deviation threshold.
    pub tol_herm: f64,
    /// Slack for certificate re-verification (transfer matrices, witnesses).
    pub tol_cert: f64,
    /// Iteration budget for alternating-projection feasibility runs.
    pub max_iters: usize,
    /// Random restarts for see-saw searches.
    pub restarts: usize,
    /// Seed for all randomized sweeps.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_psd: 1e-9,
            tol_eig: 1e-11,
            tol_herm: 1e-10,
            tol_cert: 1e-7,
            max_iters: 20_000,
            restarts: 64,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), crate::error::Error> {
        let all_pos = self.tol_psd > 0.0 && self.tol_eig > 0.0 && self.tol_herm > 0.0 && self.tol_cert > 0.0;
        if !all_pos {
            return Err(crate::error::Error::Schema("tolerances must be strictly positive".into()));
        }
        if self.restarts == 0 {
            return Err(crate::error::Error::Schema("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

/// Order-geometry constants of the target space.
///
/// Non-commutative function spaces are normal and generating with constant 2;
/// the off-diagonal estimates quote both the generic bound (which carries the
/// normality constant) and the symmetric-space bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpaceConstants {
    pub normality: f64,
    pub generating: f64,
}

impl Default for SpaceConstants {
    fn default() -> Self {
        // both equal 2 for non-commutative function spaces
        Self { normality: 2.0, generating: 2.0 }
    }
}
