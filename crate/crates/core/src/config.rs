use serde::{Deserialize, Serialize};

/// Tolerances and search budgets shared by all operations.
///
/// A metric carries the configuration it was validated with; values derived
/// from it (retriangulations, surgery results) inherit it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// A vertex is essential when its deficit exceeds this (radians).
    pub angle_eps: f64,
    /// Faces with Heron area below `degeneracy_floor * max_len^2` are rejected.
    pub degeneracy_floor: f64,
    /// Absolute tolerance for the total deficit check.
    pub gauss_bonnet_tol: f64,
    /// Maximum number of windows expanded by one geodesic search.
    pub geodesic_budget: usize,
    /// Maximum number of triangulations visited by the four-vertex flip search.
    pub flip_budget: usize,
    /// Relative cap on per-edge embedding residuals (times the diameter).
    pub residual_cap: f64,
    /// Tolerance used when comparing isometry fingerprints.
    pub fingerprint_tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            angle_eps: 1e-9,
            degeneracy_floor: 1e-12,
            gauss_bonnet_tol: 1e-9,
            geodesic_budget: 1_000_000,
            flip_budget: 10_000,
            residual_cap: 1e-8,
            fingerprint_tol: 1e-6,
        }
    }
}

impl Config {
    /// Returns an error naming the first non-positive tolerance.
    pub fn check(&self) -> crate::Result<()> {
        let named = [
            ("angle_eps", self.angle_eps),
            ("degeneracy_floor", self.degeneracy_floor),
            ("gauss_bonnet_tol", self.gauss_bonnet_tol),
            ("residual_cap", self.residual_cap),
            ("fingerprint_tol", self.fingerprint_tol),
        ];
        for (name, value) in named {
            if !(value > 0.0 && value.is_finite()) {
                return Err(crate::Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        if self.geodesic_budget == 0 || self.flip_budget == 0 {
            return Err(crate::Error::InvalidConfig("budgets must be positive".into()));
        }
        Ok(())
    }
}
