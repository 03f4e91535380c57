//! Verification harness: parameter grids, randomized sweeps, audits and
//! reports. The CLI is a thin layer over this module.

mod report;
mod suites;

pub use report::{render_bounds, render_expand, render_reports, BoundsRow, ExpandOutput, ExpandReportRow, Format, GridPoint, SuiteReport, Witness};
pub use suites::{
    expand_command, run_bounds_table, run_extremal_suite, run_hk_audit, run_nehari_suite, run_random_suite,
};

use crate::error::{usage, Result};
use crate::scalar::Scalar;
use crate::series::DEFAULT_ORDER;

/// Parameter grid for the sweeps.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<S: Scalar> {
    pub n_values: Vec<u32>,
    pub alpha_values: Vec<S>,
    pub beta_values: Vec<S>,
    pub k_max: usize,
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
}

pub const DEFAULT_N: [u32; 4] = [0, 1, 2, 3];
pub const DEFAULT_ALPHA: [&str; 6] = ["1.1", "1.5", "2", "3", "5", "10"];
pub const DEFAULT_BETA: [&str; 4] = ["0", "0.25", "0.5", "0.9"];
pub const DEFAULT_K_MAX: usize = 12;
pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x5eed;

impl<S: Scalar> Default for GridSpec<S> {
    fn default() -> Self {
        Self {
            n_values: DEFAULT_N.to_vec(),
            alpha_values: DEFAULT_ALPHA.iter().map(|s| S::parse(s).expect("literal")).collect(),
            beta_values: DEFAULT_BETA.iter().map(|s| S::parse(s).expect("literal")).collect(),
            k_max: DEFAULT_K_MAX,
            order: DEFAULT_ORDER,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

impl<S: Scalar> GridSpec<S> {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return usage("grid needs at least one n value");
        }
        if self.alpha_values.is_empty() {
            return usage("grid needs at least one alpha value");
        }
        if self.beta_values.is_empty() {
            return usage("grid needs at least one beta value");
        }
        if self.k_max < 2 {
            return usage(format!("k_max must be at least 2, got {}", self.k_max));
        }
        if self.order < self.k_max {
            return usage(format!("order {} must be at least k_max {}", self.order, self.k_max));
        }
        if self.trials == 0 {
            return usage("trials must be at least 1");
        }
        if let Some(a) = self.alpha_values.iter().find(|a| **a <= S::zero()) {
            return usage(format!("alpha must be positive, got {a}"));
        }
        if let Some(b) = self.beta_values.iter().find(|b| **b < S::zero() || **b >= S::one()) {
            return usage(format!("beta must lie in [0, 1), got {b}"));
        }
        Ok(())
    }

    /// Grid points in (n, alpha, beta) lexicographic order.
    pub fn points(&self) -> Vec<(u32, S, S)> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            for a in &self.alpha_values {
                for b in &self.beta_values {
                    out.push((n, a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub(crate) fn require_alpha_above_one(&self, suite: &str) -> Result<()> {
        if let Some(a) = self.alpha_values.iter().find(|a| **a <= S::one()) {
            return usage(format!("{suite} needs every alpha > 1, got {a}"));
        }
        Ok(())
    }
}

/// Tolerances and sampling knobs shared by the suites.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Relative tolerance for `|a_k| = bound` on the float backend. The
    /// rational backend always demands equality.
    pub extremal_rel_tol: f64,
    /// Absolute slack added to bounds in inequality checks (float backend).
    pub slack: f64,
    pub radius: f64,
    pub samples: usize,
    /// Upper limit on the atom count of random generators.
    pub max_atoms: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            extremal_rel_tol: 1e-10,
            slack: 1e-9,
            radius: 0.99,
            samples: 720,
            max_atoms: 6,
        }
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Seed of trial `trial` at the grid point labelled `key`:
/// `seed XOR splitmix64(fnv1a64(key) + trial)`. Independent of scheduling,
/// so serial and parallel runs draw identical generators.
pub fn trial_seed(seed: u64, key: &str, trial: u64) -> u64 {
    seed ^ splitmix64(fnv1a64(key.as_bytes()).wrapping_add(trial))
}
