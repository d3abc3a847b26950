//! Symmetry-based exclusion certificates for minimizing configurations.
//!
//! At the minimizing configuration `θ_m` of a mass vector `m`, evaluate the
//! quadratic form `vᵀ H v` of the interaction matrix along every direction
//! `v = g·m − m`, `g` ranging over the dihedral group. Because the potential
//! is exactly quadratic in the masses and `θ_m` is its constrained minimizer,
//! a strictly negative value for any `g` certifies that no mass distribution
//! in the dihedral orbit of `m` can satisfy the balance conditions of a
//! centered co-circular central configuration: the verdict `excluded`.
//!
//! The converse does not hold — an all-nonnegative scan is `not_excluded`,
//! not a proof of existence. Strictness is decided against a rounding margin
//! scaled to the matrix and the direction entries, so verdicts never hinge
//! on values that are zero up to noise.

use crate::dihedral::{enumerate_group, DihedralElement};
use crate::error::Result;
use crate::geometry::AngleConfig;
use crate::minimizer::{find_minimizer, MinimizerOptions};
use crate::potential::{grad_mass, interaction_matrix, quadratic_form, Alpha, MassVector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Relative factor deciding when a scan value counts as strictly negative.
const MARGIN_FACTOR: f64 = 1e-9;

/// Outcome of a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some symmetry direction is certified negative: no centered co-circular
    /// central configuration exists for these masses (in any dihedral
    /// relabeling).
    Excluded,
    /// Every scan value is nonnegative up to the margin. No conclusion about
    /// existence — the criterion only ever rules out.
    NotExcluded,
    /// The minimizer did not converge, so the scan point is unreliable.
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Excluded => "excluded",
            Verdict::NotExcluded => "not_excluded",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Full record of one certification: the minimizing configuration, the scan
/// values over the whole group, and the derived verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// The mass vector that was certified.
    pub masses: Vec<f64>,
    /// Potential exponent.
    pub alpha: f64,
    /// Minimizing (or, when not converged, last visited) configuration.
    pub theta: Vec<f64>,
    /// Whether the minimizer converged.
    pub converged: bool,
    /// Descent steps the minimizer took.
    pub iterations: usize,
    /// Max-abs angle gradient at `theta`.
    pub grad_norm: f64,
    /// Scan values `vᵀHv`, keyed by group element (`"P^h S^l"`).
    pub criterion_values: BTreeMap<String, f64>,
    /// Smallest scan value.
    pub min_value: f64,
    /// Group element achieving `min_value`, present only when it is certified
    /// negative.
    pub witness: Option<String>,
    /// Rounding margin the verdict was decided against.
    pub margin: f64,
    /// Max-abs deviation of the mass-gradient components from their mean; a
    /// balance check that vanishes for genuinely symmetric configurations.
    pub moment_residual: f64,
    /// The derived verdict.
    pub verdict: Verdict,
}

/// Evaluates the scan values `(g·m − m)ᵀ H (g·m − m)` for every element of
/// the dihedral group on `n` labels, in enumeration order (identity first).
///
/// `theta` is typically the minimizing configuration of `m`; the values are
/// well defined at any configuration.
pub fn wang_scan(
    m: &MassVector,
    theta: &AngleConfig,
    alpha: Alpha,
) -> Result<Vec<(DihedralElement, f64)>> {
    let h = interaction_matrix(theta, alpha)?;
    if h.dim() != m.len() {
        return Err(crate::error::Error::DimensionMismatch(format!(
            "{} masses vs {} angles",
            m.len(),
            theta.len()
        )));
    }
    let mass_values = m.as_slice();
    enumerate_group(m.len())?
        .into_iter()
        .map(|g| {
            let moved = g.act_on_masses(m)?;
            let direction: Vec<f64> = moved
                .as_slice()
                .iter()
                .zip(mass_values)
                .map(|(a, b)| a - b)
                .collect();
            Ok((g, quadratic_form(&h, &direction)?))
        })
        .collect()
}

/// Max-abs deviation of the mass-gradient components `Σ_{j≠k} m_j / r_jk^α`
/// from their mean. At a centered co-circular central configuration these
/// components are all equal; the residual measures how far the balance is off.
pub fn moment_residual(m: &MassVector, theta: &AngleConfig, alpha: Alpha) -> Result<f64> {
    let g = grad_mass(m, theta, alpha)?;
    let mean: f64 = g.iter().sum::<f64>() / g.len() as f64;
    Ok(g.iter().fold(0.0f64, |acc, x| acc.max((x - mean).abs())))
}

/// Runs the full certification pipeline: minimize, scan, decide.
pub fn certify(m: &MassVector, alpha: Alpha, options: &MinimizerOptions) -> Result<CertificateReport> {
    let minimized = find_minimizer(m, alpha, options)?;
    let h = interaction_matrix(&minimized.theta, alpha)?;
    let scan = wang_scan(m, &minimized.theta, alpha)?;

    // Rounding margin: proportional to the largest matrix entry, the largest
    // direction entry (squared), and the number of terms in the form.
    let max_direction = scan
        .iter()
        .map(|(g, _)| {
            let moved = g.act_on_masses(m)?;
            Ok(moved
                .as_slice()
                .iter()
                .zip(m.as_slice())
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs())))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let n = m.len() as f64;
    let margin = MARGIN_FACTOR * h.max_abs_entry() * max_direction * max_direction * n * n;

    let (argmin, min_value) = scan
        .iter()
        .map(|(g, v)| (*g, *v))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("group enumeration is never empty");
    let certified_negative = min_value < -margin;
    let verdict = if !minimized.converged {
        Verdict::Inconclusive
    } else if certified_negative {
        Verdict::Excluded
    } else {
        Verdict::NotExcluded
    };
    let witness = (verdict == Verdict::Excluded).then(|| argmin.to_string());

    Ok(CertificateReport {
        masses: m.as_slice().to_vec(),
        alpha: alpha.value(),
        theta: minimized.theta.as_slice().to_vec(),
        converged: minimized.converged,
        iterations: minimized.iterations,
        grad_norm: minimized.grad_norm,
        criterion_values: scan
            .into_iter()
            .map(|(g, v)| (g.to_string(), v))
            .collect(),
        min_value,
        witness,
        margin,
        moment_residual: moment_residual(m, &minimized.theta, alpha)?,
        verdict,
    })
}
