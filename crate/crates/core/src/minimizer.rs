//! Numerical minimization of the potential over the fundamental domain.
//!
//! The last angle is pinned at `2π`, leaving `n−1` free angles subject to the
//! strict ordering `0 < θ_1 < … < θ_{n−1} < 2π`. The potential blows up at
//! collisions and has a unique interior minimum for fixed masses, which makes
//! a damped Newton iteration with a backtracking line search very effective:
//! steps that would violate the ordering (or approach a collision) are simply
//! rejected by the line search, and the Newton direction falls back to the
//! raw gradient whenever the Hessian solve fails or produces a non-descent
//! direction.
//!
//! Non-convergence is reported, not raised: callers inspect
//! [`MinimizerResult::converged`].

use crate::error::{Error, Result};
use crate::geometry::{AngleConfig, DEGENERACY_THRESHOLD};
use crate::potential::{grad_theta, u_alpha, Alpha, MassVector};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Accepted steps with infinity norm at or below this floor stop the
/// iteration: progress has fallen below representable resolution.
const STEP_FLOOR: f64 = 1e-14;

/// Armijo sufficient-decrease constant for the backtracking line search.
const ARMIJO_SLOPE: f64 = 1e-4;

/// Maximum number of step halvings per line search.
const MAX_BACKTRACKS: u32 = 60;

/// Knobs for [`find_minimizer`].
#[derive(Debug, Clone)]
pub struct MinimizerOptions {
    /// Convergence threshold on the max-abs angle gradient.
    pub tolerance: f64,
    /// Iteration cap; hitting it yields a non-converged result.
    pub max_iterations: usize,
    /// Starting configuration; the regular polygon when absent.
    pub initial: Option<AngleConfig>,
}

impl Default for MinimizerOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-11,
            max_iterations: 10_000,
            initial: None,
        }
    }
}

/// Outcome of a minimization run.
#[derive(Debug, Clone)]
pub struct MinimizerResult {
    /// Final configuration, pinned to the fundamental domain.
    pub theta: AngleConfig,
    /// Number of accepted descent steps.
    pub iterations: usize,
    /// Max-abs component of the angle gradient at `theta`.
    pub grad_norm: f64,
    /// Whether `grad_norm` reached the requested tolerance.
    pub converged: bool,
    /// Potential value at `theta`.
    pub objective: f64,
}

/// Summary of repeated minimizations from randomized starting points.
#[derive(Debug, Clone, Copy)]
pub struct MultiStartReport {
    /// Total runs (the regular-polygon baseline plus the randomized starts).
    pub runs: usize,
    /// How many of them converged.
    pub converged_runs: usize,
    /// Largest per-angle spread across the converged minimizers; small values
    /// are evidence that every start found the same minimum.
    pub max_deviation: f64,
}

/// True when a configuration lies in the interior of the fundamental domain:
/// last angle pinned at `2π` and every circular gap clear of the collision
/// threshold. Strict ordering is already guaranteed by [`AngleConfig`].
pub fn is_interior(theta: &AngleConfig) -> bool {
    theta.is_fundamental() && theta.min_circular_gap() > DEGENERACY_THRESHOLD
}

/// Regular-polygon free angles `2πk/n`, `k = 1..n−1`.
fn regular_free_angles(n: usize) -> Vec<f64> {
    (1..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// Builds the full configuration from free angles, rejecting candidates that
/// leave the fundamental domain or approach a collision.
fn assemble_if_valid(free: &[f64]) -> Option<AngleConfig> {
    if free[0] <= DEGENERACY_THRESHOLD {
        return None;
    }
    if *free.last().unwrap() >= TAU - DEGENERACY_THRESHOLD {
        return None;
    }
    if free
        .windows(2)
        .any(|w| w[1] - w[0] <= DEGENERACY_THRESHOLD)
    {
        return None;
    }
    let mut angles = free.to_vec();
    angles.push(TAU);
    AngleConfig::new(angles).ok()
}

/// Hessian of the potential with respect to the free angles.
///
/// For a pair at separation `d` with chord `r`, the second derivative of the
/// pair term is `φ''(d) = −α (cos d · r^{−α−2} − (α+2) sin²d · r^{−α−4})`;
/// the diagonal accumulates all pairs touching an angle (including the pinned
/// one), while off-diagonal entries get the negated pair term.
fn hessian_free(m: &MassVector, theta: &AngleConfig, alpha: Alpha) -> Result<DMatrix<f64>> {
    let n = m.len();
    let t = theta.as_slice();
    let w = m.as_slice();
    let a = alpha.value();
    let mut h = DMatrix::zeros(n - 1, n - 1);
    for k in 0..n {
        for l in (k + 1)..n {
            let d = t[k] - t[l];
            let r = crate::geometry::chord_distance(t[k], t[l])?;
            let phi2 = -a * (d.cos() * r.powf(-a - 2.0) - (a + 2.0) * d.sin().powi(2) * r.powf(-a - 4.0));
            let c = w[k] * w[l] * phi2;
            if k < n - 1 {
                h[(k, k)] += c;
            }
            if l < n - 1 {
                h[(l, l)] += c;
            }
            if k < n - 1 && l < n - 1 {
                h[(k, l)] -= c;
                h[(l, k)] -= c;
            }
        }
    }
    Ok(h)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Core iteration with an observer invoked on the objective value at the
/// start and after every accepted step; tests use it to verify monotone
/// descent.
fn minimize_inner(
    m: &MassVector,
    alpha: Alpha,
    options: &MinimizerOptions,
    mut observe: impl FnMut(f64),
) -> Result<MinimizerResult> {
    if !options.tolerance.is_finite() || options.tolerance <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive and finite, got {}",
            options.tolerance
        )));
    }
    let n = m.len();
    let mut free: Vec<f64> = match &options.initial {
        Some(start) => {
            if start.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "initial configuration of {} angles vs {} masses",
                    start.len(),
                    n
                )));
            }
            if !start.is_fundamental() {
                return Err(Error::InvalidAngles(
                    "initial configuration must have its last angle pinned at 2π".into(),
                ));
            }
            start.as_slice()[..n - 1].to_vec()
        }
        None => regular_free_angles(n),
    };
    let mut theta = assemble_if_valid(&free).ok_or_else(|| {
        Error::InvalidAngles("initial configuration is degenerate".into())
    })?;
    let mut objective = u_alpha(m, &theta, alpha)?;
    let mut gradient = grad_theta(m, &theta, alpha)?;
    let mut grad_norm = max_abs(&gradient);
    observe(objective);

    let mut iterations = 0;
    while iterations < options.max_iterations && grad_norm > options.tolerance {
        let g_free = DVector::from_iterator(n - 1, gradient[..n - 1].iter().copied());
        // Newton direction, with a plain gradient-descent fallback when the
        // Hessian solve fails or does not yield a descent direction.
        let newton = hessian_free(m, &theta, alpha)?
            .lu()
            .solve(&(-&g_free))
            .filter(|p| p.iter().all(|v| v.is_finite()) && p.dot(&g_free) < 0.0);
        let direction = newton.unwrap_or_else(|| -&g_free);
        let slope = direction.dot(&g_free);

        let mut accepted_step = None;
        let mut t = 1.0;
        for _ in 0..MAX_BACKTRACKS {
            let candidate: Vec<f64> = free
                .iter()
                .zip(direction.iter())
                .map(|(x, p)| x + t * p)
                .collect();
            if let Some(candidate_theta) = assemble_if_valid(&candidate) {
                let candidate_objective = u_alpha(m, &candidate_theta, alpha)?;
                // Sufficient decrease, relaxed by a rounding-noise allowance:
                // near the minimum the true decrease of a contracting Newton
                // step falls below the resolution of the objective itself,
                // and strict Armijo would reject every step.
                let noise = 16.0 * f64::EPSILON * objective.abs();
                if candidate_objective <= objective + ARMIJO_SLOPE * t * slope + noise {
                    accepted_step = Some((candidate, candidate_theta, candidate_objective, t));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((candidate, candidate_theta, candidate_objective, t)) = accepted_step else {
            // No admissible decreasing step left; report the current point.
            break;
        };
        let step_norm = direction.iter().fold(0.0f64, |acc, p| acc.max((t * p).abs()));
        free = candidate;
        theta = candidate_theta;
        objective = candidate_objective;
        gradient = grad_theta(m, &theta, alpha)?;
        grad_norm = max_abs(&gradient);
        iterations += 1;
        observe(objective);
        if step_norm <= STEP_FLOOR {
            break;
        }
    }

    Ok(MinimizerResult {
        converged: grad_norm <= options.tolerance,
        theta,
        iterations,
        grad_norm,
        objective,
    })
}

/// Minimizes the potential over the fundamental domain for fixed masses.
///
/// Starts from the regular polygon unless `options.initial` overrides it.
/// A result with `converged == false` means the tolerance was not met within
/// the iteration budget; the best configuration found is still returned.
pub fn find_minimizer(
    m: &MassVector,
    alpha: Alpha,
    options: &MinimizerOptions,
) -> Result<MinimizerResult> {
    minimize_inner(m, alpha, options, |_| {})
}

/// Reruns the minimizer from `n_starts` randomized starting points (the
/// regular polygon perturbed per-angle by up to 40% of its gap, re-sorted)
/// and reports how far the converged minimizers spread apart. Deterministic
/// for a fixed seed.
pub fn multi_start_check(
    m: &MassVector,
    alpha: Alpha,
    n_starts: usize,
    seed: u64,
) -> Result<MultiStartReport> {
    let n = m.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gap = TAU / n as f64;
    let mut minimizers: Vec<Vec<f64>> = Vec::new();
    let mut runs = 0;
    let run = |options: &MinimizerOptions, minimizers: &mut Vec<Vec<f64>>| -> Result<()> {
        let result = find_minimizer(m, alpha, options)?;
        if result.converged {
            minimizers.push(result.theta.as_slice().to_vec());
        }
        Ok(())
    };
    run(&MinimizerOptions::default(), &mut minimizers)?;
    runs += 1;
    for _ in 0..n_starts {
        let mut free = regular_free_angles(n);
        for x in free.iter_mut() {
            *x += rng.random_range(-0.4..0.4) * gap;
        }
        free.sort_unstable_by(f64::total_cmp);
        let initial = assemble_if_valid(&free).ok_or_else(|| {
            Error::InvalidAngles("randomized start collapsed to a degenerate configuration".into())
        })?;
        run(
            &MinimizerOptions {
                initial: Some(initial),
                ..MinimizerOptions::default()
            },
            &mut minimizers,
        )?;
        runs += 1;
    }
    let converged_runs = minimizers.len();
    let mut max_deviation = 0.0f64;
    if converged_runs > 1 {
        for i in 0..n {
            let column = minimizers.iter().map(|t| t[i]);
            let lo = column.clone().fold(f64::INFINITY, f64::min);
            let hi = column.fold(f64::NEG_INFINITY, f64::max);
            max_deviation = max_deviation.max(hi - lo);
        }
    }
    Ok(MultiStartReport {
        runs,
        converged_runs,
        max_deviation,
    })
}
