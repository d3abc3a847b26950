//! The power-law pair potential on the circle and its derivatives.
//!
//! For masses `m` at circle angles `θ` the potential is
//!
//! ```text
//! U_α(m, θ) = Σ_{j<k} m_j m_k / r_jk^α,      r_jk = 2 |sin((θ_j − θ_k)/2)|,
//! ```
//!
//! with exponent `α > 0` (α = 1 is the Newtonian case). `U_α` is quadratic in
//! the masses: with the interaction matrix `H` (zero diagonal, `1/r_jk^α` off
//! it) one has `U_α(m, θ) = ½ · mᵀH m`, the mass gradient is `H m`, and the
//! second-order mass expansion provided by [`taylor_expand_mass`] is exact.
//! That quadratic structure is what the certificate machinery exploits.

use crate::error::{Error, Result};
use crate::geometry::{chord_distance, AngleConfig};

/// The potential exponent: a positive finite real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    /// Validates an exponent.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidAlpha(format!(
                "exponent must be positive and finite, got {value}"
            )));
        }
        Ok(Self(value))
    }

    /// The raw exponent value.
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A vector of at least two positive finite masses.
#[derive(Debug, Clone, PartialEq)]
pub struct MassVector {
    masses: Vec<f64>,
}

impl MassVector {
    /// Validates and wraps a mass vector.
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        if masses.len() < 2 {
            return Err(Error::InvalidMasses(format!(
                "need at least 2 masses, got {}",
                masses.len()
            )));
        }
        if masses.iter().any(|m| !m.is_finite() || *m <= 0.0) {
            return Err(Error::InvalidMasses(
                "masses must be positive and finite".into(),
            ));
        }
        Ok(Self { masses })
    }

    /// `n` unit masses.
    pub fn equal(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    /// Number of bodies.
    pub fn len(&self) -> usize {
        self.masses.len()
    }

    /// True when the vector is empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// The masses as a slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.masses
    }
}

fn check_dims(m: &MassVector, theta: &AngleConfig) -> Result<()> {
    if m.len() != theta.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} masses vs {} angles",
            m.len(),
            theta.len()
        )));
    }
    Ok(())
}

/// Evaluates the pair sum for arbitrary real weights. `u_alpha` restricts the
/// weights to validated masses; the Taylor expansion also needs displaced
/// (possibly non-positive) weight vectors, for which the sum is still defined.
fn pair_sum(weights: &[f64], theta: &AngleConfig, alpha: Alpha) -> Result<f64> {
    let t = theta.as_slice();
    let a = -alpha.value();
    let mut total = 0.0;
    for j in 0..weights.len() {
        for k in (j + 1)..weights.len() {
            total += weights[j] * weights[k] * chord_distance(t[j], t[k])?.powf(a);
        }
    }
    Ok(total)
}

/// The potential `U_α(m, θ) = Σ_{j<k} m_j m_k / r_jk^α`.
pub fn u_alpha(m: &MassVector, theta: &AngleConfig, alpha: Alpha) -> Result<f64> {
    check_dims(m, theta)?;
    pair_sum(m.as_slice(), theta, alpha)
}

/// Angle gradient `∂U_α/∂θ_k = −α Σ_{j≠k} m_j m_k sin(θ_k − θ_j) / r_jk^{α+2}`.
///
/// The components sum to zero: rotating every point together does not change
/// any chord.
pub fn grad_theta(m: &MassVector, theta: &AngleConfig, alpha: Alpha) -> Result<Vec<f64>> {
    check_dims(m, theta)?;
    let n = m.len();
    let t = theta.as_slice();
    let w = m.as_slice();
    let a = alpha.value();
    let mut grad = vec![0.0; n];
    for k in 0..n {
        for j in 0..n {
            if j == k {
                continue;
            }
            let r = chord_distance(t[k], t[j])?;
            grad[k] -= a * w[j] * w[k] * (t[k] - t[j]).sin() * r.powf(-a - 2.0);
        }
    }
    Ok(grad)
}

/// Symmetric matrix of inverse chord powers: `H_jk = 1/r_jk^α` off the
/// diagonal, zero on it. The quadratic form `vᵀH v` of this matrix is the
/// certificate quantity; the potential itself is `½ · mᵀH m`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    alpha: f64,
    entries: Vec<Vec<f64>>,
}

impl InteractionMatrix {
    /// Matrix dimension (number of bodies).
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// The exponent the entries were computed with.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Entry `H_ij`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Matrix-vector product `H v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} vs matrix of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(h, x)| h * x).sum())
            .collect())
    }

    /// Largest entry magnitude, used to scale certification margins.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }
}

/// Builds the interaction matrix of a configuration.
pub fn interaction_matrix(theta: &AngleConfig, alpha: Alpha) -> Result<InteractionMatrix> {
    let n = theta.len();
    let t = theta.as_slice();
    let a = -alpha.value();
    let mut entries = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let h = chord_distance(t[i], t[j])?.powf(a);
            entries[i][j] = h;
            entries[j][i] = h;
        }
    }
    Ok(InteractionMatrix {
        alpha: alpha.value(),
        entries,
    })
}

/// Mass gradient `(∂U_α/∂m_k)_k = (Σ_{j≠k} m_j / r_jk^α)_k`, i.e. `H m`.
///
/// Computed literally as the interaction matrix applied to the masses, so it
/// shares every arithmetic step with [`InteractionMatrix::apply`].
pub fn grad_mass(m: &MassVector, theta: &AngleConfig, alpha: Alpha) -> Result<Vec<f64>> {
    check_dims(m, theta)?;
    interaction_matrix(theta, alpha)?.apply(m.as_slice())
}

/// The quadratic form `vᵀH v`. With the zero diagonal this reduces to
/// `2 Σ_{i<j} H_ij v_i v_j`.
pub fn quadratic_form(h: &InteractionMatrix, v: &[f64]) -> Result<f64> {
    if v.len() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} vs matrix of dimension {}",
            v.len(),
            h.dim()
        )));
    }
    let mut total = 0.0;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            total += 2.0 * h.get(i, j) * v[i] * v[j];
        }
    }
    Ok(total)
}

/// Second-order expansion of `U_α` in the masses along a direction `v`:
/// `U_α(m + v, θ) − U_α(m, θ) = v·∇_m U_α + ½ vᵀH v`, exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MassExpansion {
    /// `U_α(m, θ)`.
    pub base_value: f64,
    /// `v · ∇_m U_α(m, θ)`.
    pub linear_term: f64,
    /// `½ vᵀ H v`.
    pub quadratic_term: f64,
    /// `U_α(m + v, θ) − U_α(m, θ)`, evaluated directly.
    pub exact_difference: f64,
    /// `|exact_difference − (linear_term + quadratic_term)|` relative to the
    /// largest magnitude among the recorded quantities. Rounding noise only:
    /// the expansion is algebraically exact.
    pub residual: f64,
}

/// Expands the potential to second order in the masses along `v`. Since `U_α`
/// is quadratic in `m`, the expansion terminates and the residual is pure
/// rounding noise. The displaced weights `m + v` may leave the valid mass
/// region; the pair sum is still well defined there.
pub fn taylor_expand_mass(
    m: &MassVector,
    theta: &AngleConfig,
    alpha: Alpha,
    v: &[f64],
) -> Result<MassExpansion> {
    check_dims(m, theta)?;
    if v.len() != m.len() {
        return Err(Error::DimensionMismatch(format!(
            "direction of length {} vs {} masses",
            v.len(),
            m.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidMasses("direction must be finite".into()));
    }
    let h = interaction_matrix(theta, alpha)?;
    let base_value = u_alpha(m, theta, alpha)?;
    let gradient = h.apply(m.as_slice())?;
    let linear_term: f64 = v.iter().zip(&gradient).map(|(a, b)| a * b).sum();
    let quadratic_term = 0.5 * quadratic_form(&h, v)?;
    let displaced: Vec<f64> = m.as_slice().iter().zip(v).map(|(a, b)| a + b).collect();
    let exact_difference = pair_sum(&displaced, theta, alpha)? - base_value;
    let scale = [base_value, linear_term, quadratic_term, exact_difference]
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    let residual = if scale == 0.0 {
        0.0
    } else {
        (exact_difference - (linear_term + quadratic_term)).abs() / scale
    };
    Ok(MassExpansion {
        base_value,
        linear_term,
        quadratic_term,
        exact_difference,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_cyclic_polygon;
    use approx::assert_relative_eq;
    use std::f64::consts::{PI, TAU};

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn masses(m: &[f64]) -> MassVector {
        MassVector::new(m.to_vec()).unwrap()
    }

    fn config(angles: &[f64]) -> AngleConfig {
        AngleConfig::new(angles.to_vec()).unwrap()
    }

    /// Central-difference gradient oracle for `∂U/∂θ_k`, used to validate the
    /// analytic gradient independently.
    fn finite_difference_grad(m: &MassVector, theta: &AngleConfig, a: Alpha, h: f64) -> Vec<f64> {
        let base = theta.as_slice();
        (0..base.len())
            .map(|k| {
                let mut plus = base.to_vec();
                let mut minus = base.to_vec();
                plus[k] += h;
                minus[k] -= h;
                // Displaced vectors can leave (0, 2π] or lose ordering for
                // boundary angles; evaluate the raw pair sum directly.
                let eval = |angles: &[f64]| -> f64 {
                    let mut total = 0.0;
                    for i in 0..angles.len() {
                        for j in (i + 1)..angles.len() {
                            let r = 2.0 * (0.5 * (angles[i] - angles[j])).sin().abs();
                            total +=
                                m.as_slice()[i] * m.as_slice()[j] * r.powf(-a.value());
                        }
                    }
                    total
                };
                (eval(&plus) - eval(&minus)) / (2.0 * h)
            })
            .collect()
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert!(Alpha::new(0.0).is_err());
        assert!(Alpha::new(-1.0).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(MassVector::new(vec![1.0]).is_err());
        assert!(MassVector::new(vec![1.0, 0.0]).is_err());
        assert!(MassVector::new(vec![1.0, -2.0]).is_err());
        assert!(MassVector::new(vec![1.0, f64::INFINITY]).is_err());
        // Dimension mismatches.
        let m = masses(&[1.0, 1.0, 1.0]);
        let theta = AngleConfig::regular(4).unwrap();
        assert!(u_alpha(&m, &theta, alpha(1.0)).is_err());
        assert!(grad_theta(&m, &theta, alpha(1.0)).is_err());
        assert!(grad_mass(&m, &theta, alpha(1.0)).is_err());
    }

    #[test]
    fn potential_of_two_antipodal_unit_masses() {
        // Single pair at distance 2: U = 1/2.
        let m = masses(&[1.0, 1.0]);
        let theta = config(&[PI, TAU]);
        assert_relative_eq!(u_alpha(&m, &theta, alpha(1.0)).unwrap(), 0.5);
    }

    #[test]
    fn potential_of_the_equilateral_triangle() {
        // Three pairs at distance √3: U = 3/√3 = √3.
        let m = MassVector::equal(3).unwrap();
        let theta = AngleConfig::regular(3).unwrap();
        assert_relative_eq!(
            u_alpha(&m, &theta, alpha(1.0)).unwrap(),
            3.0f64.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn potential_matches_the_direct_double_sum_oracle() {
        // Frozen from an independent high-precision evaluation.
        let m = masses(&[1.0, 2.0, 3.0]);
        let theta = config(&[1.0, 2.5, TAU]);
        assert_relative_eq!(
            u_alpha(&m, &theta, alpha(1.5)).unwrap(),
            6.746303747788913,
            max_relative = 1e-14
        );
    }

    #[test]
    fn angle_gradient_vanishes_on_regular_equal_mass_polygons() {
        for n in [3, 5, 8] {
            let m = MassVector::equal(n).unwrap();
            let theta = AngleConfig::regular(n).unwrap();
            let g = grad_theta(&m, &theta, alpha(1.0)).unwrap();
            for (k, gk) in g.iter().enumerate() {
                assert!(gk.abs() <= 1e-12, "n={n}, component {k}: {gk}");
            }
        }
    }

    #[test]
    fn angle_gradient_components_sum_to_zero() {
        let m = masses(&[1.0, 2.0, 0.5, 3.0, 1.5]);
        let theta = sample_cyclic_polygon(5, 11).unwrap();
        for a in [0.5, 1.0, 2.0, 3.0] {
            let g = grad_theta(&m, &theta, alpha(a)).unwrap();
            let total: f64 = g.iter().sum();
            let scale = g.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            assert!(total.abs() <= 1e-12 * scale.max(1.0), "α={a}: {total}");
        }
    }

    #[test]
    fn angle_gradient_matches_finite_differences() {
        let cases: [(&[f64], u64, f64); 4] = [
            (&[1.0, 2.0, 3.0], 5, 0.5),
            (&[1.0, 1.0, 5.0, 1.0], 6, 1.0),
            (&[2.0, 0.5, 1.0, 1.0, 3.0], 7, 2.0),
            (&[1.0, 4.0, 1.0, 0.25, 2.0, 1.0], 8, 3.0),
        ];
        for (mass_values, seed, a) in cases {
            let m = masses(mass_values);
            let theta = sample_cyclic_polygon(m.len(), seed).unwrap();
            let g = grad_theta(&m, &theta, alpha(a)).unwrap();
            let fd = finite_difference_grad(&m, &theta, alpha(a), 1e-6);
            let scale = g.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
            for (k, (gk, fk)) in g.iter().zip(&fd).enumerate() {
                assert!(
                    (gk - fk).abs() <= 1e-6 * scale,
                    "α={a}, component {k}: analytic {gk} vs finite difference {fk}"
                );
            }
        }
    }

    #[test]
    fn interaction_matrix_of_two_antipodal_points() {
        let theta = config(&[PI, TAU]);
        let h = interaction_matrix(&theta, alpha(1.0)).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.get(0, 0), 0.0);
        assert_eq!(h.get(1, 1), 0.0);
        assert_relative_eq!(h.get(0, 1), 0.5);
        assert_relative_eq!(h.get(1, 0), 0.5);
    }

    #[test]
    fn interaction_matrix_is_symmetric_with_zero_diagonal() {
        let theta = sample_cyclic_polygon(7, 3).unwrap();
        let h = interaction_matrix(&theta, alpha(1.5)).unwrap();
        for i in 0..7 {
            assert_eq!(h.get(i, i), 0.0);
            for j in 0..7 {
                assert_eq!(h.get(i, j), h.get(j, i));
            }
        }
    }

    #[test]
    fn mass_gradient_on_regular_polygons() {
        // Equilateral triangle: each component is 2/√3.
        let m = MassVector::equal(3).unwrap();
        let theta = AngleConfig::regular(3).unwrap();
        for g in grad_mass(&m, &theta, alpha(1.0)).unwrap() {
            assert_relative_eq!(g, 2.0 / 3.0f64.sqrt(), max_relative = 1e-14);
        }
        // Square: each component is √2 + 1/2.
        let m = MassVector::equal(4).unwrap();
        let theta = AngleConfig::regular(4).unwrap();
        for g in grad_mass(&m, &theta, alpha(1.0)).unwrap() {
            assert_relative_eq!(g, 2.0f64.sqrt() + 0.5, max_relative = 1e-14);
        }
    }

    #[test]
    fn mass_gradient_is_the_interaction_matrix_applied_to_the_masses() {
        let m = masses(&[1.0, 2.0, 0.5, 4.0, 1.0, 3.0]);
        let theta = sample_cyclic_polygon(6, 9).unwrap();
        let g = grad_mass(&m, &theta, alpha(1.3)).unwrap();
        let h = interaction_matrix(&theta, alpha(1.3)).unwrap();
        assert_eq!(g, h.apply(m.as_slice()).unwrap());
    }

    #[test]
    fn quadratic_form_of_a_coordinate_difference() {
        // v = e_i − e_j picks out −2 H_ij.
        let theta = sample_cyclic_polygon(5, 21).unwrap();
        let h = interaction_matrix(&theta, alpha(1.0)).unwrap();
        let mut v = vec![0.0; 5];
        v[1] = 1.0;
        v[3] = -1.0;
        assert_relative_eq!(
            quadratic_form(&h, &v).unwrap(),
            -2.0 * h.get(1, 3),
            max_relative = 1e-14
        );
    }

    #[test]
    fn quadratic_form_agrees_with_an_independent_double_sum() {
        let theta = sample_cyclic_polygon(6, 31).unwrap();
        let h = interaction_matrix(&theta, alpha(2.0)).unwrap();
        let v = [0.3, -1.2, 0.0, 2.4, -0.5, 0.9];
        let mut expected = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                expected += h.get(i, j) * v[i] * v[j];
            }
        }
        assert_relative_eq!(
            quadratic_form(&h, &v).unwrap(),
            expected,
            max_relative = 1e-13
        );
    }

    #[test]
    fn potential_is_half_the_quadratic_form_of_the_masses() {
        let m = masses(&[1.0, 2.0, 3.0, 0.5, 1.5]);
        let theta = sample_cyclic_polygon(5, 17).unwrap();
        for a in [0.5, 1.0, 2.0] {
            let u = u_alpha(&m, &theta, alpha(a)).unwrap();
            let h = interaction_matrix(&theta, alpha(a)).unwrap();
            let q = quadratic_form(&h, m.as_slice()).unwrap();
            assert_relative_eq!(u, 0.5 * q, max_relative = 1e-12);
        }
    }

    #[test]
    fn mass_expansion_is_exact_to_rounding() {
        let m = masses(&[1.0, 2.0, 1.0, 3.0]);
        let theta = sample_cyclic_polygon(4, 13).unwrap();
        let v = [0.25, -0.5, 0.1, 0.4];
        for a in [0.5, 1.0, 2.0] {
            let e = taylor_expand_mass(&m, &theta, alpha(a), &v).unwrap();
            assert!(e.residual <= 1e-12, "α={a}: residual {}", e.residual);
            // The pieces must reproduce the directly evaluated difference.
            assert_relative_eq!(
                e.linear_term + e.quadratic_term,
                e.exact_difference,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn mass_expansion_of_the_zero_direction_is_zero() {
        let m = masses(&[1.0, 2.0, 3.0]);
        let theta = AngleConfig::regular(3).unwrap();
        let e = taylor_expand_mass(&m, &theta, alpha(1.0), &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(e.linear_term, 0.0);
        assert_eq!(e.quadratic_term, 0.0);
        assert_eq!(e.exact_difference, 0.0);
        assert_eq!(e.residual, 0.0);
    }
}
