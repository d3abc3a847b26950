//! Geometry of point configurations on the unit circle.
//!
//! A configuration is a strictly increasing angle vector in `(0, 2π]`; the
//! fundamental domain additionally pins the last angle to `2π`, which fixes
//! the rotational freedom of the circle. Pairwise separations are chord
//! lengths `r_ij = 2 |sin((θ_i − θ_j)/2)|`.
//!
//! Beyond plain chord computations, this module evaluates the alternating
//! inverse-chord-power sums over even vertex selections (`quad_s` for
//! quadrilaterals, `poly_r` for general even polygons) that the certificate
//! machinery is built on, an exact decomposition of `poly_r` into
//! quadrilateral terms, the relative Ptolemy residual, and a seeded sampler
//! for random cyclic polygons used by the empirical inequality suites.

use crate::error::{Error, Result};
use crate::potential::Alpha;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Angular separations below this threshold (radians, measured around the
/// circle) are treated as collisions and rejected by chord computations.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// Minimum circular gap between consecutive vertices produced by
/// [`sample_cyclic_polygon`], keeping sampled polygons away from collisions.
pub const MIN_SAMPLE_GAP: f64 = 1e-3;

/// Tolerance on the last-angle pin `θ_n = 2π` of the fundamental domain.
pub const PIN_TOLERANCE: f64 = 1e-12;

/// Strictly increasing angles in `(0, 2π]` marking points on the unit circle.
///
/// Validation happens once at construction; every routine in the crate can
/// then rely on the ordering. Whether the last angle is pinned to `2π` (the
/// fundamental-domain normalization) is a property of how the configuration
/// is used, exposed via [`AngleConfig::is_fundamental`], not a construction
/// requirement: sub-polygon work only needs the ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleConfig {
    angles: Vec<f64>,
}

impl AngleConfig {
    /// Validates and wraps an angle vector.
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.len() < 2 {
            return Err(Error::InvalidAngles(format!(
                "need at least 2 angles, got {}",
                angles.len()
            )));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidAngles("angles must be finite".into()));
        }
        if angles[0] <= 0.0 {
            return Err(Error::InvalidAngles(format!(
                "first angle must be strictly positive, got {}",
                angles[0]
            )));
        }
        if *angles.last().unwrap() > TAU {
            return Err(Error::InvalidAngles(format!(
                "last angle must not exceed 2π, got {}",
                angles.last().unwrap()
            )));
        }
        if angles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAngles(
                "angles must be strictly increasing".into(),
            ));
        }
        Ok(Self { angles })
    }

    /// The regular n-gon in the fundamental domain: `θ_k = 2πk/n`, `k = 1..n`.
    pub fn regular(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAngles(format!(
                "regular polygon needs at least 2 vertices, got {n}"
            )));
        }
        let mut angles: Vec<f64> = (1..=n).map(|k| TAU * k as f64 / n as f64).collect();
        // Pin the last angle exactly; the division above can round.
        angles[n - 1] = TAU;
        Self::new(angles)
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    /// True when the configuration is empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The angles as a slice, in increasing order.
    pub fn as_slice(&self) -> &[f64] {
        &self.angles
    }

    /// True when the last angle sits on the `2π` pin (within
    /// [`PIN_TOLERANCE`]), i.e. the configuration is normalized to the
    /// fundamental domain.
    pub fn is_fundamental(&self) -> bool {
        (self.angles[self.angles.len() - 1] - TAU).abs() <= PIN_TOLERANCE
    }

    /// Smallest gap between circularly consecutive points, including the
    /// wrap-around gap between the last and the first point.
    pub fn min_circular_gap(&self) -> f64 {
        let wrap = self.angles[0] + TAU - self.angles[self.angles.len() - 1];
        self.angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(wrap, f64::min)
    }
}

/// Chord length between two points on the unit circle,
/// `r = 2 |sin((θ_i − θ_j)/2)|`.
///
/// The angles need not be reduced; only their circular separation matters.
/// Separations below [`DEGENERACY_THRESHOLD`] are rejected as collisions.
pub fn chord_distance(theta_i: f64, theta_j: f64) -> Result<f64> {
    if !theta_i.is_finite() || !theta_j.is_finite() {
        return Err(Error::InvalidAngles("chord endpoints must be finite".into()));
    }
    let diff = (theta_i - theta_j).abs() % TAU;
    let separation = diff.min(TAU - diff);
    if separation < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateGeometry {
            separation,
            threshold: DEGENERACY_THRESHOLD,
        });
    }
    Ok(2.0 * (0.5 * (theta_i - theta_j)).sin().abs())
}

/// Full symmetric matrix of pairwise chord lengths, zero on the diagonal.
pub fn chord_matrix(theta: &AngleConfig) -> Result<Vec<Vec<f64>>> {
    let n = theta.len();
    let a = theta.as_slice();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let r = chord_distance(a[i], a[j])?;
            m[i][j] = r;
            m[j][i] = r;
        }
    }
    Ok(m)
}

/// An even-sized selection of vertex indices (0-based, strictly increasing)
/// into an [`AngleConfig`], marking the sub-polygon that an alternating
/// chord-power sum runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSelection {
    indices: Vec<usize>,
}

impl VertexSelection {
    /// Validates a selection: strictly increasing indices, even count ≥ 4.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 4 || indices.len() % 2 != 0 {
            return Err(Error::InvalidSelection(format!(
                "selection must have an even size of at least 4, got {}",
                indices.len()
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSelection(
                "selection indices must be strictly increasing".into(),
            ));
        }
        Ok(Self { indices })
    }

    /// Selects every vertex of an n-point configuration.
    pub fn all(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    /// Number of selected vertices.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// True when the selection is empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The selected indices, strictly increasing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    fn check_bounds(&self, n: usize) -> Result<()> {
        let max = *self.indices.last().unwrap();
        if max >= n {
            return Err(Error::InvalidSelection(format!(
                "selection index {max} out of bounds for {n} vertices"
            )));
        }
        Ok(())
    }
}

/// Alternating inverse-chord-power sum over a cyclic quadrilateral.
///
/// For selected vertices `(v1, v2, v3, v4)` in circular order this is
/// `1/r_13^α + 1/r_24^α − 1/r_23^α − 1/r_14^α`: diagonals minus the two sides
/// adjacent to the first vertex pair. It is strictly negative for every
/// genuine cyclic quadrilateral — the empirical suites check exactly that.
pub fn quad_s(theta: &AngleConfig, selection: &VertexSelection, alpha: Alpha) -> Result<f64> {
    if selection.len() != 4 {
        return Err(Error::InvalidSelection(format!(
            "quadrilateral sum needs exactly 4 vertices, got {}",
            selection.len()
        )));
    }
    selection.check_bounds(theta.len())?;
    let a = -alpha.value();
    let t = theta.as_slice();
    let idx = selection.indices();
    let (v1, v2, v3, v4) = (t[idx[0]], t[idx[1]], t[idx[2]], t[idx[3]]);
    Ok(chord_distance(v1, v3)?.powf(a) + chord_distance(v2, v4)?.powf(a)
        - chord_distance(v2, v3)?.powf(a)
        - chord_distance(v1, v4)?.powf(a))
}

/// Alternating inverse-chord-power sum over an even cyclic polygon.
///
/// Vertices are taken in circular order; pairs whose positions within the
/// selection share parity contribute positively, mixed-parity pairs
/// negatively. Strictly negative for every even polygon — verified
/// empirically by the inequality suites.
pub fn poly_r(theta: &AngleConfig, selection: &VertexSelection, alpha: Alpha) -> Result<f64> {
    selection.check_bounds(theta.len())?;
    let a = -alpha.value();
    let t = theta.as_slice();
    let idx = selection.indices();
    let mut total = 0.0;
    for p in 0..idx.len() {
        for s in (p + 1)..idx.len() {
            let term = chord_distance(t[idx[p]], t[idx[s]])?.powf(a);
            if (s - p) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// Exact decomposition of [`poly_r`] over a `2k`-gon (`k ≥ 3`) into the same
/// sum over the trailing `2(k−1)`-gon, `k−1` quadrilateral terms, and one
/// side correction.
#[derive(Debug, Clone, PartialEq)]
pub struct RDecomposition {
    /// [`poly_r`] over the selection with its first two vertices dropped.
    pub sub_r: f64,
    /// [`quad_s`] over `(v1, v2, v_{2j−1}, v_{2j})` for `j = 2..k`.
    pub quad_terms: Vec<f64>,
    /// The side correction `−1/r_{v1 v2}^α`.
    pub correction: f64,
    /// `|poly_r − (sub_r + Σ quad_terms + correction)|` relative to the
    /// largest magnitude among the decomposition terms.
    pub residual: f64,
}

/// Splits [`poly_r`] over an even selection of at least 6 vertices into
/// smaller pieces; the reconstruction is an algebraic identity, so the
/// reported relative residual is rounding noise only.
pub fn decompose_r(
    theta: &AngleConfig,
    selection: &VertexSelection,
    alpha: Alpha,
) -> Result<RDecomposition> {
    if selection.len() < 6 {
        return Err(Error::InvalidSelection(format!(
            "decomposition needs at least 6 vertices, got {}",
            selection.len()
        )));
    }
    selection.check_bounds(theta.len())?;
    let idx = selection.indices();
    let t = theta.as_slice();
    let total = poly_r(theta, selection, alpha)?;
    let sub_selection = VertexSelection::new(idx[2..].to_vec())?;
    let sub_r = poly_r(theta, &sub_selection, alpha)?;
    let mut quad_terms = Vec::with_capacity(idx.len() / 2 - 1);
    for j in 1..idx.len() / 2 {
        let quad = VertexSelection::new(vec![idx[0], idx[1], idx[2 * j], idx[2 * j + 1]])?;
        quad_terms.push(quad_s(theta, &quad, alpha)?);
    }
    let correction = -chord_distance(t[idx[0]], t[idx[1]])?.powf(-alpha.value());
    let reconstructed = sub_r + quad_terms.iter().sum::<f64>() + correction;
    let scale = quad_terms
        .iter()
        .chain([&total, &sub_r, &correction])
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let residual = (total - reconstructed).abs() / scale;
    Ok(RDecomposition {
        sub_r,
        quad_terms,
        correction,
        residual,
    })
}

/// Signed relative Ptolemy residual `(ef − (ac + bd)) / ef` of a cyclic
/// quadrilateral, with `e, f` the diagonals and `a, b, c, d` the sides in
/// circular order. Zero (up to rounding) for concyclic points.
pub fn ptolemy_residual(theta: &AngleConfig, selection: &VertexSelection) -> Result<f64> {
    if selection.len() != 4 {
        return Err(Error::InvalidSelection(format!(
            "Ptolemy residual needs exactly 4 vertices, got {}",
            selection.len()
        )));
    }
    selection.check_bounds(theta.len())?;
    let t = theta.as_slice();
    let idx = selection.indices();
    let (v1, v2, v3, v4) = (t[idx[0]], t[idx[1]], t[idx[2]], t[idx[3]]);
    let e = chord_distance(v1, v3)?;
    let f = chord_distance(v2, v4)?;
    let a = chord_distance(v1, v2)?;
    let b = chord_distance(v2, v3)?;
    let c = chord_distance(v3, v4)?;
    let d = chord_distance(v1, v4)?;
    Ok((e * f - (a * c + b * d)) / (e * f))
}

/// Draws a random cyclic polygon with `k ≥ 3` vertices: strictly increasing
/// angles ending exactly at `2π`, with every circular gap at least
/// [`MIN_SAMPLE_GAP`]. Deterministic for a fixed seed.
pub fn sample_cyclic_polygon(k: usize, seed: u64) -> Result<AngleConfig> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "sampled polygon needs at least 3 vertices, got {k}"
        )));
    }
    // Slack above the guaranteed minimum so that the normalization below can
    // never round a gap under it.
    let base_gap = MIN_SAMPLE_GAP * 1.000001;
    let spread = TAU - k as f64 * base_gap;
    if spread <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "{k} vertices cannot all keep a {MIN_SAMPLE_GAP} rad gap on the circle"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..k).map(|_| rng.random::<f64>() + 1e-9).collect();
    let raw_sum: f64 = raw.iter().sum();
    // Gaps sum to 2π by construction; cumulative sums normalized by their own
    // total land the last vertex on 2π exactly.
    let gaps: Vec<f64> = raw
        .iter()
        .map(|u| base_gap + u / raw_sum * spread)
        .collect();
    let mut cumulative = Vec::with_capacity(k);
    let mut acc = 0.0;
    for g in &gaps {
        acc += g;
        cumulative.push(acc);
    }
    let total = cumulative[k - 1];
    let angles: Vec<f64> = cumulative.iter().map(|c| TAU * (c / total)).collect();
    AngleConfig::new(angles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn alpha(a: f64) -> Alpha {
        Alpha::new(a).unwrap()
    }

    fn config(angles: &[f64]) -> AngleConfig {
        AngleConfig::new(angles.to_vec()).unwrap()
    }

    fn select(indices: &[usize]) -> VertexSelection {
        VertexSelection::new(indices.to_vec()).unwrap()
    }

    #[test]
    fn chord_of_antipodal_points_is_the_diameter() {
        assert_relative_eq!(chord_distance(0.0, std::f64::consts::PI).unwrap(), 2.0);
    }

    #[test]
    fn chord_matches_closed_forms() {
        // 2π/3 separation on the unit circle spans √3.
        assert_relative_eq!(
            chord_distance(0.0, 2.0 * std::f64::consts::FRAC_PI_3).unwrap(),
            3.0f64.sqrt(),
            max_relative = 1e-15
        );
        // Separation 0.8 rad: chord 2 sin(0.4) = 0.778836684617301.
        assert_relative_eq!(
            chord_distance(0.3, 1.1).unwrap(),
            0.778836684617301,
            max_relative = 1e-15
        );
    }

    #[test]
    fn chord_is_symmetric_and_wraps_around_the_circle() {
        let r = chord_distance(0.3, 1.1).unwrap();
        assert_eq!(r, chord_distance(1.1, 0.3).unwrap());
        // 0 and 2π − 0.4 are separated by 0.4 around the wrap point.
        assert_relative_eq!(
            chord_distance(1e-6, TAU - 0.4 + 1e-6).unwrap(),
            2.0 * 0.2f64.sin(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn chord_rejects_near_collisions() {
        assert!(matches!(
            chord_distance(1.0, 1.0 + 5e-10),
            Err(Error::DegenerateGeometry { .. })
        ));
        // Collision across the wrap point.
        assert!(matches!(
            chord_distance(1e-10, TAU),
            Err(Error::DegenerateGeometry { .. })
        ));
        assert!(chord_distance(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn chord_matrix_of_the_square() {
        let theta = AngleConfig::regular(4).unwrap();
        let m = chord_matrix(&theta).unwrap();
        let side = 2.0f64.sqrt();
        for i in 0..4 {
            assert_eq!(m[i][i], 0.0);
            for j in 0..4 {
                assert_eq!(m[i][j], m[j][i]);
                if i != j {
                    let expected = if (j + 4 - i) % 2 == 0 { 2.0 } else { side };
                    assert_relative_eq!(m[i][j], expected, max_relative = 1e-14);
                }
            }
        }
    }

    #[test]
    fn angle_config_validation() {
        assert!(AngleConfig::new(vec![1.0]).is_err());
        assert!(AngleConfig::new(vec![0.0, 1.0]).is_err());
        assert!(AngleConfig::new(vec![-0.5, 1.0]).is_err());
        assert!(AngleConfig::new(vec![1.0, 1.0]).is_err());
        assert!(AngleConfig::new(vec![2.0, 1.0]).is_err());
        assert!(AngleConfig::new(vec![1.0, TAU + 0.1]).is_err());
        assert!(AngleConfig::new(vec![1.0, f64::INFINITY]).is_err());
        let ok = AngleConfig::new(vec![1.0, 2.0, TAU]).unwrap();
        assert!(ok.is_fundamental());
        assert!(!config(&[1.0, 2.0, 3.0]).is_fundamental());
    }

    #[test]
    fn regular_polygon_has_uniform_gaps_and_the_pin() {
        let theta = AngleConfig::regular(7).unwrap();
        assert_eq!(theta.len(), 7);
        assert!(theta.is_fundamental());
        assert_relative_eq!(theta.min_circular_gap(), TAU / 7.0, max_relative = 1e-12);
    }

    #[test]
    fn selection_validation() {
        assert!(VertexSelection::new(vec![0, 1, 2]).is_err()); // odd
        assert!(VertexSelection::new(vec![0, 1]).is_err()); // too small
        assert!(VertexSelection::new(vec![0, 2, 1, 3]).is_err()); // unsorted
        assert!(VertexSelection::new(vec![0, 1, 1, 3]).is_err()); // repeated
        assert_eq!(VertexSelection::all(6).unwrap().len(), 6);
        // Out-of-bounds indices surface at use.
        let theta = AngleConfig::regular(4).unwrap();
        let sel = select(&[0, 1, 2, 9]);
        assert!(quad_s(&theta, &sel, alpha(1.0)).is_err());
    }

    #[test]
    fn quad_sum_on_the_regular_square() {
        let theta = AngleConfig::regular(4).unwrap();
        let sel = VertexSelection::all(4).unwrap();
        // Diagonals 2, sides √2: S = 2·(1/2) − 2·(1/√2) = 1 − √2.
        assert_relative_eq!(
            quad_s(&theta, &sel, alpha(1.0)).unwrap(),
            1.0 - 2.0f64.sqrt(),
            max_relative = 1e-14
        );
        // α = 2: S = 2·(1/4) − 2·(1/2) = −1/2.
        assert_relative_eq!(
            quad_s(&theta, &sel, alpha(2.0)).unwrap(),
            -0.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn quad_sum_matches_the_direct_evaluation_oracle() {
        // Frozen from an independent high-precision evaluation of
        // 1/r13 + 1/r24 − 1/r23 − 1/r14 at these angles.
        let theta = config(&[0.3, 1.2, 2.5, 5.0]);
        let sel = VertexSelection::all(4).unwrap();
        assert_relative_eq!(
            quad_s(&theta, &sel, alpha(1.0)).unwrap(),
            -0.439548456837655,
            max_relative = 1e-13
        );
    }

    #[test]
    fn quad_sum_rejects_wrong_selection_sizes() {
        let theta = AngleConfig::regular(6).unwrap();
        let sel = VertexSelection::all(6).unwrap();
        assert!(quad_s(&theta, &sel, alpha(1.0)).is_err());
    }

    #[test]
    fn poly_sum_on_regular_polygons() {
        // Square: same-parity pairs are the diagonals, so R = 1 − 2√2.
        let square = AngleConfig::regular(4).unwrap();
        let sel4 = VertexSelection::all(4).unwrap();
        assert_relative_eq!(
            poly_r(&square, &sel4, alpha(1.0)).unwrap(),
            1.0 - 2.0 * 2.0f64.sqrt(),
            max_relative = 1e-14
        );
        // Hexagon: R = 6/√3 − 6/1 − 3/2 = 2√3 − 7.5.
        let hexagon = AngleConfig::regular(6).unwrap();
        let sel6 = VertexSelection::all(6).unwrap();
        assert_relative_eq!(
            poly_r(&hexagon, &sel6, alpha(1.0)).unwrap(),
            2.0 * 3.0f64.sqrt() - 7.5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn poly_sum_agrees_with_an_independent_double_sum() {
        let theta = sample_cyclic_polygon(8, 41).unwrap();
        let sel = VertexSelection::all(8).unwrap();
        let a = 0.5;
        // Independent accumulation, separating positive and negative parts.
        let t = theta.as_slice();
        let mut positive = 0.0;
        let mut negative = 0.0;
        for p in 0..8 {
            for s in (p + 1)..8 {
                let r = 2.0 * (0.5 * (t[p] - t[s])).sin().abs();
                if (s - p) % 2 == 0 {
                    positive += r.powf(-a);
                } else {
                    negative += r.powf(-a);
                }
            }
        }
        assert_relative_eq!(
            poly_r(&theta, &sel, alpha(a)).unwrap(),
            positive - negative,
            max_relative = 1e-13
        );
    }

    #[test]
    fn quad_and_poly_sums_differ_by_the_two_side_terms() {
        let theta = sample_cyclic_polygon(9, 7).unwrap();
        let t = theta.as_slice();
        let sel = select(&[1, 3, 4, 7]);
        for a in [0.5, 1.0, 2.0, 3.0] {
            let s = quad_s(&theta, &sel, alpha(a)).unwrap();
            let r = poly_r(&theta, &sel, alpha(a)).unwrap();
            let side12 = chord_distance(t[1], t[3]).unwrap().powf(-a);
            let side34 = chord_distance(t[4], t[7]).unwrap().powf(-a);
            assert_relative_eq!(s, r + side12 + side34, max_relative = 1e-12);
        }
    }

    #[test]
    fn decomposition_is_exact_on_the_regular_hexagon() {
        let theta = AngleConfig::regular(6).unwrap();
        let sel = VertexSelection::all(6).unwrap();
        let d = decompose_r(&theta, &sel, alpha(1.0)).unwrap();
        assert!(d.residual <= 1e-12, "residual {}", d.residual);
        assert_eq!(d.quad_terms.len(), 2);
        // The trailing square (vertices 3..6 of the hexagon) is a rotated
        // quadrilateral; its poly_r must match a direct evaluation.
        let sub = select(&[2, 3, 4, 5]);
        assert_eq!(d.sub_r, poly_r(&theta, &sub, alpha(1.0)).unwrap());
    }

    #[test]
    fn decomposition_is_exact_on_sampled_polygons() {
        for (k, seed) in [(6, 1u64), (8, 2), (10, 3), (12, 4)] {
            let theta = sample_cyclic_polygon(k, seed).unwrap();
            let sel = VertexSelection::all(k).unwrap();
            for a in [0.5, 1.0, 2.0] {
                let d = decompose_r(&theta, &sel, alpha(a)).unwrap();
                assert!(
                    d.residual <= 1e-12,
                    "k={k} α={a}: residual {}",
                    d.residual
                );
            }
        }
    }

    #[test]
    fn decomposition_rejects_plain_quadrilaterals() {
        let theta = AngleConfig::regular(4).unwrap();
        let sel = VertexSelection::all(4).unwrap();
        assert!(decompose_r(&theta, &sel, alpha(1.0)).is_err());
    }

    #[test]
    fn ptolemy_residual_vanishes_on_cyclic_quadrilaterals() {
        let square = AngleConfig::regular(4).unwrap();
        let sel = VertexSelection::all(4).unwrap();
        assert!(ptolemy_residual(&square, &sel).unwrap().abs() <= 1e-15);

        let generic = config(&[0.5, 1.0, 2.0, 4.0]);
        assert!(ptolemy_residual(&generic, &sel).unwrap().abs() <= 1e-12);

        // Mixed-scale stress case: two nearly coincident vertices.
        let stress = config(&[0.1, 0.2, 3.0, 6.0]);
        assert!(ptolemy_residual(&stress, &sel).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn sampled_polygons_are_valid_and_deterministic() {
        for k in [3, 4, 7, 12, 100] {
            let theta = sample_cyclic_polygon(k, 1234).unwrap();
            assert_eq!(theta.len(), k);
            assert!(theta.is_fundamental());
            assert_eq!(theta.as_slice()[k - 1], TAU);
            assert!(
                theta.min_circular_gap() >= MIN_SAMPLE_GAP,
                "k={k}: min gap {}",
                theta.min_circular_gap()
            );
        }
        let a = sample_cyclic_polygon(6, 77).unwrap();
        let b = sample_cyclic_polygon(6, 77).unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
        let c = sample_cyclic_polygon(6, 78).unwrap();
        assert_ne!(a.as_slice(), c.as_slice());
    }

    #[test]
    fn sampler_rejects_degenerate_requests() {
        assert!(sample_cyclic_polygon(2, 0).is_err());
        assert!(sample_cyclic_polygon(10_000, 0).is_err());
    }
}
