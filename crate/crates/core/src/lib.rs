//! Numerical toolkit for co-circular configurations of power-law n-body
//! potentials.
//!
//! The crate answers one family of questions: for `n` point masses confined
//! to the unit circle with the potential `U_α = Σ m_j m_k / r_jk^α`, where
//! does `U_α` attain its minimum, and can the masses form a *centered*
//! co-circular central configuration (center of mass at the circle center)
//! at all? The second question is decided by a symmetry criterion: scanning
//! the quadratic form of the interaction matrix along dihedral relabelings
//! of the masses at the minimizing configuration. A certified negative value
//! excludes the mass vector; the scan never proves existence.
//!
//! Module tour:
//!
//! * [`geometry`] — angle configurations, chords, alternating chord-power
//!   sums over vertex selections, random cyclic polygons.
//! * [`potential`] — `U_α`, its angle and mass gradients, the interaction
//!   matrix and its quadratic form, the exact second-order mass expansion.
//! * [`dihedral`] — the symmetry group acting on mass labels and angles.
//! * [`minimizer`] — damped Newton minimization over the fundamental domain.
//! * [`certifier`] — the exclusion scan and verdicts.
//! * [`scanner`] — enumeration and batch certification of structured mass
//!   families.

pub mod certifier;
pub mod dihedral;
pub mod error;
pub mod geometry;
pub mod minimizer;
pub mod potential;
pub mod scanner;

pub use certifier::{certify, moment_residual, wang_scan, CertificateReport, Verdict};
pub use dihedral::{enumerate_group, DihedralElement};
pub use error::{Error, Result};
pub use geometry::{
    chord_distance, chord_matrix, decompose_r, poly_r, ptolemy_residual, quad_s,
    sample_cyclic_polygon, AngleConfig, RDecomposition, VertexSelection,
};
pub use minimizer::{
    find_minimizer, is_interior, multi_start_check, MinimizerOptions, MinimizerResult,
    MultiStartReport,
};
pub use potential::{
    grad_mass, grad_theta, interaction_matrix, quadratic_form, taylor_expand_mass, Alpha,
    InteractionMatrix, MassExpansion, MassVector,
};
pub use scanner::{
    enumerate_two_groups, enumerate_two_unequal, scan_family, ArrangementPattern, FamilySpec,
    ScanOutcome, ScanRow, ScanSummary,
};
