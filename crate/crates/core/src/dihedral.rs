//! The dihedral symmetry group of n labeled bodies on the circle.
//!
//! Elements are written in the normal form `P^h S^l` with `h ∈ 0..n` and
//! `l ∈ {0, 1}`, where `P` cyclically shifts mass labels left and `S`
//! reverses the first `n−1` labels while fixing the last. The group relations
//! are `P^n = id`, `S² = id`, and `S P = P^{−1} S`.
//!
//! Each element also acts on fundamental-domain angle configurations by
//! relabeling the circle points and re-rotating so the new last point sits at
//! `2π`. The two actions are compatible: relabeled masses on relabeled angles
//! describe the same physical configuration, so the potential is invariant.

use crate::error::{Error, Result};
use crate::geometry::AngleConfig;
use crate::potential::MassVector;
use std::fmt;

/// A dihedral group element `P^h S^l` acting on `n` labels.
///
/// `S` is applied first, then `h` cyclic shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    n: usize,
    rotation: usize,
    reflected: bool,
}

impl DihedralElement {
    /// Builds `P^rotation S^(reflected)`; the rotation power is reduced mod n.
    pub fn new(n: usize, rotation: usize, reflected: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroupElement(format!(
                "group needs at least 2 labels, got {n}"
            )));
        }
        Ok(Self {
            n,
            rotation: rotation % n,
            reflected,
        })
    }

    /// The identity on `n` labels.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, false)
    }

    /// Number of labels the element acts on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The rotation power `h` of the normal form.
    pub fn rotation(&self) -> usize {
        self.rotation
    }

    /// Whether the normal form contains the reflection `S`.
    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    /// True for `P^0 S^0`.
    pub fn is_identity(&self) -> bool {
        self.rotation == 0 && !self.reflected
    }

    /// Group composition: `g.compose(k)` acts as `g` after `k`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidGroupElement(format!(
                "cannot compose elements over {} and {} labels",
                self.n, other.n
            )));
        }
        // (P^h1 S^l1)(P^h2 S^l2) = P^(h1 ± h2) S^(l1+l2): pushing S past P
        // inverts the shift direction.
        let h2 = if self.reflected {
            (self.n - other.rotation) % self.n
        } else {
            other.rotation
        };
        Self::new(
            self.n,
            (self.rotation + h2) % self.n,
            self.reflected != other.reflected,
        )
    }

    /// The group inverse. Reflections are involutions; a pure rotation
    /// inverts to the complementary shift.
    pub fn inverse(&self) -> Self {
        if self.reflected {
            *self
        } else {
            Self {
                n: self.n,
                rotation: (self.n - self.rotation) % self.n,
                reflected: false,
            }
        }
    }

    /// Permutes mass labels: `S` first (reverse all but the last), then `h`
    /// cyclic left shifts.
    pub fn act_on_masses(&self, m: &MassVector) -> Result<MassVector> {
        if m.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "element over {} labels applied to {} masses",
                self.n,
                m.len()
            )));
        }
        let src = m.as_slice();
        let n = self.n;
        let reflected: Vec<f64> = if self.reflected {
            (0..n)
                .map(|i| if i == n - 1 { src[i] } else { src[n - 2 - i] })
                .collect()
        } else {
            src.to_vec()
        };
        let shifted: Vec<f64> = (0..n)
            .map(|i| reflected[(i + self.rotation) % n])
            .collect();
        MassVector::new(shifted)
    }

    /// Transforms a fundamental-domain configuration so that relabeled masses
    /// on the result describe the same circle points: the configuration is
    /// relabeled and re-rotated to put the new last point at `2π`.
    ///
    /// Requires the last angle pinned at `2π`; the action stays inside the
    /// fundamental domain.
    pub fn act_on_angles(&self, theta: &AngleConfig) -> Result<AngleConfig> {
        if theta.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "element over {} labels applied to {} angles",
                self.n,
                theta.len()
            )));
        }
        if !theta.is_fundamental() {
            return Err(Error::InvalidAngles(
                "group action on angles requires the last angle pinned at 2π".into(),
            ));
        }
        let n = self.n;
        let t = theta.as_slice();
        let last = t[n - 1];
        // Reflection: θ'_i = θ_n − θ_{n−1−i} for all but the last entry.
        let reflected: Vec<f64> = if self.reflected {
            (0..n)
                .map(|i| if i == n - 1 { last } else { last - t[n - 2 - i] })
                .collect()
        } else {
            t.to_vec()
        };
        // Rotation by h: closed form of h applications of the one-step shift
        // θ ↦ (θ_2 − θ_1, …, θ_n − θ_1, θ_n), using θ_n as the wrap point.
        let h = self.rotation;
        let rotated: Vec<f64> = if h == 0 {
            reflected
        } else {
            let pivot = reflected[h - 1];
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        reflected[n - 1]
                    } else if i + h < n {
                        reflected[i + h] - pivot
                    } else {
                        reflected[i + h - n] + (reflected[n - 1] - pivot)
                    }
                })
                .collect()
        };
        AngleConfig::new(rotated)
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P^{} S^{}",
            self.rotation,
            if self.reflected { 1 } else { 0 }
        )
    }
}

/// All `2n` elements of the group, identity first: rotations `P^0 … P^{n−1}`,
/// then the reflections `P^0 S … P^{n−1} S`.
pub fn enumerate_group(n: usize) -> Result<Vec<DihedralElement>> {
    if n < 2 {
        return Err(Error::InvalidGroupElement(format!(
            "group needs at least 2 labels, got {n}"
        )));
    }
    let mut elements = Vec::with_capacity(2 * n);
    for reflected in [false, true] {
        for h in 0..n {
            elements.push(DihedralElement::new(n, h, reflected)?);
        }
    }
    Ok(elements)
}
