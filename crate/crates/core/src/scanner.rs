//! Enumeration and batch certification of structured mass families.
//!
//! Two families are supported, both "all masses one except a marked set":
//!
//! * `two_unequal` — exactly two marked bodies carrying (possibly different)
//!   values; arrangements are classified by the circular gap between them.
//! * `two_groups` — `k` marked bodies all carrying the same value;
//!   arrangements are the dihedral orbits of `k`-subsets of `n` positions
//!   (binary bracelets).
//!
//! Arrangements equivalent under rotation or reflection produce equivalent
//! certificates, so each orbit is certified once, represented by a canonical
//! binary word. The representative mass vector places a marked body at the
//! last position, matching the normalization used throughout the crate.

use crate::certifier::{certify, CertificateReport, Verdict};
use crate::error::{Error, Result};
use crate::minimizer::MinimizerOptions;
use crate::potential::{Alpha, MassVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A dihedral orbit of marked-position sets, stored as its canonical binary
/// word: the lexicographically greatest word (ones first) over all rotations
/// and reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrangementPattern {
    word: Vec<bool>,
}

/// Canonical form: lexicographically greatest rotation of the word or its
/// reversal, so canonical words lead with their ones.
fn canonicalize(word: &[bool]) -> Vec<bool> {
    let n = word.len();
    let reversed: Vec<bool> = word.iter().rev().copied().collect();
    let mut best: Option<Vec<bool>> = None;
    for base in [word, reversed.as_slice()] {
        for shift in 0..n {
            let rotated: Vec<bool> = (0..n).map(|i| base[(i + shift) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated > *b) {
                best = Some(rotated);
            }
        }
    }
    best.expect("word is never empty")
}

impl ArrangementPattern {
    /// Builds the orbit representative of the given marked positions
    /// (0-based) among `n_total` circle positions.
    pub fn from_positions(n_total: usize, positions: &[usize]) -> Result<Self> {
        if n_total < 2 {
            return Err(Error::InvalidFamily(format!(
                "need at least 2 positions, got {n_total}"
            )));
        }
        if positions.is_empty() || positions.len() >= n_total {
            return Err(Error::InvalidFamily(format!(
                "marked set of size {} must be a proper nonempty subset of {n_total} positions",
                positions.len()
            )));
        }
        let mut word = vec![false; n_total];
        for &p in positions {
            if p >= n_total {
                return Err(Error::InvalidFamily(format!(
                    "position {p} out of bounds for {n_total} positions"
                )));
            }
            if word[p] {
                return Err(Error::InvalidFamily(format!("position {p} repeated")));
            }
            word[p] = true;
        }
        Ok(Self {
            word: canonicalize(&word),
        })
    }

    /// Total number of circle positions.
    pub fn n_total(&self) -> usize {
        self.word.len()
    }

    /// Number of marked positions.
    pub fn k(&self) -> usize {
        self.word.iter().filter(|b| **b).count()
    }

    /// The canonical word as a string of `1`s and `0`s.
    pub fn canonical_form(&self) -> String {
        self.word
            .iter()
            .map(|b| if *b { '1' } else { '0' })
            .collect()
    }

    /// Marked positions (0-based) of the canonical word.
    pub fn special_positions(&self) -> Vec<usize> {
        self.word
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
            .collect()
    }

    /// Marked positions (0-based) of the representative placement: the
    /// canonical word rotated so that a marked body sits at the last
    /// position.
    pub fn placement(&self) -> Vec<usize> {
        let n = self.n_total();
        let last_marked = self
            .word
            .iter()
            .rposition(|b| *b)
            .expect("patterns always have a marked position");
        let shift = (last_marked + 1) % n;
        let mut positions: Vec<usize> = self
            .special_positions()
            .into_iter()
            .map(|p| (p + n - shift) % n)
            .collect();
        positions.sort_unstable();
        positions
    }

    /// True when no two marked positions are circularly adjacent.
    pub fn is_nonadjacent(&self) -> bool {
        let n = self.n_total();
        !(0..n).any(|i| self.word[i] && self.word[(i + 1) % n])
    }

    /// For two marked positions: their circular gap, in `1..=n/2`.
    pub fn gap(&self) -> Option<usize> {
        let positions = self.special_positions();
        if positions.len() != 2 {
            return None;
        }
        let d = positions[1] - positions[0];
        Some(d.min(self.n_total() - d))
    }

    /// True for the two-marked pattern with antipodal positions.
    pub fn is_antipodal(&self) -> bool {
        self.gap() == Some(self.n_total() / 2) && self.n_total() % 2 == 0
    }
}

/// All arrangements of two marked bodies among `n_total ≥ 3` positions, one
/// per circular gap `d ∈ 1..=⌊n/2⌋`, in increasing gap order.
///
/// When the two marked bodies carry different values, the two ways of
/// assigning them to a pattern are related by the reflection through the
/// chord's perpendicular bisector — always a symmetry of the position set —
/// so one representative per gap covers everything.
pub fn enumerate_two_unequal(n_total: usize) -> Result<Vec<ArrangementPattern>> {
    if n_total < 3 {
        return Err(Error::InvalidFamily(format!(
            "two marked bodies among plain ones need at least 3 positions, got {n_total}"
        )));
    }
    (1..=n_total / 2)
        .map(|gap| ArrangementPattern::from_positions(n_total, &[0, gap]))
        .collect()
}

/// All dihedral orbits of `k`-subsets of `n_total` positions (binary
/// bracelets with `k` ones), canonical forms in decreasing lexicographic
/// order. Requires `1 ≤ k ≤ n_total/2`; the complementary sizes describe the
/// same mass vectors with the roles of the two values swapped.
pub fn enumerate_two_groups(n_total: usize, k: usize) -> Result<Vec<ArrangementPattern>> {
    if n_total < 2 {
        return Err(Error::InvalidFamily(format!(
            "need at least 2 positions, got {n_total}"
        )));
    }
    if k == 0 || 2 * k > n_total {
        return Err(Error::InvalidFamily(format!(
            "marked group size must satisfy 1 ≤ k ≤ n/2, got k={k} for n={n_total}"
        )));
    }
    let mut canonical_words = BTreeSet::new();
    // Walk all k-subsets in lexicographic order and canonicalize each.
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let pattern = ArrangementPattern::from_positions(n_total, &subset)?;
        canonical_words.insert(pattern.word);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                // Exhausted.
                let mut patterns: Vec<ArrangementPattern> = canonical_words
                    .into_iter()
                    .rev()
                    .map(|word| ArrangementPattern { word })
                    .collect();
                patterns.shrink_to_fit();
                return Ok(patterns);
            }
            i -= 1;
            if subset[i] != i + n_total - k {
                break;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// A structured mass family to scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// Two marked bodies with values `values.0` and `values.1` (each ≠ 1)
    /// among unit masses.
    TwoUnequal {
        /// Total number of bodies.
        n_total: usize,
        /// Values of the two marked bodies.
        values: (f64, f64),
    },
    /// `k` marked bodies sharing one value ≠ 1 among unit masses.
    TwoGroups {
        /// Total number of bodies.
        n_total: usize,
        /// Number of marked bodies.
        k: usize,
        /// Common value of the marked bodies.
        value: f64,
    },
}

impl FamilySpec {
    /// Validates the family parameters.
    pub fn validate(&self) -> Result<()> {
        let check_value = |v: f64, label: &str| -> Result<()> {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidFamily(format!(
                    "{label} must be positive and finite, got {v}"
                )));
            }
            if v == 1.0 {
                return Err(Error::InvalidFamily(format!(
                    "{label} must differ from the unit masses, got 1"
                )));
            }
            Ok(())
        };
        match self {
            FamilySpec::TwoUnequal { n_total, values } => {
                if *n_total < 3 {
                    return Err(Error::InvalidFamily(format!(
                        "two-unequal family needs at least 3 bodies, got {n_total}"
                    )));
                }
                check_value(values.0, "first marked value")?;
                check_value(values.1, "second marked value")
            }
            FamilySpec::TwoGroups { n_total, k, value } => {
                enumerate_two_groups(*n_total, *k).map(|_| ())?;
                check_value(*value, "marked value")
            }
        }
    }

    /// Total number of bodies.
    pub fn n_total(&self) -> usize {
        match self {
            FamilySpec::TwoUnequal { n_total, .. } => *n_total,
            FamilySpec::TwoGroups { n_total, .. } => *n_total,
        }
    }

    /// Enumerates the family's arrangement orbits.
    pub fn arrangements(&self) -> Result<Vec<ArrangementPattern>> {
        self.validate()?;
        match self {
            FamilySpec::TwoUnequal { n_total, .. } => enumerate_two_unequal(*n_total),
            FamilySpec::TwoGroups { n_total, k, .. } => enumerate_two_groups(*n_total, *k),
        }
    }

    /// The representative mass vector of one arrangement: unit masses with
    /// the marked values placed per [`ArrangementPattern::placement`], the
    /// highest marked position last.
    pub fn masses_for(&self, pattern: &ArrangementPattern) -> Result<MassVector> {
        if pattern.n_total() != self.n_total() {
            return Err(Error::InvalidFamily(format!(
                "pattern over {} positions used with a family of {} bodies",
                pattern.n_total(),
                self.n_total()
            )));
        }
        let mut masses = vec![1.0; self.n_total()];
        let placement = pattern.placement();
        match self {
            FamilySpec::TwoUnequal { values, .. } => {
                if placement.len() != 2 {
                    return Err(Error::InvalidFamily(format!(
                        "two-unequal family needs exactly 2 marked positions, got {}",
                        placement.len()
                    )));
                }
                masses[placement[0]] = values.0;
                masses[placement[1]] = values.1;
            }
            FamilySpec::TwoGroups { value, .. } => {
                for p in placement {
                    masses[p] = *value;
                }
            }
        }
        MassVector::new(masses)
    }
}

/// One certified arrangement of a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    /// Canonical form of the arrangement orbit.
    pub pattern: String,
    /// The certificate for the representative mass vector.
    pub report: CertificateReport,
}

/// Verdict counts of a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    /// Arrangements certified as excluded.
    pub excluded: usize,
    /// Arrangements with an all-nonnegative scan.
    pub not_excluded: usize,
    /// Arrangements whose minimization did not converge.
    pub inconclusive: usize,
}

/// Result of scanning a whole family at one exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    /// One row per arrangement orbit, in enumeration order.
    pub rows: Vec<ScanRow>,
    /// Verdict tallies over the rows.
    pub summary: ScanSummary,
}

/// Certifies every arrangement of a family. Arrangements are independent and
/// are certified in parallel; the rows come back in enumeration order and are
/// identical regardless of thread count.
pub fn scan_family(
    family: &FamilySpec,
    alpha: Alpha,
    options: &MinimizerOptions,
) -> Result<ScanOutcome> {
    let arrangements = family.arrangements()?;
    let rows: Vec<ScanRow> = arrangements
        .par_iter()
        .map(|pattern| -> Result<ScanRow> {
            let masses = family.masses_for(pattern)?;
            Ok(ScanRow {
                pattern: pattern.canonical_form(),
                report: certify(&masses, alpha, options)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = ScanSummary::default();
    for row in &rows {
        match row.report.verdict {
            Verdict::Excluded => summary.excluded += 1,
            Verdict::NotExcluded => summary.not_excluded += 1,
            Verdict::Inconclusive => summary.inconclusive += 1,
        }
    }
    Ok(ScanOutcome { rows, summary })
}
