//! Randomized verification sweeps of the cyclic-polygon inequalities and
//! identities, reported per suite with worst-case margins.

use anyhow::Result;
use serde::{Deserialize, Serialize};

use cocirc_core::geometry::{
    decompose_r, poly_r, ptolemy_residual, quad_s, sample_cyclic_polygon, VertexSelection,
};
use cocirc_core::potential::Alpha;

/// Residual bound for the exact identities (decomposition, Ptolemy).
const RESIDUAL_BOUND: f64 = 1e-10;

/// Outcome of one suite: case and violation counts plus the worst value seen
/// (the largest — most-nearly-zero — functional value for the negativity
/// suites, the largest absolute residual for the identity suites).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub worst_value: f64,
}

/// Full payload of the `inequalities` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalitiesPayload {
    pub samples: u64,
    pub seed: u64,
    pub max_vertices: usize,
    pub alphas: Vec<f64>,
    pub total_violations: u64,
    pub suites: Vec<SuiteReport>,
}

/// Runs every suite. Sampling is driven by a counter starting at `seed`, so
/// identical parameters reproduce identical reports.
pub fn run_suites(
    samples: u64,
    seed: u64,
    max_vertices: usize,
    alphas: &[f64],
) -> Result<InequalitiesPayload> {
    let parsed_alphas: Vec<Alpha> = alphas
        .iter()
        .map(|&a| Alpha::new(a))
        .collect::<Result<_, _>>()?;
    let mut counter = seed;
    let mut next_seed = move || {
        let s = counter;
        counter = counter.wrapping_add(1);
        s
    };
    let mut suites = Vec::new();

    // Alternating four-chord sums over sampled cyclic quadrilaterals:
    // strictly negative.
    {
        let mut suite = negativity_suite("quad_sum");
        let selection = VertexSelection::all(4)?;
        for _ in 0..samples {
            let theta = sample_cyclic_polygon(4, next_seed())?;
            for &alpha in &parsed_alphas {
                record_negativity(&mut suite, quad_s(&theta, &selection, alpha)?);
            }
        }
        suites.push(suite);
    }

    // Parity-alternating chord sums over sampled cyclic 2k-gons: strictly
    // negative for every even vertex count up to the requested maximum.
    for k in 2..=max_vertices / 2 {
        let mut suite = negativity_suite(&format!("poly_sum_{}", 2 * k));
        let selection = VertexSelection::all(2 * k)?;
        for _ in 0..samples {
            let theta = sample_cyclic_polygon(2 * k, next_seed())?;
            for &alpha in &parsed_alphas {
                record_negativity(&mut suite, poly_r(&theta, &selection, alpha)?);
            }
        }
        suites.push(suite);
    }

    // The decomposition of a 2k-gon sum into quadrilateral sums plus a
    // correction: exact up to rounding (defined for 2k ≥ 6).
    for k in 3..=max_vertices / 2 {
        let mut suite = residual_suite(&format!("decomposition_residual_{}", 2 * k));
        let selection = VertexSelection::all(2 * k)?;
        for _ in 0..samples {
            let theta = sample_cyclic_polygon(2 * k, next_seed())?;
            for &alpha in &parsed_alphas {
                let parts = decompose_r(&theta, &selection, alpha)?;
                record_residual(&mut suite, parts.residual);
            }
        }
        suites.push(suite);
    }

    // Ptolemy's identity on sampled cyclic quadrilaterals: exact up to
    // rounding, independent of the exponent.
    {
        let mut suite = residual_suite("ptolemy_residual");
        let selection = VertexSelection::all(4)?;
        for _ in 0..samples {
            let theta = sample_cyclic_polygon(4, next_seed())?;
            record_residual(&mut suite, ptolemy_residual(&theta, &selection)?.abs());
        }
        suites.push(suite);
    }

    let total_violations = suites.iter().map(|s| s.violations).sum();
    Ok(InequalitiesPayload {
        samples,
        seed,
        max_vertices,
        alphas: alphas.to_vec(),
        total_violations,
        suites,
    })
}

fn negativity_suite(name: &str) -> SuiteReport {
    SuiteReport {
        name: name.to_owned(),
        cases: 0,
        violations: 0,
        worst_value: f64::MIN,
    }
}

fn residual_suite(name: &str) -> SuiteReport {
    SuiteReport {
        name: name.to_owned(),
        cases: 0,
        violations: 0,
        worst_value: 0.0,
    }
}

fn record_negativity(suite: &mut SuiteReport, value: f64) {
    suite.cases += 1;
    if value >= 0.0 {
        suite.violations += 1;
    }
    suite.worst_value = suite.worst_value.max(value);
}

fn record_residual(suite: &mut SuiteReport, residual: f64) {
    suite.cases += 1;
    if residual > RESIDUAL_BOUND {
        suite.violations += 1;
    }
    suite.worst_value = suite.worst_value.max(residual);
}
