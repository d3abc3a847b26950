//! Static SVG plots of circular configurations.

use std::fmt::Write as _;
use std::path::Path;

const SIZE: f64 = 520.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 200.0;

/// Renders a configuration as a standalone SVG document: the circle, one
/// marker per body with area scaled by mass, and bodies that differ from the
/// most common mass value highlighted.
pub fn render(angles: &[f64], masses: &[f64]) -> String {
    let max_mass = masses.iter().copied().fold(f64::MIN, f64::max).max(1e-300);
    let modal = modal_mass(masses);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        svg,
        "  <circle cx=\"{CENTER}\" cy=\"{CENTER}\" r=\"{RADIUS}\" fill=\"none\" stroke=\"#9aa7b5\" stroke-width=\"1.5\"/>"
    );
    let _ = writeln!(
        svg,
        "  <circle cx=\"{CENTER}\" cy=\"{CENTER}\" r=\"2.5\" fill=\"#9aa7b5\"/>"
    );
    for (i, (&theta, &mass)) in angles.iter().zip(masses).enumerate() {
        let x = CENTER + RADIUS * theta.cos();
        let y = CENTER - RADIUS * theta.sin();
        let marker = 6.0 + 10.0 * (mass / max_mass).sqrt();
        let fill = if mass == modal { "#5b6b7f" } else { "#c0452f" };
        let _ = writeln!(
            svg,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{marker:.2}\" fill=\"{fill}\" fill-opacity=\"0.85\"/>"
        );
        let lx = CENTER + (RADIUS + 34.0) * theta.cos();
        let ly = CENTER - (RADIUS + 34.0) * theta.sin();
        let _ = writeln!(
            svg,
            "  <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#333333\">m{}={}</text>",
            i + 1,
            mass
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// The most frequent mass value (ties broken arbitrarily but
/// deterministically); bodies with any other value get the highlight color.
fn modal_mass(masses: &[f64]) -> f64 {
    let mut counts: Vec<(f64, usize)> = Vec::new();
    for &mass in masses {
        match counts.iter_mut().find(|(value, _)| *value == mass) {
            Some(entry) => entry.1 += 1,
            None => counts.push((mass, 1)),
        }
    }
    counts
        .iter()
        .max_by_key(|(_, count)| *count)
        .map(|(value, _)| *value)
        .unwrap_or(1.0)
}

/// Writes the plot, downgrading any failure to a warning: plots are a
/// convenience and never affect the math payload or the exit code.
pub fn write(path: &Path, angles: &[f64], masses: &[f64]) {
    let svg = render(angles, masses);
    if let Err(err) = std::fs::write(path, svg) {
        eprintln!(
            "cocirc: warning: could not write plot {}: {err}",
            path.display()
        );
    }
}
