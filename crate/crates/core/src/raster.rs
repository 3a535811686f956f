//! Plain-text graymap (P2) and pixmap (P3) rendering of 2-d labelings.
//!
//! Pixel `(col, row)` shows grid cell `(col, height − 1 − row)`, so the
//! second coordinate grows upward as in a plot.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::{CellAssignment, Label};

/// Gray levels for unique labels stay at or below this; ties are 255.
const MAX_LABEL_GRAY: usize = 200;

pub const TIE_GRAY: u8 = 255;

/// Colors for the first labels in pixmaps; further labels cycle.
pub const PALETTE: [[u8; 3]; 6] = [
    [31, 119, 180],
    [255, 127, 14],
    [148, 103, 189],
    [140, 86, 75],
    [227, 119, 194],
    [127, 127, 127],
];

/// Color of tied pixels in pixmaps.
pub const TIE_COLOR: [u8; 3] = [44, 160, 44];

fn check(assignment: &CellAssignment, resolution: &[usize]) -> Result<(usize, usize)> {
    match resolution {
        [w, h] if w * h == assignment.len() => Ok((*w, *h)),
        [_, _] => Err(Error::invalid("resolution does not match the assignment")),
        _ => Err(Error::invalid("rasters are only defined for d = 2")),
    }
}

fn write_rows<F>(out: &mut String, w: usize, h: usize, per_line: usize, mut pixel: F)
where
    F: FnMut(usize, &mut String),
{
    for row in 0..h {
        let y = h - 1 - row;
        for col in 0..w {
            if col > 0 {
                out.push(if col % per_line == 0 { '\n' } else { ' ' });
            }
            pixel(y * w + col, out);
        }
        out.push('\n');
    }
}

/// Label `i` gets gray `round(i·200/(n−1))`; tied cells are white.
pub fn labels_pgm(assignment: &CellAssignment, resolution: &[usize]) -> Result<String> {
    let (w, h) = check(assignment, resolution)?;
    let n = assignment.targets();
    let levels: Vec<usize> = (0..n)
        .map(|i| (i * MAX_LABEL_GRAY + (n - 1) / 2) / (n - 1).max(1))
        .collect();
    let mut out = format!("P2\n{w} {h}\n255\n");
    write_rows(&mut out, w, h, 16, |c, out| {
        let v = match assignment.label(c) {
            Label::Unique(i) => levels[i],
            Label::Tied(_) => TIE_GRAY as usize,
        };
        let _ = write!(out, "{v}");
    });
    Ok(out)
}

/// Label `i` gets `PALETTE[i % 6]`; tied cells get [`TIE_COLOR`].
pub fn labels_ppm(assignment: &CellAssignment, resolution: &[usize]) -> Result<String> {
    let (w, h) = check(assignment, resolution)?;
    let mut out = format!("P3\n{w} {h}\n255\n");
    write_rows(&mut out, w, h, 5, |c, out| {
        let [r, g, b] = match assignment.label(c) {
            Label::Unique(i) => PALETTE[i % PALETTE.len()],
            Label::Tied(_) => TIE_COLOR,
        };
        let _ = write!(out, "{r} {g} {b}");
    });
    Ok(out)
}

/// Fraction of pixels that are tied.
pub fn tied_fraction(assignment: &CellAssignment) -> f64 {
    assignment.tied_cells() as f64 / assignment.len() as f64
}
