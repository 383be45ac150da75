use std::fmt::Write as _;

use crate::pictures::{BoxIter, Picture};
use crate::symbol::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// Space-separated cells.
    Grid,
    /// Tab-separated cells.
    Tsv,
}

/// Renders a picture with axis 1 across and axis 2 down. Pictures of
/// dimension above 2 are printed as a sequence of 2-dimensional slices,
/// each preceded by a `-- slice k=<j>` header giving the higher coordinates.
pub fn render_picture(p: &Picture<Symbol>, format: OutputFormat) -> String {
    let sep = match format {
        OutputFormat::Grid => " ",
        OutputFormat::Tsv => "\t",
    };
    let mut out = String::new();
    if p.is_empty() {
        return out;
    }
    let shape = p.shape();
    let width = shape[0];
    let height = shape.get(1).copied().unwrap_or(1);
    let plane = width * height;
    let higher: Vec<usize> = shape.iter().skip(2).copied().collect();
    let blocks = BoxIter::new(&higher);
    for (b, coords) in blocks.enumerate() {
        if p.dim() > 2 {
            let c: Vec<String> = coords.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "-- slice k={}", c.join(","));
        }
        let cells = &p.cells()[b * plane..(b + 1) * plane];
        for row in cells.chunks(width) {
            let r: Vec<&str> = row.iter().map(Symbol::as_str).collect();
            let _ = writeln!(out, "{}", r.join(sep));
        }
    }
    out
}
