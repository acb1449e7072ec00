//! SVG rendering of planar discrete N-sets.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::nset::DiscreteNSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    /// Pixels per unit length.
    pub scale: u32,
    /// Draw the unit-square lattice grid over the cubes.
    pub grid: bool,
    /// Label each cube with its cell coordinates.
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            scale: 120,
            grid: true,
            labels: false,
        }
    }
}

/// Draws the `k^2` translated squares of `set`, coloured by residue class.
/// Output depends only on the inputs.
pub fn render_svg(set: &DiscreteNSet, opts: &SvgOptions) -> Result<String> {
    if set.n() != 2 {
        return Err(Error::UnsupportedDimension(set.n()));
    }
    let k = set.k() as i64;
    let s = i64::from(opts.scale.max(1));
    // integer lattice bounding box of all squares
    let (mut x0, mut y0, mut x1, mut y1) = (0i64, 0i64, 1i64, 1i64);
    for f in set.shifts() {
        x0 = x0.min(f.coords()[0]);
        y0 = y0.min(f.coords()[1]);
        x1 = x1.max(f.coords()[0] + 1);
        y1 = y1.max(f.coords()[1] + 1);
    }
    let margin = s / 4;
    let width = (x1 - x0) * s + 2 * margin;
    let height = (y1 - y0) * s + 2 * margin;
    // pixel position of the point (a/k, b/k), with y pointing up
    let px = |a: i64| margin + (a - x0 * k) * s / k;
    let py = |b: i64| margin + (y1 * k - b) * s / k;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##).unwrap();
    let cells = set.cell_count();
    for cell in 0..cells {
        let c = set.cell_coords(cell);
        let f = set.shift(cell);
        let a = c[0] as i64 + k * f.coords()[0];
        let b = c[1] as i64 + k * f.coords()[1];
        let hue = cell * 360 / cells;
        let (left, top) = (px(a), py(b + 1));
        let side = px(a + 1) - left;
        writeln!(
            out,
            r##"<rect x="{left}" y="{top}" width="{side}" height="{side}" fill="hsl({hue},70%,60%)" stroke="#333333" stroke-width="1"/>"##
        )
        .unwrap();
        if opts.labels {
            writeln!(
                out,
                r##"<text x="{}" y="{}" font-size="{}" text-anchor="middle" fill="#000000">{},{}</text>"##,
                left + side / 2,
                top + side / 2 + side / 8,
                (side / 3).max(6),
                c[0],
                c[1]
            )
            .unwrap();
        }
    }
    if opts.grid {
        for x in x0..=x1 {
            writeln!(
                out,
                r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#000000" stroke-width="2" stroke-dasharray="6,4" fill="none"/>"##,
                px(x * k),
                py(y1 * k),
                py(y0 * k)
            )
            .unwrap();
        }
        for y in y0..=y1 {
            writeln!(
                out,
                r##"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="#000000" stroke-width="2" stroke-dasharray="6,4" fill="none"/>"##,
                py(y * k),
                px(x0 * k),
                px(x1 * k)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

impl DiscreteNSet {
    pub fn render_svg(&self, opts: &SvgOptions) -> Result<String> {
        render_svg(self, opts)
    }
}
