//! Plot artifacts: an SVG scatter with the decision boundary for two-input
//! tables, and a hyperplane mesh CSV for three-input tables.
//!
//! The SVG places data in pixel space through one affine map per axis
//! (`data_to_px` / `px_to_data`), so emitted coordinates can be mapped back
//! exactly. Class-1 points render as stars, class-0 points as circles, and
//! every point glyph carries `class="point ..."`.

use std::fmt::Write as _;

use anyhow::bail;
use tlu_core::table::TruthTable;
use tlu_core::unit::{Bit, ThresholdUnit};

pub const VIEW_SIZE: f64 = 480.0;
pub const PLOT_MARGIN: f64 = 48.0;
/// Axis range used for both axes, slightly padding the unit square.
pub const DEFAULT_RANGE: (f64, f64) = (-0.1, 1.1);

const STAR_OUTER: f64 = 7.0;
const STAR_INNER: f64 = 2.8;
const CIRCLE_RADIUS: f64 = 5.0;

/// A two-input scatter with an optional boundary line `(w1, w2, t)` drawn as
/// the solution set of `w1·x1 + w2·x2 = t`.
#[derive(Debug, Clone)]
pub struct PlotSpec2D {
    pub points: Vec<(f64, f64, Bit)>,
    pub line: Option<(f64, f64, f64)>,
    pub range: (f64, f64),
}

impl PlotSpec2D {
    pub fn from_table(table: &TruthTable, unit: Option<&ThresholdUnit>) -> anyhow::Result<Self> {
        if table.n_inputs() != 2 {
            bail!("scatter plots need a 2-input table, got {}", table.n_inputs());
        }
        let points = table
            .rows()
            .iter()
            .map(|(inputs, target)| (inputs[0].as_f64(), inputs[1].as_f64(), *target))
            .collect();
        let line = match unit {
            Some(u) => {
                let w = u.weights();
                if w[0] == 0.0 && w[1] == 0.0 {
                    None
                } else {
                    Some((w[0], w[1], u.threshold()))
                }
            }
            None => None,
        };
        Ok(Self {
            points,
            line,
            range: DEFAULT_RANGE,
        })
    }

    pub fn data_to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let (lo, hi) = self.range;
        let span = VIEW_SIZE - 2.0 * PLOT_MARGIN;
        let px = PLOT_MARGIN + (x - lo) / (hi - lo) * span;
        let py = VIEW_SIZE - PLOT_MARGIN - (y - lo) / (hi - lo) * span;
        (px, py)
    }

    pub fn px_to_data(&self, px: f64, py: f64) -> (f64, f64) {
        let (lo, hi) = self.range;
        let span = VIEW_SIZE - 2.0 * PLOT_MARGIN;
        let x = lo + (px - PLOT_MARGIN) / span * (hi - lo);
        let y = lo + (VIEW_SIZE - PLOT_MARGIN - py) / span * (hi - lo);
        (x, y)
    }

    /// Boundary endpoints in data coordinates, spanning the axis range.
    /// Vertical boundaries (`w2 == 0`) render at `x1 = t / w1`.
    pub fn line_endpoints(&self) -> Option<((f64, f64), (f64, f64))> {
        let (w1, w2, t) = self.line?;
        let (lo, hi) = self.range;
        if w2 != 0.0 {
            let y_at = |x: f64| (t - w1 * x) / w2;
            Some(((lo, y_at(lo)), (hi, y_at(hi))))
        } else if w1 != 0.0 {
            let x = t / w1;
            Some(((x, lo), (x, hi)))
        } else {
            None
        }
    }

    pub fn to_svg(&self) -> String {
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
            VIEW_SIZE
        );
        let _ = writeln!(
            svg,
            r#"  <rect x="0" y="0" width="{0}" height="{0}" fill="white"/>"#,
            VIEW_SIZE
        );

        // Light grid at the quarter marks of the unit square.
        for k in 0..=4 {
            let v = k as f64 * 0.25;
            let (px, _) = self.data_to_px(v, 0.0);
            let (_, py) = self.data_to_px(0.0, v);
            let _ = writeln!(
                svg,
                r#"  <line class="grid" x1="{px}" y1="{m}" x2="{px}" y2="{e}" stroke="gainsboro"/>"#,
                m = PLOT_MARGIN,
                e = VIEW_SIZE - PLOT_MARGIN
            );
            let _ = writeln!(
                svg,
                r#"  <line class="grid" x1="{m}" y1="{py}" x2="{e}" y2="{py}" stroke="gainsboro"/>"#,
                m = PLOT_MARGIN,
                e = VIEW_SIZE - PLOT_MARGIN
            );
        }
        let _ = writeln!(
            svg,
            r#"  <rect class="frame" x="{m}" y="{m}" width="{s}" height="{s}" fill="none" stroke="dimgray"/>"#,
            m = PLOT_MARGIN,
            s = VIEW_SIZE - 2.0 * PLOT_MARGIN
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{x}" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="14">x1</text>"#,
            x = VIEW_SIZE / 2.0,
            y = VIEW_SIZE - 12.0
        );
        let _ = writeln!(
            svg,
            r#"  <text x="14" y="{y}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 14 {y})">x2</text>"#,
            y = VIEW_SIZE / 2.0
        );

        if let Some(((x1, y1), (x2, y2))) = self.line_endpoints() {
            let (px1, py1) = self.data_to_px(x1, y1);
            let (px2, py2) = self.data_to_px(x2, y2);
            let _ = writeln!(
                svg,
                r#"  <line class="boundary" x1="{px1}" y1="{py1}" x2="{px2}" y2="{py2}" stroke="royalblue" stroke-width="1.5"/>"#
            );
        }

        for &(x, y, class) in &self.points {
            let (px, py) = self.data_to_px(x, y);
            if class.is_set() {
                let _ = writeln!(
                    svg,
                    r#"  <path class="point class1" d="{}" fill="black"/>"#,
                    star_path(px, py)
                );
            } else {
                let _ = writeln!(
                    svg,
                    r#"  <circle class="point class0" cx="{px}" cy="{py}" r="{CIRCLE_RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>"#
                );
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Five-point star outline centered on the given pixel.
fn star_path(cx: f64, cy: f64) -> String {
    let mut d = String::new();
    for k in 0..10 {
        let radius = if k % 2 == 0 { STAR_OUTER } else { STAR_INNER };
        let angle = -std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI / 5.0;
        let x = cx + radius * angle.cos();
        let y = cy + radius * angle.sin();
        let _ = write!(d, "{}{x} {y}", if k == 0 { "M" } else { " L" });
    }
    d.push_str(" Z");
    d
}

/// A three-input hyperplane sampled over the unit square, together with the
/// table's labeled corner points.
#[derive(Debug, Clone)]
pub struct MeshSpec3D {
    /// `(w1, w2, w3, t)`; `w3` must be nonzero for the surface to exist.
    pub unit: Option<(f64, f64, f64, f64)>,
    pub points: Vec<(f64, f64, f64, Bit)>,
    pub steps: usize,
}

impl MeshSpec3D {
    pub fn from_table(
        table: &TruthTable,
        unit: Option<&ThresholdUnit>,
        steps: usize,
    ) -> anyhow::Result<Self> {
        if table.n_inputs() != 3 {
            bail!("mesh output needs a 3-input table, got {}", table.n_inputs());
        }
        if steps == 0 {
            bail!("grid resolution must be at least 1");
        }
        let unit = match unit {
            Some(u) => {
                let w = u.weights();
                if w[2] == 0.0 {
                    bail!("cannot solve the boundary for x3 when w3 is 0");
                }
                Some((w[0], w[1], w[2], u.threshold()))
            }
            None => None,
        };
        let points = table
            .rows()
            .iter()
            .map(|(inputs, target)| {
                (
                    inputs[0].as_f64(),
                    inputs[1].as_f64(),
                    inputs[2].as_f64(),
                    *target,
                )
            })
            .collect();
        Ok(Self { unit, points, steps })
    }

    /// Boundary height `x3 = (t - w1·x - w2·y) / w3` over the base square.
    pub fn height_at(&self, x: f64, y: f64) -> Option<f64> {
        let (w1, w2, w3, t) = self.unit?;
        Some((t - w1 * x - w2 * y) / w3)
    }

    /// CSV with `kind,x,y,z,class`: `mesh` rows sample the boundary surface
    /// over the unit square, `corner` rows are the labeled input points.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,x,y,z,class\n");
        if self.unit.is_some() {
            for i in 0..=self.steps {
                for j in 0..=self.steps {
                    let x = i as f64 / self.steps as f64;
                    let y = j as f64 / self.steps as f64;
                    let z = self.height_at(x, y).unwrap();
                    let _ = writeln!(out, "mesh,{x},{y},{z},");
                }
            }
        }
        for &(x, y, z, class) in &self.points {
            let _ = writeln!(out, "corner,{x},{y},{z},{class}");
        }
        out
    }
}
