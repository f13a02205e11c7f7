//! SVG raster of a region in the `(x, y)` unit square.
//!
//! Cells are drawn as unsmoothed rectangles in a `<g id="region">` whose
//! coordinates are grid-cell units (x to the right, y upward). Consecutive
//! inside cells in a row are merged into one rectangle.

use std::fmt::Write;

use crate::error::{Error, Result};

pub const DEFAULT_FILL: &str = "#4477AA";
pub const MIN_PLOT_SIZE: u32 = 64;

const MARGIN: f64 = 56.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    /// Phase shown in the title, radians.
    pub d: f64,
    pub width: u32,
    pub height: u32,
    pub fill: String,
    pub x_label: String,
    pub y_label: String,
}

impl PlotSpec {
    pub fn new(d: f64) -> Self {
        Self {
            d,
            width: 800,
            height: 800,
            fill: DEFAULT_FILL.to_string(),
            x_label: "x".to_string(),
            y_label: "y".to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < MIN_PLOT_SIZE || self.height < MIN_PLOT_SIZE {
            return Err(Error::Domain(format!(
                "plot must be at least {MIN_PLOT_SIZE}x{MIN_PLOT_SIZE} pixels, got {}x{}",
                self.width, self.height
            )));
        }
        Ok(())
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders `mask[j][i]` (row `j` = `y` index, column `i` = `x` index) as SVG.
pub fn render_region_svg(mask: &[Vec<bool>], spec: &PlotSpec) -> Result<String> {
    spec.validate()?;
    let rows = mask.len();
    let cols = mask.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || mask.iter().any(|r| r.len() != cols) {
        return Err(Error::Domain("region mask must be a non-empty rectangle".into()));
    }
    let (w, h) = (f64::from(spec.width), f64::from(spec.height));
    let margin = MARGIN.min(w / 4.0).min(h / 4.0);
    let (pw, ph) = (w - 1.5 * margin, h - 1.5 * margin);
    let (left, top) = (margin, 0.5 * margin);
    let bottom = top + ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        r#"<title>Ellsberg region, d = {:.6} rad ({:.4}π)</title>"#,
        spec.d,
        spec.d / std::f64::consts::PI
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g id="region" data-cols="{cols}" data-rows="{rows}" fill="{}" shape-rendering="crispEdges" transform="translate({left},{top}) scale({},{})">"#,
        escape(&spec.fill),
        pw / cols as f64,
        ph / rows as f64
    );
    for (j, row) in mask.iter().enumerate() {
        let y = rows - 1 - j;
        let mut i = 0;
        while i < cols {
            if !row[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < cols && row[i] {
                i += 1;
            }
            let _ = writeln!(
                svg,
                r#"<rect x="{start}" y="{y}" width="{}" height="1"/>"#,
                i - start
            );
        }
    }
    svg.push_str("</g>\n");

    // axes with ticks at 0, 0.5, 1
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1" fill="none"><rect x="{left}" y="{top}" width="{pw}" height="{ph}"/></g>"#
    );
    let _ = writeln!(svg, r#"<g font-family="sans-serif" font-size="12" fill="black">"#);
    for t in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#,
            left + t * pw,
            bottom + 16.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t}</text>"#,
            left - 6.0,
            bottom - t * ph + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left + pw / 2.0,
        bottom + 34.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        left - 34.0,
        top + ph / 2.0,
        escape(&spec.y_label)
    );
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Counts region cells in an SVG produced by [`render_region_svg`].
/// Returns `(inside, total)`.
pub fn count_region_cells(svg: &str) -> Option<(u64, u64)> {
    let attr = |tag: &str, name: &str| -> Option<u64> {
        let key = format!("{name}=\"");
        let start = tag.find(&key)? + key.len();
        let end = start + tag[start..].find('"')?;
        tag[start..end].parse().ok()
    };
    let group_start = svg.find("<g id=\"region\"")?;
    let group = &svg[group_start..];
    let header_end = group.find('>')?;
    let cols = attr(&group[..header_end], "data-cols")?;
    let rows = attr(&group[..header_end], "data-rows")?;
    let body = &group[header_end..group.find("</g>")?];
    let inside = body
        .split("<rect ")
        .skip(1)
        .map(|tag| attr(tag, "width"))
        .sum::<Option<u64>>()?;
    Some((inside, cols * rows))
}
