//! Static SVG pictures: the curve `u` and the harmonic image of `S_n`.

use std::fmt::Write;

use gasket_core::exact::rational::{to_f64, Vec3Q};
use gasket_core::harmonic::{harmonic_grid, u_dyadic_samples, BoundaryTriple};
use gasket_core::{Error, Result};

const MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig {
    pub level: u32,
    pub width: u32,
    pub height: u32,
}

impl RenderConfig {
    pub fn validate(&self, cap: u32) -> Result<()> {
        if self.level > cap {
            return Err(Error::Resource { requested: self.level, cap });
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::Invalid("canvas must have positive size".into()));
        }
        Ok(())
    }

    /// Sends `e_0, e_1, e_ω` to `(0,0), (1,0), (½, √3/2)`, fitted and centred on the canvas.
    pub fn project(&self, v: &Vec3Q) -> (f64, f64) {
        let [_, y, z] = v.0.each_ref().map(to_f64);
        let (px, py) = (y + 0.5 * z, 0.75f64.sqrt() * z);
        let (w, h) = (self.width as f64, self.height as f64);
        let scale = (w - 2.0 * MARGIN).min((h - 2.0 * MARGIN) / 0.75f64.sqrt()).max(1.0);
        let ox = 0.5 * (w - scale);
        let oy = 0.5 * (h + 0.75f64.sqrt() * scale);
        (ox + scale * px, oy - scale * py)
    }
}

/// Six decimals, without a negative zero.
fn coord(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn header(cfg: &RenderConfig) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = cfg.width,
        h = cfg.height
    )
}

/// Polyline through `u(k/2^n)`, `k = 0…2^n`.
pub fn curve_svg(cfg: &RenderConfig) -> Result<String> {
    let points: Vec<String> = u_dyadic_samples(cfg.level)?
        .iter()
        .map(|v| {
            let (x, y) = cfg.project(v);
            format!("{},{}", coord(x), coord(y))
        })
        .collect();
    let mut out = header(cfg);
    writeln!(out, "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>", points.join(" ")).unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// One segment per edge of `S_n`, between the harmonic values at its ends.
pub fn triangle_svg(cfg: &RenderConfig, cap: u32) -> Result<String> {
    let grid = harmonic_grid(&BoundaryTriple::universal(), cfg.level, cap)?;
    let mut out = header(cfg);
    out.push_str("<g stroke=\"black\" stroke-width=\"0.5\">\n");
    for (a, b) in grid.edges() {
        let (x1, y1) = cfg.project(grid.get(a).unwrap());
        let (x2, y2) = cfg.project(grid.get(b).unwrap());
        writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", coord(x1), coord(y1), coord(x2), coord(y2))
            .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(level: u32) -> RenderConfig {
        RenderConfig { level, width: 400, height: 400 }
    }

    fn polyline(svg: &str) -> Vec<(f64, f64)> {
        let start = svg.find("points=\"").unwrap() + 8;
        let end = start + svg[start..].find('"').unwrap();
        svg[start..end]
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn curve_endpoints_and_mirror() {
        let c = cfg(10);
        let pts = polyline(&curve_svg(&c).unwrap());
        assert_eq!(pts.len(), 1025);
        let corner0 = c.project(&Vec3Q::basis(0));
        let corner1 = c.project(&Vec3Q::basis(1));
        assert!((pts[0].0 - corner0.0).abs() < 1e-6 && (pts[0].1 - corner0.1).abs() < 1e-6);
        assert!((pts[1024].0 - corner1.0).abs() < 1e-6 && (pts[1024].1 - corner1.1).abs() < 1e-6);
        let axis = 200.0;
        for k in 0..pts.len() {
            let (a, b) = (pts[k], pts[1024 - k]);
            assert!((a.0 - axis + b.0 - axis).abs() < 2e-6 && (a.1 - b.1).abs() < 2e-6, "k={k}");
        }
    }

    #[test]
    fn triangle_segment_counts() {
        assert_eq!(triangle_svg(&cfg(1), 10).unwrap().matches("<line").count(), 9);
        assert_eq!(triangle_svg(&cfg(2), 10).unwrap().matches("<line").count(), 27);
    }

    #[test]
    fn config_checks() {
        assert!(matches!(cfg(11).validate(10), Err(Error::Resource { .. })));
        assert!(RenderConfig { level: 1, width: 0, height: 5 }.validate(10).is_err());
        assert_eq!(coord(-0.0000001), "0.000000");
    }
}
