//! Standalone SVG figures of the unit disk.
//!
//! The unit disk maps onto a 512×512 view box with the origin at the
//! center and the y-axis flipped: `px = 256 + 256 x`, `py = 256 - 256 y`.

use std::fmt::Write;

use num_complex::Complex64;

use crate::variability::{RegionKind, VariabilityRegion};

pub const SIZE: f64 = 512.0;
pub const HALF: f64 = 256.0;

pub fn to_px(z: Complex64) -> (f64, f64) {
    (HALF + HALF * z.re, HALF - HALF * z.im)
}

fn num(v: f64) -> String {
    // avoid "-0.0000"
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

pub struct Figure<'a> {
    pub nodes: &'a [Complex64],
    pub query: Complex64,
    pub region: &'a VariabilityRegion,
    pub epsilon_samples: &'a [Complex64],
    pub grid: usize,
}

pub fn render(fig: &Figure) -> String {
    let mut s = String::new();
    let empty = fig.region.is_empty();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n");
    s.push_str("  <rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n");
    if fig.grid > 0 && !empty {
        s.push_str("  <g id=\"grid\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n");
        for i in 0..=fig.grid {
            let p = num(SIZE * i as f64 / fig.grid as f64);
            let _ = writeln!(s, "    <line x1=\"{p}\" y1=\"0.0000\" x2=\"{p}\" y2=\"512.0000\"/>");
            let _ = writeln!(s, "    <line x1=\"0.0000\" y1=\"{p}\" x2=\"512.0000\" y2=\"{p}\"/>");
        }
        s.push_str("  </g>\n");
    }
    s.push_str(
        "  <circle id=\"unit-circle\" cx=\"256.0000\" cy=\"256.0000\" r=\"256.0000\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
    );
    match fig.region.kind {
        RegionKind::Disk(d) => {
            let (cx, cy) = to_px(d.center);
            let _ = writeln!(
                s,
                "  <circle id=\"region\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#3366cc\" fill-opacity=\"0.3\" stroke=\"#3366cc\" stroke-width=\"1\"/>",
                num(cx),
                num(cy),
                num(HALF * d.radius)
            );
        }
        RegionKind::Point(p) => {
            let (cx, cy) = to_px(p);
            let _ = writeln!(
                s,
                "  <circle id=\"region-point\" cx=\"{}\" cy=\"{}\" r=\"3.0000\" fill=\"#3366cc\"/>",
                num(cx),
                num(cy)
            );
        }
        RegionKind::Empty => {}
    }
    s.push_str("  <g id=\"nodes\" fill=\"black\">\n");
    for &z in fig.nodes {
        let (x, y) = to_px(z);
        let _ = writeln!(s, "    <circle class=\"node\" cx=\"{}\" cy=\"{}\" r=\"3.0000\"/>", num(x), num(y));
    }
    s.push_str("  </g>\n");
    if empty {
        s.push_str(
            "  <text id=\"empty-annotation\" x=\"256.0000\" y=\"40.0000\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"24\" fill=\"#cc0000\">EMPTY</text>\n",
        );
    } else {
        let (x, y) = to_px(fig.query);
        let _ = writeln!(
            s,
            "  <circle id=\"query\" cx=\"{}\" cy=\"{}\" r=\"4.0000\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"1.5\"/>",
            num(x),
            num(y)
        );
        if !fig.epsilon_samples.is_empty() {
            s.push_str("  <g id=\"epsilon-samples\" fill=\"#cc6600\">\n");
            for &w in fig.epsilon_samples {
                let (x, y) = to_px(w);
                let _ = writeln!(s, "    <circle class=\"epsilon-sample\" cx=\"{}\" cy=\"{}\" r=\"1.5000\"/>", num(x), num(y));
            }
            s.push_str("  </g>\n");
        }
    }
    s.push_str("</svg>\n");
    s
}
