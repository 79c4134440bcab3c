//! SVG snapshot of a diagram.

use crate::graph::{EdgeGrowth, VoronoiGraph};
use crate::local::Family;
use quadrot_geom::point::frame_to_world;
use quadrot_geom::{ContactType, PointSet};
use std::fmt::Write;

/// World-space rectangle `(xmin, ymin, xmax, ymax)`.
pub type Viewport = (f64, f64, f64, f64);

/// Bounding box of the sites and finite vertices, padded by 10%.
pub fn default_viewport(points: &PointSet, g: &VoronoiGraph) -> Viewport {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut add = |x: f64, y: f64| {
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    };
    for p in points.iter() {
        add(p.x, p.y);
    }
    for v in g.finite_vertices() {
        if let Some((x, y)) = v.embedding {
            add(x, y);
        }
    }
    let pad = 0.1 * (b.2 - b.0).max(b.3 - b.1).max(1e-9);
    (b.0 - pad, b.1 - pad, b.2 + pad, b.3 + pad)
}

/// Render sites, vertices and edges. Growing edges carry an arrow pointing
/// to where squares get larger; neutral faces are shaded. Unbounded edges
/// are drawn as rays clipped by the viewport.
pub fn to_svg(points: &PointSet, g: &VoronoiGraph, view: Viewport) -> String {
    let (x0, y0, x1, y1) = view;
    let (w, h) = (x1 - x0, y1 - y0);
    let size = 800.0;
    let k = size / w.max(h);
    let px = |x: f64, y: f64| ((x - x0) * k, (y1 - y) * k);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
        w * k,
        h * k,
        w * k,
        h * k
    );
    s.push_str(concat!(
        r#"<defs><marker id="grow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
        r##"<path d="M0,0 L10,5 L0,10 z" fill="#c33"/></marker></defs>"##,
        "\n"
    ));

    for (side, p, q) in g.neutral_faces() {
        let mut corners: Vec<(f64, f64)> = g
            .edges
            .values()
            .filter(|e| e.kappa_e.len() == 3 && e.kappa_e.staple() == Some((side, p, q)))
            .flat_map(|e| [&e.u, &e.v])
            .filter_map(|k| g.vertices.get(k).and_then(|v| v.embedding))
            .collect();
        if corners.len() < 3 {
            continue;
        }
        let (cx, cy) = corners.iter().fold((0.0, 0.0), |a, c| (a.0 + c.0, a.1 + c.1));
        let (cx, cy) = (cx / corners.len() as f64, cy / corners.len() as f64);
        corners.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
        corners.dedup();
        let pts: Vec<String> = corners
            .iter()
            .map(|&(x, y)| {
                let (a, b) = px(x, y);
                format!("{a:.3},{b:.3}")
            })
            .collect();
        let _ = writeln!(s, r##"<polygon points="{}" fill="#ddd" stroke="none"/>"##, pts.join(" "));
    }

    let pos = |k: &ContactType| g.vertices.get(k).and_then(|v| v.embedding);
    let reach = 2.0 * (w + h);
    for e in g.edges.values() {
        let Some(b) = pos(&e.v) else { continue };
        let (a, from_a) = if e.bounded {
            let Some(a) = pos(&e.u) else { continue };
            (a, e.growth == EdgeGrowth::TowardV)
        } else {
            let Some(Family::Corner { .. }) = Family::of(&e.kappa_e) else { continue };
            let (du, dv) = Family::of(&e.kappa_e).unwrap().center_velocity();
            let (dx, dy) = frame_to_world(du, dv, g.orientation);
            ((b.0 + dx * reach, b.1 + dy * reach), false)
        };
        let (start, end) = if from_a { (a, b) } else { (b, a) };
        let (sx, sy) = px(start.0, start.1);
        let (ex, ey) = px(end.0, end.1);
        let style = match e.growth {
            EdgeGrowth::None => r##"stroke="#246" stroke-width="1.2""##.to_string(),
            _ => r##"stroke="#c33" stroke-width="1" marker-end="url(#grow)""##.to_string(),
        };
        let _ = writeln!(
            s,
            r#"<line x1="{sx:.3}" y1="{sy:.3}" x2="{ex:.3}" y2="{ey:.3}" {style}><title>{}</title></line>"#,
            e.kappa_e
        );
    }
    for v in g.finite_vertices() {
        if v.key.points().len() == 1 {
            continue;
        }
        let Some((x, y)) = v.embedding else { continue };
        let (a, b) = px(x, y);
        let _ = writeln!(s, r##"<circle cx="{a:.3}" cy="{b:.3}" r="2.5" fill="#246"><title>{}</title></circle>"##, v.key);
    }
    for (i, p) in points.iter().enumerate() {
        let (a, b) = px(p.x, p.y);
        let _ = writeln!(s, r#"<circle cx="{a:.3}" cy="{b:.3}" r="4" fill="black"><title>{} (index {i})</title></circle>"#, p.id);
    }
    s.push_str("</svg>\n");
    s
}
