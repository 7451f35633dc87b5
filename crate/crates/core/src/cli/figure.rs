//! Plottable construction data: labelled points, circles and segments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{circumcenter, ComplexPoint};
use crate::hyperbolic::{chord_partners, geodesic, Geodesic, HalfPlanePair};
use crate::visual_angle::{catalog_auto, PointCatalog, UNIT_TOL};

pub const FIGURES: [&str; 5] = ["fig3", "fig4", "fig5", "fig6", "fig7"];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Point,
    Circle,
    Segment,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Point => "point",
            Kind::Circle => "circle",
            Kind::Segment => "segment",
        }
    }
}

/// One row: a point `(x1, y1)`, a circle with center `(x1, y1)` and radius `x2`, or a
/// segment from `(x1, y1)` to `(x2, y2)`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Element {
    pub kind: Kind,
    pub label: String,
    pub x1: f64,
    pub y1: f64,
    pub x2: Option<f64>,
    pub y2: Option<f64>,
}

#[derive(Default)]
struct Builder(Vec<Element>);

impl Builder {
    fn point(&mut self, label: &str, z: ComplexPoint) -> &mut Self {
        self.0.push(Element {
            kind: Kind::Point,
            label: label.into(),
            x1: z.re(),
            y1: z.im(),
            x2: None,
            y2: None,
        });
        self
    }

    fn opt_point(&mut self, label: &str, z: Option<ComplexPoint>) -> &mut Self {
        if let Some(z) = z {
            self.point(label, z);
        }
        self
    }

    fn circle(&mut self, label: &str, center: ComplexPoint, radius: f64) -> &mut Self {
        self.0.push(Element {
            kind: Kind::Circle,
            label: label.into(),
            x1: center.re(),
            y1: center.im(),
            x2: Some(radius),
            y2: None,
        });
        self
    }

    fn segment(&mut self, label: &str, from: ComplexPoint, to: ComplexPoint) -> &mut Self {
        self.0.push(Element {
            kind: Kind::Segment,
            label: label.into(),
            x1: from.re(),
            y1: from.im(),
            x2: Some(to.re()),
            y2: Some(to.im()),
        });
        self
    }
}

fn require_unit(p: &HalfPlanePair) -> Result<()> {
    if p.is_unit(UNIT_TOL) {
        Ok(())
    } else {
        let deviation = (p.a().abs() - 1.0).abs().max((p.b().abs() - 1.0).abs());
        Err(Error::UnitViolation { deviation })
    }
}

fn real(x: Option<crate::geom::RealPoint>) -> Option<ComplexPoint> {
    x.map(|r| r.to_complex())
}

fn geodesic_circle(b: &mut Builder, p: &HalfPlanePair) -> Result<()> {
    match geodesic(p)? {
        Geodesic::Semicircle(g) => {
            b.circle("geodesic", g.euclid_center.to_complex(), g.euclid_radius);
        }
        Geodesic::Vertical { foot } => {
            let top = ComplexPoint::raw(foot.x(), 2.0 * p.a().im().max(p.b().im()));
            b.segment("geodesic", foot.to_complex(), top);
        }
    }
    Ok(())
}

/// Tangent circles at `d` and `2c - d` with centers `p` and `q`.
fn fig3(b: &mut Builder, p: &HalfPlanePair, cat: &PointCatalog) {
    let d = cat.d.to_complex();
    b.point("a", p.a()).point("b", p.b()).point("d", d);
    b.opt_point("f", real(cat.f)).opt_point("c", real(cat.c));
    b.point("p", cat.p).opt_point("q", cat.q).point("m", cat.m);
    b.circle("circle_p", cat.p, cat.p.im());
    if let Some(q) = cat.q {
        b.circle("circle_q", q, q.im());
    }
    b.segment("ad", p.a(), d).segment("db", d, p.b());
}

/// `u = LIS[a, b̄, b, ā]` and the circle about `c` orthogonal to the circle through `a, ā, b`.
fn fig4(b: &mut Builder, p: &HalfPlanePair, cat: &PointCatalog) -> Result<()> {
    let (a, bb) = (p.a(), p.b());
    let d = cat.d.to_complex();
    b.point("a", a)
        .point("b", bb)
        .point("a_conj", a.conj())
        .point("b_conj", bb.conj());
    b.point("u", cat.u)
        .point("d", d)
        .opt_point("c", real(cat.c));
    if let Ok(w) = circumcenter(a, a.conj(), bb) {
        b.circle("circle_a_abar_b", w, a.dist(w));
    }
    if let Some(c) = real(cat.c) {
        b.circle("circle_c", c, c.dist(d));
    }
    b.segment("a_bbar", a, bb.conj())
        .segment("b_abar", bb, a.conj());
    b.segment("ad", a, d).segment("db", d, bb);
    Ok(())
}

/// Collinear `u, s, m, v` with the geodesic endpoints.
fn fig5(b: &mut Builder, p: &HalfPlanePair, cat: &PointCatalog) -> Result<()> {
    let (a, bb) = (p.a(), p.b());
    b.point("a", a).point("b", bb);
    b.point("u", cat.u)
        .opt_point("s", cat.s)
        .point("m", cat.m)
        .opt_point("v", cat.v);
    b.opt_point("a_star", real(cat.a_star))
        .opt_point("b_star", real(cat.b_star));
    b.point("d", cat.d.to_complex())
        .opt_point("c", real(cat.c))
        .opt_point("u1", real(cat.u1));
    geodesic_circle(b, p)?;
    if let (Some(v), Some(s)) = (cat.v, cat.s) {
        b.segment("uv", cat.u, if v.im() >= s.im() { v } else { s });
    }
    if let (Some(x), Some(y)) = (real(cat.a_star), real(cat.b_star)) {
        b.segment("a_bstar", a, y).segment("b_astar", bb, x);
        b.segment("a_astar", a, x).segment("b_bstar", bb, y);
    }
    Ok(())
}

/// Right angle `∠(0, m, c)` on the circle about `c` through `m`.
fn fig6(b: &mut Builder, p: &HalfPlanePair, cat: &PointCatalog) -> Result<()> {
    require_unit(p)?;
    b.point("a", p.a())
        .point("b", p.b())
        .point("O", ComplexPoint::ZERO);
    b.point("u", cat.u)
        .point("m", cat.m)
        .opt_point("v", cat.v)
        .opt_point("c", real(cat.c));
    b.circle("unit_circle", ComplexPoint::ZERO, 1.0);
    if let Some(c) = real(cat.c) {
        b.circle("circle_c", c, c.dist(cat.m));
        b.segment("Om", ComplexPoint::ZERO, cat.m)
            .segment("mc", cat.m, c);
    }
    if let Some(v) = cat.v {
        b.segment("uv", cat.u, v);
    }
    Ok(())
}

/// Chord partners `ya, yb` through `k` and their conjugates.
fn fig7(b: &mut Builder, p: &HalfPlanePair, cat: &PointCatalog, k: Option<f64>) -> Result<()> {
    require_unit(p)?;
    let k = k.unwrap_or(cat.d.x());
    let (ya, yb) = chord_partners(p.a(), p.b(), k)?;
    let kz = ComplexPoint::raw(k, 0.0);
    b.point("a", p.a())
        .point("b", p.b())
        .point("k", kz)
        .point("d", cat.d.to_complex());
    b.point("ya", ya)
        .point("yb", yb)
        .point("ya_conj", ya.conj())
        .point("yb_conj", yb.conj());
    b.circle("unit_circle", ComplexPoint::ZERO, 1.0);
    b.segment("a_ya", p.a(), ya).segment("b_yb", p.b(), yb);
    Ok(())
}

/// Elements of the named figure, or `None` when the name is unknown.
pub fn figure(name: &str, p: &HalfPlanePair, k: Option<f64>) -> Option<Result<Vec<Element>>> {
    if !FIGURES.contains(&name) {
        return None;
    }
    let build = || -> Result<Vec<Element>> {
        let cat = catalog_auto(p)?;
        let mut b = Builder::default();
        match name {
            "fig3" => fig3(&mut b, p, &cat),
            "fig4" => fig4(&mut b, p, &cat)?,
            "fig5" => fig5(&mut b, p, &cat)?,
            "fig6" => fig6(&mut b, p, &cat)?,
            _ => fig7(&mut b, p, &cat, k)?,
        }
        Ok(b.0)
    };
    Some(build())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(elems: &[Element]) -> Vec<&str> {
        elems.iter().map(|e| e.label.as_str()).collect()
    }

    #[test]
    fn fig3_has_tangent_circles() {
        let p = HalfPlanePair::from_coords(0.0, 2.0, -1.0, 1.0).unwrap();
        let e = figure("fig3", &p, None).unwrap().unwrap();
        for l in ["d", "p", "q", "m", "circle_p"] {
            assert!(labels(&e).contains(&l), "{l}");
        }
        let d = e.iter().find(|x| x.label == "d").unwrap();
        let c = e.iter().find(|x| x.label == "circle_p").unwrap();
        assert!((c.x1 - d.x1).abs() < 1e-12 && (c.y1 - c.x2.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn fig5_points_share_first_coordinate() {
        let p = HalfPlanePair::new(
            ComplexPoint::unit(0.4).unwrap(),
            ComplexPoint::unit(2.0).unwrap(),
        )
        .unwrap();
        let e = figure("fig5", &p, None).unwrap().unwrap();
        let u = e.iter().find(|x| x.label == "u").unwrap().x1;
        for l in ["s", "m", "v"] {
            let x = e.iter().find(|x| x.label == l).unwrap().x1;
            assert!((x - u).abs() < 1e-12, "{l}");
        }
    }

    #[test]
    fn unit_only_figures_and_unknown_names() {
        let p = HalfPlanePair::from_coords(0.0, 2.0, -1.0, 1.0).unwrap();
        assert!(figure("fig6", &p, None).unwrap().is_err());
        assert!(figure("fig9", &p, None).is_none());
        let q = HalfPlanePair::new(
            ComplexPoint::unit(0.4).unwrap(),
            ComplexPoint::unit(2.0).unwrap(),
        )
        .unwrap();
        let e = figure("fig7", &q, None).unwrap().unwrap();
        let (ya, yb) = (
            e.iter().find(|x| x.label == "ya").unwrap(),
            e.iter().find(|x| x.label == "yb").unwrap(),
        );
        assert!((ya.y1 - yb.y1).abs() < 1e-12);
        assert!(figure("fig4", &q, None).unwrap().is_ok());
    }
}
