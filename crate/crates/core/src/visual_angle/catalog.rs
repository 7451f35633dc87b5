//! Construction points attached to a pair `(a, b)`: geodesic endpoints, line
//! intersections with the real axis, tangency points, circle centers and the
//! hyperbolic midpoint. Closed forms live in [`PointCatalog`]; [`definitions`]
//! rebuilds the same points from line intersections and circumcenters.

use serde::Serialize;

use super::{require_distinct, require_unit, sgn, UNIT_POLE_TOL};
use crate::error::{Error, Result};
use crate::geom::{angle_at, circumcenter, lis, scale_of, ComplexPoint, RealPoint};
use crate::hyperbolic::{geodesic, hyp_midpoint, Geodesic, HalfPlanePair};

/// Named construction points.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogField {
    AStar,
    BStar,
    C,
    D,
    F,
    G,
    M,
    P,
    Q,
    U,
    U1,
    S,
    V,
}

impl CatalogField {
    pub const ALL: [CatalogField; 13] = [
        CatalogField::AStar,
        CatalogField::BStar,
        CatalogField::C,
        CatalogField::D,
        CatalogField::F,
        CatalogField::G,
        CatalogField::M,
        CatalogField::P,
        CatalogField::Q,
        CatalogField::U,
        CatalogField::U1,
        CatalogField::S,
        CatalogField::V,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogField::AStar => "a_star",
            CatalogField::BStar => "b_star",
            CatalogField::C => "c",
            CatalogField::D => "d",
            CatalogField::F => "f",
            CatalogField::G => "g",
            CatalogField::M => "m",
            CatalogField::P => "p",
            CatalogField::Q => "q",
            CatalogField::U => "u",
            CatalogField::U1 => "u1",
            CatalogField::S => "s",
            CatalogField::V => "v",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Closed-form construction points of a pair. `None` marks a point that does not
/// exist for the pair (for example `c` for a horizontal pair).
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct PointCatalog {
    pub u: ComplexPoint,
    pub u1: Option<RealPoint>,
    pub c: Option<RealPoint>,
    pub d: RealPoint,
    pub f: Option<RealPoint>,
    pub g: Option<ComplexPoint>,
    pub m: ComplexPoint,
    pub p: ComplexPoint,
    pub q: Option<ComplexPoint>,
    pub s: Option<ComplexPoint>,
    pub v: Option<ComplexPoint>,
    pub a_star: Option<RealPoint>,
    pub b_star: Option<RealPoint>,
}

impl PointCatalog {
    pub fn get(&self, field: CatalogField) -> Option<ComplexPoint> {
        let real = |x: Option<RealPoint>| x.map(RealPoint::to_complex);
        match field {
            CatalogField::AStar => real(self.a_star),
            CatalogField::BStar => real(self.b_star),
            CatalogField::C => real(self.c),
            CatalogField::D => Some(self.d.to_complex()),
            CatalogField::F => real(self.f),
            CatalogField::G => self.g,
            CatalogField::M => Some(self.m),
            CatalogField::P => Some(self.p),
            CatalogField::Q => self.q,
            CatalogField::U => Some(self.u),
            CatalogField::U1 => real(self.u1),
            CatalogField::S => self.s,
            CatalogField::V => self.v,
        }
    }
}

/// Points rebuilt from their geometric definitions.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Definitions {
    values: [Option<ComplexPoint>; 13],
    scales: [f64; 13],
}

impl Definitions {
    pub fn get(&self, field: CatalogField) -> Option<ComplexPoint> {
        self.values[field as usize]
    }

    /// Largest modulus among the inputs of the construction of `field`.
    pub fn scale(&self, field: CatalogField) -> f64 {
        self.scales[field as usize]
    }

    fn set(&mut self, field: CatalogField, value: Option<ComplexPoint>, inputs: &[ComplexPoint]) {
        self.values[field as usize] = value;
        self.scales[field as usize] = scale_of(inputs);
    }
}

/// One field with both evaluations side by side.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct CatalogRow {
    pub field: CatalogField,
    pub closed_form: Option<ComplexPoint>,
    pub definitional: Option<ComplexPoint>,
    pub residual: Option<f64>,
    pub scale: f64,
}

impl CatalogRow {
    /// Residual divided by the construction scale.
    pub fn relative_residual(&self) -> Option<f64> {
        self.residual.map(|r| r / self.scale)
    }
}

/// Real-axis tangency points `(d, f)` of the two circles through `a`, `b` tangent to ℝ.
/// `d` is the one with the larger angle. Requires `Im a ≠ Im b`.
pub(crate) fn tangency_roots(p: &HalfPlanePair) -> (f64, f64) {
    let (a, b) = (p.a(), p.b());
    let (x1, y1, x2, y2) = (a.re(), a.im(), b.re(), b.im());
    let dy = y1 - y2;
    let base = (a * b.conj()).im();
    let root = sgn(x1 - x2) * a.dist(b) * p.geo_mean_height();
    let (plus, minus) = (base + root, base - root);
    // plus · minus = dy · q; the cancelling numerator comes from the product.
    let q = (x2 - x1) * (x2 + x1) * y1 + dy * (x1 * x1 - y1 * y2);
    if plus.abs() >= minus.abs() {
        (plus / dy, q / plus)
    } else {
        (q / minus, minus / dy)
    }
}

/// Below this `|Im(a-b)| / |a-b|` tangent-circle centers are built as circumcenters.
const CENTER_SWITCH: f64 = 1e-3;

fn real(x: f64) -> Result<RealPoint> {
    RealPoint::new(x)
}

/// Center `x + i h` of the circle through `a` and `b` tangent to ℝ at `x`.
/// `h` is the mediant of `((Re z - x)² + (Im z)²) / (2 Im z)` over `z = a, b`,
/// which equals the bisector quotient `(|a|² - |b|² - 2 Re(a-b) x) / (2 Im(a-b))`
/// without its cancellation for nearly horizontal pairs.
fn center_above(p: &HalfPlanePair, x: f64) -> Result<ComplexPoint> {
    let (a, b) = (p.a(), p.b());
    let power = |z: ComplexPoint| (z.re() - x).powi(2) + z.im() * z.im();
    ComplexPoint::new(x, (power(a) + power(b)) / (2.0 * (a.im() + b.im())))
}

/// Catalog for a general pair.
pub fn catalog_general(p: &HalfPlanePair) -> Result<PointCatalog> {
    require_distinct(p)?;
    let (a, b) = (p.a(), p.b());
    let vertical = p.is_vertical();
    let horizontal = p.is_horizontal();

    let (a_star, b_star, u1) = match geodesic(p)? {
        Geodesic::Semicircle(g) => (Some(g.a_star), Some(g.b_star), Some(g.euclid_center)),
        Geodesic::Vertical { foot } if a.im() < b.im() => (Some(foot), None, None),
        Geodesic::Vertical { foot } => (None, Some(foot), None),
    };
    let u = ComplexPoint::real((a * b).im() / (a + b).im())?;
    let m = hyp_midpoint(p).checked()?;

    let (c, d, f, pp, q) = if horizontal {
        let d = (a.re() + b.re()) / 2.0;
        (None, real(d)?, None, center_above(p, d)?, None)
    } else {
        let c = (a * b.conj()).im() / (a.im() - b.im());
        let (d, f) = tangency_roots(p);
        (
            Some(real(c)?),
            real(d)?,
            Some(real(f)?),
            center_above(p, d)?,
            Some(center_above(p, f)?),
        )
    };

    let (s, v) = if vertical {
        (None, None)
    } else {
        let num = 2.0 * a * b - a.norm_sqr() - b.norm_sqr();
        let root = a.dist(b) * a.dist(b.conj());
        let den = ComplexPoint::raw(0.0, 2.0 * (a + b).im());
        (
            Some(((num + root) / den).checked()?),
            Some(((num - root) / den).checked()?),
        )
    };

    Ok(PointCatalog {
        u,
        u1,
        c,
        d,
        f,
        g: None,
        m,
        p: pp,
        q,
        s,
        v,
        a_star,
        b_star,
    })
}

/// Catalog for a pair on the unit circle, using the unit-circle specializations.
/// Falls back to [`catalog_general`] when `1 + ab` or `a + b` is numerically zero.
pub fn catalog_unit(p: &HalfPlanePair) -> Result<PointCatalog> {
    require_unit(p)?;
    require_distinct(p)?;
    let (a, b) = (p.a(), p.b());
    let ab = a * b;
    if (1.0 + ab).abs() <= UNIT_POLE_TOL || (a + b).abs() <= UNIT_POLE_TOL {
        return catalog_general(p);
    }
    let sigma = sgn(a.re() - b.re());
    let tau = sgn((a + b).re());
    let root = 2.0 * tau * (ab * p.geo_mean_height().powi(2)).sqrt();
    // On the unit circle the numerators of d and g multiply to (1 + ab)², so the
    // smaller one is taken as a quotient instead of a difference.
    let one_ab = 1.0 + ab;
    let (mut nd, mut ng) = (a + b - root, a + b + root);
    if nd.abs() < ng.abs() {
        nd = one_ab * one_ab / ng;
    } else {
        ng = one_ab * one_ab / nd;
    }
    let d = nd / one_ab;
    let g = ng / one_ab;
    let lift = 2.0 * ab / (ab + 1.0);
    let v = (2.0 * ab - sigma * (a - b)) / (a + b);
    let s = (2.0 * ab + sigma * (a - b)) / (a + b);
    Ok(PointCatalog {
        u: ((1.0 + ab) / (a + b)).checked()?,
        u1: Some(real(0.0)?),
        c: Some(real(((a + b) / (ab + 1.0)).re())?),
        d: real(d.re())?,
        f: Some(real(g.re())?),
        g: Some(g.checked()?),
        m: hyp_midpoint(p).checked()?,
        p: (lift * d).checked()?,
        q: Some((lift * g).checked()?),
        s: Some(s.checked()?),
        v: Some(v.checked()?),
        a_star: Some(real(sigma)?),
        b_star: Some(real(-sigma)?),
    })
}

/// Rebuilds every construction point from line intersections and circumcenters.
pub fn definitions(p: &HalfPlanePair) -> Result<Definitions> {
    require_distinct(p)?;
    let (a, b) = (p.a(), p.b());
    let (zero, one, i) = (ComplexPoint::ZERO, ComplexPoint::ONE, ComplexPoint::I);
    let mid = (a + b) / 2.0;
    let bisector = mid + i * (b - a);
    let mut out = Definitions::default();
    use CatalogField as F;

    // Geodesic circle C[a, ā, b]: its center is where the bisector of [a, b] meets ℝ.
    // Endpoints are ordered along the arc by real part.
    let circle = lis(mid, bisector, zero, one)
        .ok()
        .map(|w| ComplexPoint::raw(w.re(), 0.0));
    let ends = circle.map(|w| {
        let r = a.dist(w);
        let side = sgn(a.re() - b.re());
        (w, r, w + side * r, w - side * r)
    });
    let geo_inputs = [a, a.conj(), b];
    out.set(F::AStar, ends.map(|e| e.2), &geo_inputs);
    out.set(F::BStar, ends.map(|e| e.3), &geo_inputs);

    let c = lis(a, b, zero, one).ok();
    out.set(F::C, c, &[a, b, zero, one]);

    let d = match c {
        None => lis(mid, bisector, zero, one).ok(),
        Some(c) => {
            let r = (a.dist(c) * b.dist(c)).sqrt();
            let order = sgn(a.re() - b.re()) * sgn(a.im() - b.im());
            let first = c + order * r;
            let second = c - order * r;
            // Vertical pairs see both points under the same angle.
            if !p.is_vertical() && angle_at(a, second, b) > angle_at(a, first, b) {
                Some(second)
            } else {
                Some(first)
            }
        }
    };
    let with_c = |extra: &[ComplexPoint]| {
        let mut v = vec![a, b];
        v.extend(c);
        v.extend_from_slice(extra);
        v
    };
    out.set(F::D, d, &with_c(&[mid, bisector]));

    let f = match (c, d) {
        (Some(c), Some(d)) => Some(2.0 * c - d),
        _ => None,
    };
    out.set(F::F, f, &with_c(&[]));
    out.set(
        F::G,
        if p.is_unit(super::UNIT_TOL) { f } else { None },
        &with_c(&[]),
    );

    let u = lis(a, b.conj(), b, a.conj()).ok();
    out.set(F::U, u, &[a, b]);

    out.set(
        F::U1,
        lis(zero, one, mid, bisector).ok(),
        &[zero, one, mid, bisector],
    );

    let m = match (u, ends) {
        (Some(u), Some((w, _, _, _))) => {
            // r² - (u - w)² with r = |a - w|, expanded around Re a.
            let h2 = (a.re() - u.re()) * (a.re() + u.re() - 2.0 * w.re()) + a.im() * a.im();
            ComplexPoint::new(u.re(), h2.max(0.0).sqrt()).ok()
        }
        _ => None,
    };
    let mut m_inputs = vec![a, b];
    m_inputs.extend(u);
    m_inputs.extend(ends.map(|e| e.0));
    out.set(F::M, m, &m_inputs);

    // The bisector meets the vertical through x at a shallow angle when the pair is
    // nearly horizontal; the circle through a, b, x is then the better-conditioned route.
    let shallow = (a.im() - b.im()).abs() < CENTER_SWITCH * a.dist(b);
    let center = |x: Option<ComplexPoint>| -> Option<ComplexPoint> {
        let x = x?;
        if shallow {
            circumcenter(a, b, x).ok()
        } else {
            lis(mid, bisector, x, x + i).ok()
        }
    };
    let mut p_inputs = with_c(&[mid, bisector]);
    p_inputs.extend(d.map(|d| d + i));
    out.set(F::P, center(d), &p_inputs);
    let mut q_inputs = with_c(&[mid, bisector]);
    q_inputs.extend(f.map(|f| f + i));
    out.set(F::Q, center(f), &q_inputs);

    let (s, v) = match ends {
        Some((_, _, sa, sb)) => (lis(a, sb, b, sa).ok(), lis(a, sa, b, sb).ok()),
        None => (None, None),
    };
    let mut sv_inputs = vec![a, b];
    sv_inputs.extend(ends.iter().flat_map(|e| [e.0, e.2, e.3]));
    out.set(F::S, s, &sv_inputs);
    out.set(F::V, v, &sv_inputs);

    Ok(out)
}

/// Closed forms paired with definitional constructions for every field.
pub fn catalog_rows(catalog: &PointCatalog, defs: &Definitions) -> Vec<CatalogRow> {
    CatalogField::ALL
        .into_iter()
        .map(|field| {
            let closed_form = catalog.get(field);
            let definitional = defs.get(field);
            let residual = match (closed_form, definitional) {
                (Some(x), Some(y)) => Some(x.dist(y)),
                _ => None,
            };
            let mut scale = defs.scale(field);
            if let Some(x) = closed_form {
                scale = scale.max(x.abs());
            }
            CatalogRow {
                field,
                closed_form,
                definitional,
                residual,
                scale,
            }
        })
        .collect()
}

/// Chooses the unit-circle catalog when both points lie on the unit circle.
pub fn catalog_auto(p: &HalfPlanePair) -> Result<PointCatalog> {
    match catalog_unit(p) {
        Err(Error::UnitViolation { .. }) => catalog_general(p),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    fn pair(a: ComplexPoint, b: ComplexPoint) -> HalfPlanePair {
        HalfPlanePair::new(a, b).unwrap()
    }

    fn assert_rows_agree(p: &HalfPlanePair, cat: &PointCatalog) {
        let defs = definitions(p).unwrap();
        for row in catalog_rows(cat, &defs) {
            if let Some(r) = row.relative_residual() {
                assert!(r < 1e-10, "{:?} residual {r:e} for {p:?}", row.field);
            }
        }
    }

    #[test]
    fn quarter_pi_pair() {
        let p = pair(c(0.0, 2.0), c(-1.0, 1.0));
        let cat = catalog_general(&p).unwrap();
        assert!(cat.d.x().abs() < 1e-15);
        assert!(cat.p.dist(ComplexPoint::I) < 1e-15);
        assert!((cat.c.unwrap().x() + 2.0).abs() < 1e-15);
        assert!((cat.f.unwrap().x() + 4.0).abs() < 1e-15);
        assert_rows_agree(&p, &cat);
    }

    #[test]
    fn closed_p_values() {
        let (s5, s3) = (5f64.sqrt(), 3f64.sqrt());
        let p2 = catalog_general(&pair(c(0.0, 2.0), c(-3.0, 1.0))).unwrap().p;
        assert!(p2.dist(c(-6.0 + 2.0 * s5, 15.0 - 6.0 * s5)) < 1e-13);
        let p4 = catalog_general(&pair(c(0.0, 2.0), c(1.0, 3.0))).unwrap().p;
        assert!(p4.dist(c(-2.0 + 2.0 * s3, 5.0 - 2.0 * s3)) < 1e-13);
    }

    #[test]
    fn unit_symmetric_pair() {
        let p = pair(
            ComplexPoint::unit(3.0 * FRAC_PI_4).unwrap(),
            ComplexPoint::unit(FRAC_PI_4).unwrap(),
        );
        let cat = catalog_unit(&p).unwrap();
        assert!(cat.u.abs() < 1e-15);
        assert!(cat.d.x().abs() < 1e-15);
    }

    #[test]
    fn unit_catalog_matches_general() {
        let p = pair(
            ComplexPoint::unit(FRAC_PI_8).unwrap(),
            ComplexPoint::unit(3.0 * FRAC_PI_8).unwrap(),
        );
        let unit = catalog_unit(&p).unwrap();
        let general = catalog_general(&p).unwrap();
        for field in CatalogField::ALL {
            if let (Some(x), Some(y)) = (unit.get(field), general.get(field)) {
                assert!(x.dist(y) < 1e-10, "{field:?}: {x:?} vs {y:?}");
            }
        }
        assert!(unit.u1.unwrap().x() == 0.0);
        assert_rows_agree(&p, &unit);
    }

    #[test]
    fn vertical_catalog_is_partial() {
        let p = pair(c(0.0, 1.0), c(0.0, 2.0));
        let cat = catalog_general(&p).unwrap();
        assert_eq!(cat.a_star, Some(RealPoint::new(0.0).unwrap()));
        assert_eq!(cat.b_star, None);
        assert_eq!(cat.u1, None);
        assert!(cat.s.is_none() && cat.v.is_none());
        assert!((cat.d.x().abs() - 2f64.sqrt()).abs() < 1e-15);
        assert!(cat.m.dist(c(0.0, 2f64.sqrt())) < 1e-15);
        assert_rows_agree(&p, &cat);
    }

    #[test]
    fn horizontal_catalog_is_partial() {
        let p = pair(c(-1.0, 1.0), c(3.0, 1.0));
        let cat = catalog_general(&p).unwrap();
        assert!(cat.c.is_none() && cat.f.is_none() && cat.q.is_none());
        assert!((cat.d.x() - 1.0).abs() < 1e-15);
        assert!(cat.p.dist(c(1.0, 2.5)) < 1e-15);
        assert_rows_agree(&p, &cat);
    }

    #[test]
    fn assorted_pairs_agree_with_definitions() {
        let pairs = [
            (c(0.3, 0.7), c(-2.0, 0.1)),
            (c(4.0, 4.5), c(-4.9, 0.06)),
            (c(0.0, 1.0), c(1e-3, 1.0 + 1e-4)),
            (c(-1.0, 0.5), c(1.0, 0.5 + 1e-9)),
        ];
        for (a, b) in pairs {
            let p = pair(a, b);
            assert_rows_agree(&p, &catalog_general(&p).unwrap());
        }
    }

    #[test]
    fn field_names_round_trip() {
        for f in CatalogField::ALL {
            assert_eq!(CatalogField::from_name(f.name()), Some(f));
        }
    }
}
