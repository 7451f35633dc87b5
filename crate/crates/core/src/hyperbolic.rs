//! Hyperbolic distances in the unit disk and the upper half-plane, geodesics,
//! midpoints and the automorphisms used to normalize point pairs.

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::geom::{cross_ratio, scale_of, ComplexPoint, RealPoint, COINCIDENCE_TOL};

/// Relative threshold below which `|Re(a - b)|` marks a vertical geodesic.
pub const VERTICAL_TOL: f64 = 1e-14;

/// Two points of the upper half-plane `Im z > 0`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct HalfPlanePair {
    a: ComplexPoint,
    b: ComplexPoint,
}

impl HalfPlanePair {
    pub fn new(a: ComplexPoint, b: ComplexPoint) -> Result<Self> {
        for z in [a, b] {
            if !(z.im() > 0.0) {
                return Err(Error::NotInHalfPlane {
                    re: z.re(),
                    im: z.im(),
                });
            }
        }
        Ok(Self { a, b })
    }

    /// Convenience constructor from raw coordinates.
    pub fn from_coords(ax: f64, ay: f64, bx: f64, by: f64) -> Result<Self> {
        Self::new(ComplexPoint::new(ax, ay)?, ComplexPoint::new(bx, by)?)
    }

    pub fn a(&self) -> ComplexPoint {
        self.a
    }

    pub fn b(&self) -> ComplexPoint {
        self.b
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub fn scale(&self) -> f64 {
        scale_of(&[self.a, self.b])
    }

    pub fn is_degenerate(&self) -> bool {
        self.a.dist(self.b) <= COINCIDENCE_TOL * self.scale()
    }

    /// `Re a = Re b` up to [`VERTICAL_TOL`].
    pub fn is_vertical(&self) -> bool {
        (self.a.re() - self.b.re()).abs() <= VERTICAL_TOL * self.scale()
    }

    /// `Im a = Im b` up to [`VERTICAL_TOL`].
    pub fn is_horizontal(&self) -> bool {
        (self.a.im() - self.b.im()).abs() <= VERTICAL_TOL * self.scale()
    }

    /// Both points on the unit circle within `tol`.
    pub fn is_unit(&self, tol: f64) -> bool {
        (self.a.abs() - 1.0).abs() <= tol && (self.b.abs() - 1.0).abs() <= tol
    }

    /// `√(Im a · Im b)`.
    pub(crate) fn geo_mean_height(&self) -> f64 {
        (self.a.im() * self.b.im()).sqrt()
    }
}

/// Endpoints and Euclidean data of the semicircle through a pair.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct GeodesicData {
    pub a_star: RealPoint,
    pub b_star: RealPoint,
    pub euclid_center: RealPoint,
    pub euclid_radius: f64,
}

/// The hyperbolic line through a pair.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Geodesic {
    Semicircle(GeodesicData),
    /// Vertical ray from `foot` to infinity.
    Vertical {
        foot: RealPoint,
    },
}

/// `2 asinh(|a - b| / √((1 - |a|²)(1 - |b|²)))`.
pub fn rho_disk(a: ComplexPoint, b: ComplexPoint) -> Result<f64> {
    if a.abs() >= 1.0 || b.abs() >= 1.0 {
        return Err(Error::OutsideDisk);
    }
    if a == b {
        return Ok(0.0);
    }
    let ca = (1.0 - a.abs()) * (1.0 + a.abs());
    let cb = (1.0 - b.abs()) * (1.0 + b.abs());
    Ok(2.0 * (a.dist(b) / (ca * cb).sqrt()).asinh())
}

/// `th(ρ/2) = |a - b| / |a - b̄|`.
pub fn half_rho_tanh(p: &HalfPlanePair) -> f64 {
    let (a, b) = (p.a, p.b);
    if a == b {
        return 0.0;
    }
    a.dist(b) / a.dist(b.conj())
}

/// `sh(ρ/2) = |a - b| / (2 √(Im a · Im b))`.
pub fn half_rho_sinh(p: &HalfPlanePair) -> f64 {
    if p.a == p.b {
        return 0.0;
    }
    p.a.dist(p.b) / (2.0 * p.geo_mean_height())
}

/// Hyperbolic distance in the upper half-plane.
pub fn rho_half_plane(p: &HalfPlanePair) -> f64 {
    2.0 * half_rho_sinh(p).asinh()
}

/// Geodesic through the pair, with the vertical case tagged.
pub fn geodesic(p: &HalfPlanePair) -> Result<Geodesic> {
    if p.is_degenerate() {
        return Err(Error::DegeneratePair);
    }
    if p.is_vertical() {
        return Ok(Geodesic::Vertical {
            foot: RealPoint::new(p.a.re())?,
        });
    }
    Ok(Geodesic::Semicircle(semicircle(p)?))
}

fn semicircle(p: &HalfPlanePair) -> Result<GeodesicData> {
    let (a, b) = (p.a, p.b);
    let dre = a.re() - b.re();
    let diff = a.norm_sqr() - b.norm_sqr();
    let root = a.dist(b) * a.dist(b.conj());
    // Roots of Re(a-b) x² - (|a|²-|b|²) x + (Re b |a|² - Re a |b|²) = 0;
    // the smaller-magnitude numerator is recovered from the product of roots.
    let constant = b.re() * a.norm_sqr() - a.re() * b.norm_sqr();
    let (np, nm) = (diff + root, diff - root);
    let (a_star, b_star) = if np.abs() >= nm.abs() {
        (np / (2.0 * dre), 2.0 * constant / np)
    } else {
        (2.0 * constant / nm, nm / (2.0 * dre))
    };
    Ok(GeodesicData {
        a_star: RealPoint::new(a_star)?,
        b_star: RealPoint::new(b_star)?,
        euclid_center: RealPoint::new(diff / (2.0 * dre))?,
        euclid_radius: root / (2.0 * dre.abs()),
    })
}

/// Endpoints of the semicircular geodesic; vertical pairs are an error.
pub fn geodesic_endpoints(p: &HalfPlanePair) -> Result<GeodesicData> {
    match geodesic(p)? {
        Geodesic::Semicircle(g) => Ok(g),
        Geodesic::Vertical { .. } => Err(Error::VerticalGeodesic),
    }
}

/// `ρ = log |a★, a, b, b★|`, falling back to `|log(Im b / Im a)|` on vertical pairs.
pub fn rho_via_cross_ratio(p: &HalfPlanePair) -> Result<f64> {
    if p.a == p.b || p.is_degenerate() {
        return Ok(0.0);
    }
    match geodesic(p)? {
        Geodesic::Vertical { .. } => Ok((p.b.im() / p.a.im()).ln().abs()),
        Geodesic::Semicircle(g) => Ok(cross_ratio(g.a_star, p.a, p.b, g.b_star)?.ln()),
    }
}

/// Hyperbolic midpoint in the upper half-plane.
pub fn hyp_midpoint(p: &HalfPlanePair) -> ComplexPoint {
    let (a, b) = (p.a, p.b);
    if a == b {
        return a;
    }
    let h = (a + b).im();
    ComplexPoint::raw((a * b).im() / h, a.dist(b.conj()) * p.geo_mean_height() / h)
}

/// Disk midpoint of `0` and `r`: `r / (1 + √(1 - r²))`.
pub fn half_point(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return out_of_range("r", r);
    }
    Ok(r / (1.0 + ((1.0 - r) * (1.0 + r)).sqrt()))
}

/// Pair mapped onto the unit circle by `z ↦ scale·(z - shift)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct NormalizedPair {
    pub pair: HalfPlanePair,
    pub shift: f64,
    pub scale: f64,
}

impl NormalizedPair {
    pub fn apply(&self, z: ComplexPoint) -> ComplexPoint {
        (z - self.shift) * self.scale
    }
}

/// Similarity `z ↦ λ(z - u₁)` carrying the geodesic through the pair onto the unit circle.
pub fn similarity_to_unit(p: &HalfPlanePair) -> Result<NormalizedPair> {
    let g = geodesic_endpoints(p)?;
    let shift = g.euclid_center.x();
    let scale = 1.0 / (p.a - shift).abs();
    let map = |z: ComplexPoint| (z - shift) * scale;
    Ok(NormalizedPair {
        pair: HalfPlanePair::new(map(p.a).checked()?, map(p.b).checked()?)?,
        shift,
        scale,
    })
}

/// Automorphism `h(z) = (z - τ)/(1 - τz)` of the half-plane fixing the unit semicircle.
pub fn half_plane_mobius(tau: f64, z: ComplexPoint) -> Result<ComplexPoint> {
    if !(tau.abs() < 1.0) {
        return out_of_range("tau", tau);
    }
    let den = 1.0 - tau * z;
    if den.abs() <= COINCIDENCE_TOL * (1.0 + z.abs()) {
        return Err(Error::PoleInput);
    }
    ((z - tau) / den).checked()
}

/// Real-affine map `z ↦ (Im b / Im a) z + Im(a b̄) / Im a` sending `a` to `b`.
pub fn similarity_through_pair(p: &HalfPlanePair, z: ComplexPoint) -> Result<ComplexPoint> {
    let (a, b) = (p.a, p.b);
    if p.is_horizontal() {
        return Err(Error::EqualHeights);
    }
    (z * (b.im() / a.im()) + (a * b.conj()).im() / a.im()).checked()
}

/// Second intersections of `L[a, k]` and `L[b, k]` with the unit circle.
pub fn chord_partners(
    a: ComplexPoint,
    b: ComplexPoint,
    k: f64,
) -> Result<(ComplexPoint, ComplexPoint)> {
    if !(k.abs() < 1.0) {
        return out_of_range("k", k);
    }
    let partner = |z: ComplexPoint| -> Result<ComplexPoint> {
        let w = ComplexPoint::raw(k, 0.0) - z;
        if w.abs() <= COINCIDENCE_TOL {
            return Err(Error::CoincidentPoints);
        }
        let s = -2.0 * (z.conj() * w).re() / w.norm_sqr();
        (z + w * s).checked()
    };
    Ok((partner(a)?, partner(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, LN_2};

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    fn pair(a: ComplexPoint, b: ComplexPoint) -> HalfPlanePair {
        HalfPlanePair::new(a, b).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(matches!(
            HalfPlanePair::new(c(0.0, 1.0), c(1.0, 0.0)),
            Err(Error::NotInHalfPlane { .. })
        ));
    }

    #[test]
    fn rho_disk_examples() {
        let r = 0.37;
        let d = rho_disk(ComplexPoint::ZERO, c(r, 0.0)).unwrap();
        assert!((d - ((1.0 + r) / (1.0 - r)).ln()).abs() < 1e-15);
        assert!((rho_disk(ComplexPoint::ZERO, c(0.5, 0.0)).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert_eq!(rho_disk(c(0.2, 0.1), c(0.2, 0.1)).unwrap(), 0.0);
        assert_eq!(
            rho_disk(c(1.0, 0.0), ComplexPoint::ZERO),
            Err(Error::OutsideDisk)
        );
    }

    #[test]
    fn rho_half_plane_examples() {
        assert!((rho_half_plane(&pair(c(0.0, 1.0), c(0.0, 2.0))) - LN_2).abs() < 1e-15);
        assert_eq!(rho_half_plane(&pair(c(1.0, 1.0), c(1.0, 1.0))), 0.0);
        let t: f64 = 0.6;
        let h = (1.0 - t * t).sqrt();
        let d = rho_half_plane(&pair(c(t, h), c(-t, h)));
        assert!((d - 2.0 * t.atanh()).abs() < 1e-14);
    }

    #[test]
    fn tanh_and_sinh_forms_agree() {
        let p = pair(c(0.4, 0.3), c(-2.0, 1.7));
        let th = half_rho_tanh(&p);
        let sh = half_rho_sinh(&p);
        assert!((th - sh / (1.0 + sh * sh).sqrt()).abs() < 1e-15);
        assert!((rho_half_plane(&p) - 2.0 * th.atanh()).abs() < 1e-13);
    }

    #[test]
    fn endpoints_unit_pair() {
        let p = pair(
            ComplexPoint::unit(FRAC_PI_4).unwrap(),
            ComplexPoint::unit(3.0 * FRAC_PI_4).unwrap(),
        );
        let g = geodesic_endpoints(&p).unwrap();
        assert!((g.a_star.x() - 1.0).abs() < 1e-15);
        assert!((g.b_star.x() + 1.0).abs() < 1e-15);
        assert!(g.euclid_center.x().abs() < 1e-15);
        assert!((g.euclid_radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn endpoints_general_pair_and_order() {
        let p = pair(c(0.0, 2.0), c(-1.0, 1.0));
        let g = geodesic_endpoints(&p).unwrap();
        let s5 = 5f64.sqrt();
        assert!((g.a_star.x() - (1.0 + s5)).abs() < 1e-14);
        assert!((g.b_star.x() - (1.0 - s5)).abs() < 1e-14);
        // Arguments about the center increase along a★, a, b, b★ (or all decrease).
        let arg = |z: ComplexPoint| (z - g.euclid_center.x()).arg();
        let seq = [
            arg(g.a_star.to_complex()),
            arg(p.a()),
            arg(p.b()),
            arg(g.b_star.to_complex()),
        ];
        assert!(seq.windows(2).all(|w| w[0] < w[1]) || seq.windows(2).all(|w| w[0] > w[1]));
        for x in [g.a_star.x(), g.b_star.x()] {
            let (a, b) = (p.a(), p.b());
            let residual = (a.re() - b.re()) * x * x - (a.norm_sqr() - b.norm_sqr()) * x
                + (b.re() * a.norm_sqr() - a.re() * b.norm_sqr());
            assert!(residual.abs() < 1e-10 * 4.0);
        }
    }

    #[test]
    fn endpoints_vertical() {
        let p = pair(c(0.0, 1.0), c(0.0, 2.0));
        assert_eq!(
            geodesic(&p).unwrap(),
            Geodesic::Vertical {
                foot: RealPoint::new(0.0).unwrap()
            }
        );
        assert_eq!(geodesic_endpoints(&p), Err(Error::VerticalGeodesic));
    }

    #[test]
    fn rho_via_cross_ratio_examples() {
        let p = pair(c(0.0, 2.0), c(-1.0, 1.0));
        let (s10, s2) = (10f64.sqrt(), 2f64.sqrt());
        let expected = ((s10 + s2) / (s10 - s2)).ln();
        assert!((rho_via_cross_ratio(&p).unwrap() - expected).abs() < 1e-13);
        assert!((rho_half_plane(&p) - expected).abs() < 1e-13);
        let v = pair(c(3.0, 0.5), c(3.0, 4.0));
        assert!((rho_via_cross_ratio(&v).unwrap() - rho_half_plane(&v)).abs() < 1e-14);
        assert_eq!(
            rho_via_cross_ratio(&pair(c(0.0, 1.0), c(0.0, 1.0))).unwrap(),
            0.0
        );
    }

    #[test]
    fn midpoint_examples() {
        let m = hyp_midpoint(&pair(c(0.0, 1.0), c(0.0, 4.0)));
        assert!(m.dist(c(0.0, 2.0)) < 1e-15);
        let a = c(0.3, 0.9);
        assert_eq!(hyp_midpoint(&pair(a, a)), a);
        let p = pair(c(0.0, 2.0), c(-1.0, 1.0));
        let m = hyp_midpoint(&p);
        let da = rho_half_plane(&pair(p.a(), m));
        let db = rho_half_plane(&pair(p.b(), m));
        assert!((da - db).abs() < 1e-12);
        assert!((da - rho_half_plane(&p) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn half_point_examples() {
        assert_eq!(half_point(0.0).unwrap(), 0.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((half_point(s).unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((half_point(0.6).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(half_point(1.0).is_err());
        let r = 0.83;
        let d = half_point(r).unwrap();
        let full = rho_disk(ComplexPoint::ZERO, c(r, 0.0)).unwrap();
        assert!((2.0 * rho_disk(ComplexPoint::ZERO, c(d, 0.0)).unwrap() - full).abs() < 1e-12);
    }

    #[test]
    fn similarity_to_unit_examples() {
        let p = pair(c(0.0, 2.0), c(-1.0, 1.0));
        let n = similarity_to_unit(&p).unwrap();
        assert!((n.shift - 1.0).abs() < 1e-15);
        assert!((n.pair.a().abs() - 1.0).abs() < 1e-12);
        assert!((n.pair.b().abs() - 1.0).abs() < 1e-12);
        assert!((rho_half_plane(&n.pair) - rho_half_plane(&p)).abs() < 1e-12);

        let u = pair(
            ComplexPoint::unit(0.4).unwrap(),
            ComplexPoint::unit(2.0).unwrap(),
        );
        let n = similarity_to_unit(&u).unwrap();
        assert!(n.shift.abs() < 1e-15);
        assert!((n.scale - 1.0).abs() < 1e-15);

        assert_eq!(
            similarity_to_unit(&pair(c(0.0, 1.0), c(0.0, 2.0))),
            Err(Error::VerticalGeodesic)
        );
    }

    #[test]
    fn mobius_examples() {
        let z = c(0.3, 0.8);
        assert_eq!(half_plane_mobius(0.0, z).unwrap(), z);
        assert!(half_plane_mobius(0.4, c(0.4, 0.0)).unwrap().abs() < 1e-16);
        assert_eq!(half_plane_mobius(0.5, c(2.0, 0.0)), Err(Error::PoleInput));
        assert!(half_plane_mobius(1.0, z).is_err());
        let w = half_plane_mobius(-0.7, ComplexPoint::unit(1.1).unwrap()).unwrap();
        assert!((w.abs() - 1.0).abs() < 1e-15 && w.im() > 0.0);
    }

    #[test]
    fn similarity_through_pair_examples() {
        let p = pair(c(0.5, 0.7), c(-2.0, 3.0));
        assert!(similarity_through_pair(&p, p.a()).unwrap().dist(p.b()) < 1e-14);
        let v = pair(c(0.0, 1.0), c(0.0, 2.0));
        assert!(
            similarity_through_pair(&v, ComplexPoint::ZERO)
                .unwrap()
                .abs()
                < 1e-16
        );
        let h = pair(c(0.0, 1.0), c(3.0, 1.0));
        assert_eq!(
            similarity_through_pair(&h, ComplexPoint::ZERO),
            Err(Error::EqualHeights)
        );
    }

    #[test]
    fn chord_partners_preserve_distance() {
        let a = ComplexPoint::unit(0.5).unwrap();
        let b = ComplexPoint::unit(2.3).unwrap();
        let (ya, yb) = chord_partners(a, b, -0.35).unwrap();
        assert!((ya.abs() - 1.0).abs() < 1e-14 && ya.im() < 0.0);
        assert!((yb.abs() - 1.0).abs() < 1e-14 && yb.im() < 0.0);
        let lhs = rho_half_plane(&pair(a, b));
        let rhs = rho_half_plane(&pair(ya.conj(), yb.conj()));
        assert!((lhs - rhs).abs() < 1e-10);
    }
}
