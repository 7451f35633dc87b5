//! The visual angle metric `v(a, b) = sup { ∠(a, x, b) : x ∈ ℝ }` of the upper half-plane.
//!
//! [`visual_angle`] evaluates the closed form; [`visual_angle_oracle`] and
//! [`visual_angle_scan`] maximize the angle numerically along the real axis.

mod catalog;
mod oracle;

pub use catalog::{
    catalog_auto, catalog_general, catalog_rows, catalog_unit, definitions, CatalogField,
    CatalogRow, Definitions, PointCatalog,
};
pub use oracle::{visual_angle_oracle, visual_angle_scan, MIN_ORACLE_GRID};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{angle_at, ComplexPoint, RealPoint};
use crate::hyperbolic::{
    half_plane_mobius, half_rho_sinh, half_rho_tanh, similarity_to_unit, HalfPlanePair,
};

/// Maximum distance of a point from the unit circle accepted by unit-pair routines.
pub const UNIT_TOL: f64 = 1e-9;
/// Guard on `|1 + ab|` and `|a + b|` in the unit-circle formulas.
pub const UNIT_POLE_TOL: f64 = 1e-12;

/// Which evaluation path produced the angle.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    AcuteFormula,
    ObtuseFormula,
    VerticalCase,
    HorizontalCase,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::AcuteFormula => "acute_formula",
            Branch::ObtuseFormula => "obtuse_formula",
            Branch::VerticalCase => "vertical_case",
            Branch::HorizontalCase => "horizontal_case",
        }
    }
}

/// Angle value, the real-axis point attaining it, and the quantities `T = sin v` and `t = th(ρ/2)`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct VisualAngleResult {
    pub angle: f64,
    pub attaining_point: RealPoint,
    pub branch: Branch,
    #[serde(rename = "T")]
    pub big_t: f64,
    pub t: f64,
}

/// `sgn` with `sgn(0) = +1`.
pub(crate) fn sgn(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

pub(crate) fn require_distinct(p: &HalfPlanePair) -> Result<()> {
    if p.is_degenerate() {
        Err(Error::DegeneratePair)
    } else {
        Ok(())
    }
}

pub(crate) fn require_unit(p: &HalfPlanePair) -> Result<()> {
    let deviation = (p.a().abs() - 1.0).abs().max((p.b().abs() - 1.0).abs());
    if deviation > UNIT_TOL {
        Err(Error::UnitViolation { deviation })
    } else {
        Ok(())
    }
}

/// The real-axis point where the supremum is attained (the tangency point of the
/// smaller circle through `a` and `b` tangent to the real axis).
pub fn attaining_point(p: &HalfPlanePair) -> Result<RealPoint> {
    require_distinct(p)?;
    if p.is_horizontal() {
        return RealPoint::new((p.a().re() + p.b().re()) / 2.0);
    }
    RealPoint::new(catalog::tangency_roots(p).0)
}

/// Closed-form visual angle.
pub fn visual_angle(p: &HalfPlanePair) -> Result<VisualAngleResult> {
    require_distinct(p)?;
    let (a, b) = (p.a(), p.b());
    let t = half_rho_tanh(p);
    let d = attaining_point(p)?;
    if p.is_vertical() {
        return Ok(VisualAngleResult {
            angle: t.min(1.0).asin(),
            attaining_point: d,
            branch: Branch::VerticalCase,
            big_t: t,
            t,
        });
    }
    if p.is_horizontal() {
        let angle = angle_at(a, d.to_complex(), b);
        return Ok(VisualAngleResult {
            angle,
            attaining_point: d,
            branch: Branch::HorizontalCase,
            big_t: angle.sin(),
            t,
        });
    }
    // Similarity-invariant form of the unit-circle formula: with
    // s = √(1 - |u|²) of the normalized pair, sin v = (1+s) t √(1-t²) / √(1-(1-s²)t²)
    // and cos v has the sign of 1 - (1+s) t². Both are scaled by |a - b̄|² here.
    let g = p.geo_mean_height();
    let dist = a.dist(b);
    let s = 2.0 * (a.re() - b.re()).abs() * g / ((a + b).im() * dist);
    let y = 2.0 * (1.0 + s) * dist * g;
    let x = 4.0 * g * g - s * dist * dist;
    let angle = y.atan2(x);
    Ok(VisualAngleResult {
        angle,
        attaining_point: d,
        branch: if x < 0.0 {
            Branch::ObtuseFormula
        } else {
            Branch::AcuteFormula
        },
        big_t: (y / x.hypot(y)).min(1.0),
        t,
    })
}

/// The unit-circle formula evaluated literally: `u = (1+ab)/(a+b)`, `t = |a-b|/|ab-1|`,
/// `T = (1+√(1-|u|²)) t √(1-t²) / √(1-|u|²t²)`, and `π - arcsin T` when `1 < (1+√(1-|u|²)) t²`.
pub fn visual_angle_unit_formula(p: &HalfPlanePair) -> Result<VisualAngleResult> {
    require_unit(p)?;
    require_distinct(p)?;
    let (a, b) = (p.a(), p.b());
    let ab = a * b;
    if (1.0 + ab).abs() <= UNIT_POLE_TOL || (a + b).abs() <= UNIT_POLE_TOL {
        return visual_angle(p);
    }
    let u2 = ((1.0 + ab) / (a + b)).norm_sqr().min(1.0);
    let t = a.dist(b) / (ab - 1.0).abs();
    let s = (1.0 - u2).sqrt();
    let big_t =
        ((1.0 + s) * t * (1.0 - t * t).max(0.0).sqrt() / (1.0 - u2 * t * t).sqrt()).min(1.0);
    let obtuse = 1.0 < (1.0 + s) * t * t;
    let angle = if obtuse {
        std::f64::consts::PI - big_t.asin()
    } else {
        big_t.asin()
    };
    Ok(VisualAngleResult {
        angle,
        attaining_point: attaining_point(p)?,
        branch: if obtuse {
            Branch::ObtuseFormula
        } else {
            Branch::AcuteFormula
        },
        big_t,
        t,
    })
}

/// Normalizes the pair onto the unit circle first and then applies
/// [`visual_angle_unit_formula`]; vertical and horizontal pairs use their special cases.
pub fn visual_angle_normalized(p: &HalfPlanePair) -> Result<VisualAngleResult> {
    require_distinct(p)?;
    if p.is_vertical() || p.is_horizontal() {
        return visual_angle(p);
    }
    let n = similarity_to_unit(p)?;
    let mut r = visual_angle_unit_formula(&n.pair)?;
    r.attaining_point = attaining_point(p)?;
    Ok(r)
}

/// `(arctan(sh(ρ/2)), 2 arctan(sh(ρ/2)))`.
pub fn visual_angle_bounds(p: &HalfPlanePair) -> Result<(f64, f64)> {
    require_distinct(p)?;
    let sh = half_rho_sinh(p).atan();
    Ok((sh, 2.0 * sh))
}

/// `|a - b| / |ab - 1| · (|a + b|/2 + √(Im a · Im b))` for a unit-circle pair.
pub fn sin_identity_rhs(p: &HalfPlanePair) -> Result<f64> {
    require_unit(p)?;
    let (a, b) = (p.a(), p.b());
    let den = (a * b - 1.0).abs();
    if den <= UNIT_POLE_TOL {
        return Err(Error::PoleInput);
    }
    Ok(a.dist(b) / den * ((a + b).abs() / 2.0 + p.geo_mean_height()))
}

/// `v(h(a), h(b)) / v(a, b)` for `h(z) = (z - τ)/(1 - τz)` and a unit-circle pair.
pub fn vhquot_ratio(tau: f64, p: &HalfPlanePair) -> Result<f64> {
    require_unit(p)?;
    require_distinct(p)?;
    let image = HalfPlanePair::new(
        half_plane_mobius(tau, p.a())?,
        half_plane_mobius(tau, p.b())?,
    )?;
    Ok(visual_angle(&image)?.angle / visual_angle(p)?.angle)
}

/// `|arg((a² - 1)/(b² - 1))|`, the angle at `u` for a unit-circle pair.
pub fn unit_lower_bound(p: &HalfPlanePair) -> Result<f64> {
    require_unit(p)?;
    let (a, b) = (p.a(), p.b());
    Ok(((a * a - 1.0) / (b * b - 1.0)).arg().abs())
}

/// `|Im w| / |w|` with `w = (a - d)/(b - d)`.
pub fn sin_from_attaining_point(p: &HalfPlanePair) -> Result<f64> {
    let d: ComplexPoint = attaining_point(p)?.into();
    let w = (p.a() - d) / (p.b() - d);
    Ok(w.im().abs() / w.abs())
}
