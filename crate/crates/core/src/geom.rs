//! Complex-plane primitives: points, circles, line intersection, circumcenters,
//! the chordal metric, the absolute ratio and the elementary Möbius maps.
//!
//! Every operation is a total function returning a value or an [`Error`].
//! Tolerances are relative to the magnitude of the inputs.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Relative tolerance for quantities that pass through `arg`/`arcsin`.
pub const TRIG_TOL: f64 = 1e-10;
/// Threshold on the line-intersection denominator, relative to `scale²`.
pub const PARALLEL_TOL: f64 = 1e-14;
/// Two points closer than this (relative to scale) are treated as one.
pub const COINCIDENCE_TOL: f64 = 8.0 * f64::EPSILON;

/// A finite point of the complex plane.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ComplexPoint(Complex64);

impl ComplexPoint {
    pub const ZERO: Self = Self::raw(0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0);

    /// Validated constructor; rejects NaN and infinities.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self::raw(re, im))
        } else {
            Err(Error::NonFinite { re, im })
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    /// `e^{iθ}`.
    pub fn unit(theta: f64) -> Result<Self> {
        Self::from_polar(1.0, theta)
    }

    pub(crate) const fn raw(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    /// Re-validates a value produced by unchecked arithmetic.
    pub fn checked(self) -> Result<Self> {
        Self::new(self.re(), self.im())
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    pub fn abs(self) -> f64 {
        self.0.norm()
    }

    pub fn norm_sqr(self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn arg(self) -> f64 {
        self.0.arg()
    }

    /// Principal square root.
    pub fn sqrt(self) -> Self {
        Self(self.0.sqrt())
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn as_complex(self) -> Complex64 {
        self.0
    }

    /// Distance to another point.
    pub fn dist(self, other: Self) -> f64 {
        (self - other).abs()
    }
}

impl fmt::Debug for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re(), self.im())
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        if im.is_sign_negative() {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl TryFrom<Complex64> for ComplexPoint {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(z: ComplexPoint) -> Self {
        z.0
    }
}

impl From<RealPoint> for ComplexPoint {
    fn from(x: RealPoint) -> Self {
        Self::raw(x.0, 0.0)
    }
}

impl Serialize for ComplexPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.re(), self.im()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Self::new(re, im).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ComplexPoint {
            type Output = ComplexPoint;
            fn $method(self, rhs: ComplexPoint) -> ComplexPoint {
                ComplexPoint(self.0.$method(rhs.0))
            }
        }
        impl $trait<f64> for ComplexPoint {
            type Output = ComplexPoint;
            fn $method(self, rhs: f64) -> ComplexPoint {
                ComplexPoint(self.0.$method(rhs))
            }
        }
        impl $trait<ComplexPoint> for f64 {
            type Output = ComplexPoint;
            fn $method(self, rhs: ComplexPoint) -> ComplexPoint {
                ComplexPoint(Complex64::new(self, 0.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ComplexPoint {
    type Output = ComplexPoint;
    fn neg(self) -> ComplexPoint {
        ComplexPoint(-self.0)
    }
}

/// A finite point of the real axis (a boundary point of the upper half-plane).
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Default, Serialize)]
pub struct RealPoint(f64);

impl RealPoint {
    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() {
            Ok(Self(x))
        } else {
            Err(Error::NonFinite { re: x, im: 0.0 })
        }
    }

    pub fn x(self) -> f64 {
        self.0
    }

    pub fn to_complex(self) -> ComplexPoint {
        self.into()
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of the extended plane: finite, or the point at infinity.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ExtPoint {
    Finite(ComplexPoint),
    Infinity,
}

impl ExtPoint {
    pub fn finite(self) -> Option<ComplexPoint> {
        match self {
            ExtPoint::Finite(z) => Some(z),
            ExtPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }
}

impl From<ComplexPoint> for ExtPoint {
    fn from(z: ComplexPoint) -> Self {
        ExtPoint::Finite(z)
    }
}

impl From<RealPoint> for ExtPoint {
    fn from(x: RealPoint) -> Self {
        ExtPoint::Finite(x.into())
    }
}

/// Euclidean circle `S¹(center, radius)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Circle {
    center: ComplexPoint,
    radius: f64,
}

impl Circle {
    pub fn new(center: ComplexPoint, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() {
            Ok(Self { center, radius })
        } else {
            Err(Error::InvalidRadius(radius))
        }
    }

    pub fn unit() -> Self {
        Self {
            center: ComplexPoint::ZERO,
            radius: 1.0,
        }
    }

    pub fn center(&self) -> ComplexPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Largest modulus among `points`, floored at the smallest positive normal.
pub fn scale_of(points: &[ComplexPoint]) -> f64 {
    points
        .iter()
        .map(|z| z.abs())
        .fold(f64::MIN_POSITIVE, f64::max)
}

pub(crate) fn coincide(a: ComplexPoint, b: ComplexPoint, scale: f64) -> bool {
    a.dist(b) <= COINCIDENCE_TOL * scale
}

/// Intersection of the lines `L[a, b]` and `L[c, d]`.
pub fn lis(
    a: ComplexPoint,
    b: ComplexPoint,
    c: ComplexPoint,
    d: ComplexPoint,
) -> Result<ComplexPoint> {
    let scale = scale_of(&[a, b, c, d]);
    if coincide(a, b, scale) || coincide(c, d, scale) {
        return Err(Error::CoincidentPoints);
    }
    let den = (a.conj() - b.conj()) * (c - d) - (a - b) * (c.conj() - d.conj());
    if den.abs() <= PARALLEL_TOL * scale * scale {
        return Err(Error::ParallelLines);
    }
    let num = (a.conj() * b - a * b.conj()) * (c - d) - (a - b) * (c.conj() * d - c * d.conj());
    (num / den).checked()
}

/// Center of the circle through three distinct, non-collinear points.
pub fn circumcenter(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint) -> Result<ComplexPoint> {
    let scale = scale_of(&[a, b, c]);
    if coincide(a, b, scale) || coincide(b, c, scale) || coincide(a, c, scale) {
        return Err(Error::CoincidentPoints);
    }
    let den = a * (c.conj() - b.conj()) + b * (a.conj() - c.conj()) + c * (b.conj() - a.conj());
    if den.abs() <= PARALLEL_TOL * scale * scale {
        return Err(Error::CollinearPoints);
    }
    let num = a.norm_sqr() * (b - c) + b.norm_sqr() * (c - a) + c.norm_sqr() * (a - b);
    (num / den).checked()
}

/// Chordal distance on the Riemann sphere.
pub fn chordal(a: impl Into<ExtPoint>, b: impl Into<ExtPoint>) -> f64 {
    match (a.into(), b.into()) {
        (ExtPoint::Infinity, ExtPoint::Infinity) => 0.0,
        (ExtPoint::Finite(z), ExtPoint::Infinity) | (ExtPoint::Infinity, ExtPoint::Finite(z)) => {
            1.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (ExtPoint::Finite(a), ExtPoint::Finite(b)) => {
            a.dist(b) / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
        }
    }
}

fn ext_coincide(a: ExtPoint, b: ExtPoint) -> bool {
    match (a, b) {
        (ExtPoint::Infinity, ExtPoint::Infinity) => true,
        (ExtPoint::Finite(a), ExtPoint::Finite(b)) => coincide(a, b, scale_of(&[a, b])),
        _ => false,
    }
}

/// Absolute ratio `|a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d))`.
pub fn cross_ratio(
    a: impl Into<ExtPoint>,
    b: impl Into<ExtPoint>,
    c: impl Into<ExtPoint>,
    d: impl Into<ExtPoint>,
) -> Result<f64> {
    let pts = [a.into(), b.into(), c.into(), d.into()];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if ext_coincide(pts[i], pts[j]) {
                return Err(Error::DegenerateTuple);
            }
        }
    }
    let [a, b, c, d] = pts;
    // Euclidean form avoids the chordal normalisations when all points are finite.
    if let (Some(a), Some(b), Some(c), Some(d)) = (a.finite(), b.finite(), c.finite(), d.finite()) {
        return Ok(a.dist(c) * b.dist(d) / (a.dist(b) * c.dist(d)));
    }
    Ok(chordal(a, c) * chordal(b, d) / (chordal(a, b) * chordal(c, d)))
}

/// Inversion in a circle. The center maps to infinity and infinity to the center.
pub fn invert_in_circle(z: impl Into<ExtPoint>, circle: &Circle) -> ExtPoint {
    let q = circle.center;
    match z.into() {
        ExtPoint::Infinity => ExtPoint::Finite(q),
        ExtPoint::Finite(z) => {
            let w = z - q;
            if w.abs() <= COINCIDENCE_TOL * scale_of(&[z, q]) {
                return ExtPoint::Infinity;
            }
            match (q + circle.radius * circle.radius / w.conj()).checked() {
                Ok(p) => ExtPoint::Finite(p),
                Err(_) => ExtPoint::Infinity,
            }
        }
    }
}

/// Reflection of `z` in the line `L[a, b]`.
pub fn reflect_in_line(z: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> Result<ComplexPoint> {
    if coincide(a, b, scale_of(&[a, b])) {
        return Err(Error::CoincidentPoints);
    }
    let den = a.conj() - b.conj();
    ((a - b) / den * z.conj() - (a * b.conj() - a.conj() * b) / den).checked()
}

/// Möbius automorphism `T_a(z) = (z - a) / (1 - ā z)` of the unit disk.
pub fn disk_automorphism(a: ComplexPoint, z: ComplexPoint) -> Result<ComplexPoint> {
    if a.abs() >= 1.0 {
        return Err(Error::OutsideDisk);
    }
    let den = 1.0 - a.conj() * z;
    if den.abs() <= COINCIDENCE_TOL * (1.0 + z.abs()) {
        return Err(Error::PoleInput);
    }
    ((z - a) / den).checked()
}

/// The angle `∠(a, z, b) ∈ [0, π]` at vertex `z`.
pub fn angle_at(a: ComplexPoint, z: ComplexPoint, b: ComplexPoint) -> f64 {
    let p = a - z;
    let q = b - z;
    let cross = p.re() * q.im() - p.im() * q.re();
    let dot = p.re() * q.re() + p.im() * q.im();
    cross.abs().atan2(dot)
}
