//! Seeded generators for random point pairs used by the verification suites.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::ComplexPoint;
use crate::hyperbolic::HalfPlanePair;

/// Margin kept between sampled angles and `0`, `π`.
pub const ANGLE_MARGIN: f64 = 1e-3;
/// Minimal angular separation of a unit-circle pair.
pub const MIN_SEPARATION: f64 = 1e-6;
const X_RANGE: f64 = 5.0;
const Y_MIN: f64 = 0.05;
const Y_MAX: f64 = 5.0;
const TAU_MAX: f64 = 0.9;

/// Deterministic stream of sample pairs.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// `x ~ U(-5, 5)`, `y = exp(U(log 0.05, log 5))`.
    pub fn point(&mut self) -> ComplexPoint {
        let x = self.uniform(-X_RANGE, X_RANGE);
        let y = self.uniform(Y_MIN.ln(), Y_MAX.ln()).exp();
        ComplexPoint::raw(x, y)
    }

    /// Two independent points, resampled until distinct.
    pub fn pair(&mut self) -> HalfPlanePair {
        loop {
            let (a, b) = (self.point(), self.point());
            if a != b {
                return HalfPlanePair::new(a, b).expect("sampled points lie in the half-plane");
            }
        }
    }

    /// Angle in `(ε, π - ε)`.
    pub fn unit_angle(&mut self) -> f64 {
        self.uniform(ANGLE_MARGIN, PI - ANGLE_MARGIN)
    }

    /// Pair on the upper unit semicircle with `|arg a - arg b| ≥ 1e-6`.
    pub fn unit_pair(&mut self) -> HalfPlanePair {
        loop {
            let (s, t) = (self.unit_angle(), self.unit_angle());
            if (s - t).abs() >= MIN_SEPARATION {
                return unit_pair_from_angles(s, t);
            }
        }
    }

    /// Unit-circle triple `(a, b, c)` with `0 ≤ arg c < min(arg a, arg b)`.
    pub fn unit_triple(&mut self) -> (ComplexPoint, ComplexPoint, ComplexPoint) {
        let p = self.unit_pair();
        let lowest = p.a().arg().min(p.b().arg());
        let gamma = self.uniform(0.0, lowest);
        (p.a(), p.b(), ComplexPoint::raw(gamma.cos(), gamma.sin()))
    }

    /// Pair with equal real parts.
    pub fn vertical_pair(&mut self) -> HalfPlanePair {
        let a = self.point();
        loop {
            let y = self.uniform(Y_MIN.ln(), Y_MAX.ln()).exp();
            if y != a.im() {
                return HalfPlanePair::new(a, ComplexPoint::raw(a.re(), y))
                    .expect("positive heights");
            }
        }
    }

    /// Pair with equal imaginary parts.
    pub fn horizontal_pair(&mut self) -> HalfPlanePair {
        let a = self.point();
        loop {
            let x = self.uniform(-X_RANGE, X_RANGE);
            if x != a.re() {
                return HalfPlanePair::new(a, ComplexPoint::raw(x, a.im()))
                    .expect("positive heights");
            }
        }
    }

    /// Pair whose points differ by a relative perturbation of size about `10^-k`, `k ∈ [4, 9]`.
    pub fn near_degenerate_pair(&mut self) -> HalfPlanePair {
        let a = self.point();
        let scale = 10f64.powf(-self.uniform(4.0, 9.0)) * a.abs().max(a.im());
        let phi = self.uniform(-PI, PI);
        let b = ComplexPoint::raw(
            a.re() + scale * phi.cos(),
            (a.im() + scale * phi.sin()).abs(),
        );
        HalfPlanePair::new(a, b).expect("perturbation keeps the point in the half-plane")
    }

    /// Mixture of general, vertical, horizontal and near-degenerate pairs.
    pub fn mixed_pair(&mut self) -> HalfPlanePair {
        match self.rng.random_range(0..10u8) {
            0 => self.vertical_pair(),
            1 => self.horizontal_pair(),
            2 => self.near_degenerate_pair(),
            _ => self.pair(),
        }
    }

    /// `τ ~ U(-0.9, 0.9)`.
    pub fn tau(&mut self) -> f64 {
        self.uniform(-TAU_MAX, TAU_MAX)
    }
}

/// `(e^{is}, e^{it})`.
pub fn unit_pair_from_angles(s: f64, t: f64) -> HalfPlanePair {
    HalfPlanePair::new(
        ComplexPoint::raw(s.cos(), s.sin()),
        ComplexPoint::raw(t.cos(), t.sin()),
    )
    .expect("angles lie in (0, π)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let (mut s, mut t) = (Sampler::new(7), Sampler::new(7));
        for _ in 0..50 {
            assert_eq!(s.pair(), t.pair());
        }
        assert_ne!(Sampler::new(8).pair(), Sampler::new(7).pair());
    }

    #[test]
    fn samples_respect_ranges() {
        let mut s = Sampler::new(1);
        for _ in 0..1000 {
            let z = s.point();
            assert!(z.re().abs() < 5.0 && (0.05..5.0).contains(&z.im()));
            let p = s.unit_pair();
            assert!(p.is_unit(1e-15));
            assert!((p.a().arg() - p.b().arg()).abs() >= MIN_SEPARATION);
            let (a, b, c) = s.unit_triple();
            assert!(c.arg() < a.arg().min(b.arg()));
            assert!(s.vertical_pair().is_vertical());
            assert!(s.horizontal_pair().is_horizontal());
            assert!(!s.near_degenerate_pair().is_degenerate());
            assert!(s.tau().abs() < 0.9);
        }
    }
}
