//! Complete elliptic integral, the Grötzsch modulus `μ` and its inverse, the
//! capacity `γ₂`, the distortion functions `φ_K`, `η_K`, the constant `λ(K)` and
//! the Hölder-type bound for quasiregular maps.
//!
//! Functions of `r` near 1 lose accuracy through `1 - r²`; the `*_pair` variants
//! carry the complement `r' = √(1 - r²)` alongside `r`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{out_of_range, Result};

const AGM_TOL: f64 = 1e-16;
const INVERSE_TOL: f64 = 1e-16;
/// Largest double below 1; results of `mu_inv` never exceed it.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Arithmetic-geometric mean of two nonnegative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let next = (a + b) / 2.0;
        b = (a * b).sqrt();
        a = next;
    }
    (a + b) / 2.0
}

/// `√(1 - r²)` evaluated as `√((1 - r)(1 + r))`.
pub fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).max(0.0).sqrt()
}

/// `K(r) = ∫₀¹ dx / √((1 - x²)(1 - r²x²))`, via `K(r) = π / (2 AGM(1, r'))`.
pub fn elliptic_k(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return out_of_range("r", r);
    }
    Ok(FRAC_PI_2 / agm(1.0, complement(r)))
}

fn check_open_unit(what: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        out_of_range(what, r)
    }
}

/// `μ` from the pair `(r, r')`: `(π/2) AGM(1, r') / AGM(1, r)`.
pub fn mu_pair(r: f64, rp: f64) -> f64 {
    FRAC_PI_2 * agm(1.0, rp) / agm(1.0, r)
}

/// Grötzsch modulus `μ(r) = (π/2) K(r') / K(r)`.
pub fn mu(r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    Ok(mu_pair(r, complement(r)))
}

/// Solves `μ(e^x) = y` for `y ≥ π/2`, returning `x = log r`.
fn mu_inv_log(y: f64) -> Result<f64> {
    // μ(r) + log r decreases from log 4 to 0 on (0, 1), so log r ∈ (-y, log 4 - y).
    let mut lo = -y;
    let mut hi = (4f64.ln() - y).min(-0.5 * 2f64.ln());
    if lo < f64::MIN_POSITIVE.ln() {
        return out_of_range("y", y);
    }
    let g = |x: f64| {
        let r = x.exp();
        mu_pair(r, complement(r)) - y
    };
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let gx = g(x);
        if gx == 0.0 {
            return Ok(x);
        }
        // g is decreasing in x.
        if gx > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let h = 1e-6 * (1.0 + x.abs());
        let slope = (g(x + h) - g(x - h)) / (2.0 * h);
        let newton = x - gx / slope;
        let next = if slope < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= INVERSE_TOL * (1.0 + x.abs()) || hi - lo <= INVERSE_TOL * (1.0 + x.abs()) {
            break;
        }
    }
    Ok(x)
}

/// `μ⁻¹(y)` together with its complement.
pub fn mu_inv_pair(y: f64) -> Result<(f64, f64)> {
    if !(y > 0.0) || !y.is_finite() {
        return out_of_range("y", y);
    }
    if y >= FRAC_PI_2 {
        let r = mu_inv_log(y)?.exp();
        Ok((r, complement(r)))
    } else {
        // μ(r) μ(r') = π²/4 moves small moduli into the well-conditioned range.
        let rp = mu_inv_log(PI * PI / (4.0 * y))?.exp();
        Ok((complement(rp).min(BELOW_ONE), rp))
    }
}

/// Inverse of the Grötzsch modulus.
pub fn mu_inv(y: f64) -> Result<f64> {
    Ok(mu_inv_pair(y)?.0)
}

/// Grötzsch capacity `γ₂(s) = 2π / μ(1/s)`.
pub fn gamma2(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return out_of_range("s", s);
    }
    Ok(2.0 * PI / mu(1.0 / s)?)
}

/// `φ_K` on the pair `(r, r')`, returning `(φ_K(r), √(1 - φ_K(r)²))`.
pub fn phi_k_pair(k: f64, r: f64, rp: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) || !k.is_finite() {
        return out_of_range("K", k);
    }
    if !(0.0..=1.0).contains(&r) {
        return out_of_range("r", r);
    }
    if r == 0.0 {
        return Ok((0.0, 1.0));
    }
    if rp == 0.0 {
        return Ok((1.0, 0.0));
    }
    if k == 1.0 {
        return Ok((r, rp));
    }
    mu_inv_pair(mu_pair(r, rp) / k)
}

/// `φ_K(r) = μ⁻¹(μ(r)/K)`, an increasing homeomorphism of `[0, 1]`.
pub fn phi_k(k: f64, r: f64) -> Result<f64> {
    Ok(phi_k_pair(k, r, complement(r))?.0)
}

fn check_k(k: f64) -> Result<()> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        out_of_range("K", k)
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        out_of_range("t", t)
    }
}

/// `(r, r') = (1/√(1+t), √(t/(1+t)))`.
fn eta_arguments(t: f64) -> (f64, f64) {
    ((1.0 / (1.0 + t)).sqrt(), (t / (1.0 + t)).sqrt())
}

/// `η_K(t) = (φ_K(√(t/(1+t))) / φ_{1/K}(1/√(1+t)))²`.
pub fn eta_k(k: f64, t: f64) -> Result<f64> {
    check_k(k)?;
    check_t(t)?;
    if k == 1.0 {
        return Ok(t);
    }
    let (r, rp) = eta_arguments(t);
    let num = phi_k_pair(k, rp, r)?.0;
    let den = phi_k_pair(1.0 / k, r, rp)?.0;
    Ok((num / den).powi(2))
}

/// Both expressions of `η_K(t)`: `(1 - φ²)/φ²` with `φ = φ_{1/K}(1/√(1+t))`, and
/// the quotient of [`eta_k`].
pub fn eta_k_forms(k: f64, t: f64) -> Result<(f64, f64)> {
    check_k(k)?;
    check_t(t)?;
    let (r, rp) = eta_arguments(t);
    let (phi, phi_c) = phi_k_pair(1.0 / k, r, rp)?;
    Ok(((phi_c / phi).powi(2), eta_k(k, t)?))
}

/// `λ(K) = (φ_K(1/√2) / φ_{1/K}(1/√2))²`.
pub fn lambda_k(k: f64) -> Result<f64> {
    check_k(k)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Ok((phi_k(k, r)? / phi_k(1.0 / k, r)?).powi(2))
}

/// `λ(K)^{1/2} max(tan(v)^K, tan(v)^{1/K})` for `0 < v < π/2`.
pub fn holder_rhs(k: f64, v: f64) -> Result<f64> {
    check_k(k)?;
    if !(v > 0.0 && v < FRAC_PI_2) {
        return out_of_range("v", v);
    }
    holder_with_lambda(k, lambda_k(k)?, v)
}

fn holder_with_lambda(k: f64, lambda: f64, v: f64) -> Result<f64> {
    let x = v.tan();
    if k == 1.0 {
        return Ok(x);
    }
    Ok(lambda.sqrt() * x.powf(k).max(x.powf(1.0 / k)))
}

/// Both sides of `φ_K(r)/√(1 - φ_K(r)²) = √η_K(r²/(1-r²))` and the bound
/// `λ(K)^{1/2} max(x^{1/K}, x^K)` with `x = r/√(1-r²)`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct PhiBound {
    pub lhs: f64,
    pub eta_side: f64,
    pub bound: f64,
}

impl PhiBound {
    /// Relative difference of the two sides of the equality.
    pub fn equality_residual(&self) -> f64 {
        (self.lhs - self.eta_side).abs() / self.lhs.abs().max(f64::MIN_POSITIVE)
    }

    /// `bound - eta_side`; nonnegative when the inequality holds.
    pub fn slack(&self) -> f64 {
        self.bound - self.eta_side
    }
}

pub fn phi_bound_check(k: f64, r: f64) -> Result<PhiBound> {
    check_k(k)?;
    check_open_unit("r", r)?;
    let rp = complement(r);
    let (phi, phi_c) = phi_k_pair(k, r, rp)?;
    let x = r / rp;
    let eta_side = eta_k(k, x * x)?.sqrt();
    let bound = if k == 1.0 {
        x
    } else {
        lambda_k(k)?.sqrt() * x.powf(1.0 / k).max(x.powf(k))
    };
    Ok(PhiBound {
        lhs: phi / phi_c,
        eta_side,
        bound,
    })
}

/// A distortion constant `K ≥ 1` with its `λ(K)` precomputed.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct DistortionParams {
    k: f64,
    lambda: f64,
}

impl DistortionParams {
    pub fn new(k: f64) -> Result<Self> {
        Ok(Self {
            k,
            lambda: lambda_k(k)?,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self, r: f64) -> Result<f64> {
        phi_k(self.k, r)
    }

    pub fn eta(&self, t: f64) -> Result<f64> {
        eta_k(self.k, t)
    }

    pub fn holder_rhs(&self, v: f64) -> Result<f64> {
        if !(v > 0.0 && v < FRAC_PI_2) {
            return out_of_range("v", v);
        }
        holder_with_lambda(self.k, self.lambda, v)
    }
}
