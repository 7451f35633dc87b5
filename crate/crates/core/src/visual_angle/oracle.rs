//! Numerical maximization of `x ↦ ∠(a, x, b)` along the real axis.

use super::catalog::tangency_roots;
use super::require_distinct;
use crate::error::{out_of_range, Result};
use crate::geom::{angle_at, ComplexPoint};
use crate::hyperbolic::{geodesic, Geodesic, HalfPlanePair};

/// Smallest accepted grid size.
pub const MIN_ORACLE_GRID: usize = 1000;
const GOLDEN_TOL: f64 = 1e-12;
const WINDOW_RADII: f64 = 10.0;

fn angle_fn(p: &HalfPlanePair) -> impl Fn(f64) -> f64 {
    let (a, b) = (p.a(), p.b());
    move |x| angle_at(a, ComplexPoint::raw(x, 0.0), b)
}

/// Golden-section maximization on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f(lo).max(f(hi)).max(f1).max(f2);
    for _ in 0..200 {
        if hi - lo <= GOLDEN_TOL * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// Scans `xs`, then refines every discrete local maximum between its neighbours.
fn scan_and_refine(f: &impl Fn(f64) -> f64, xs: &[f64]) -> f64 {
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut best = ys.iter().copied().fold(0.0, f64::max);
    for k in 0..xs.len() {
        let left = if k > 0 { ys[k - 1] } else { f64::NEG_INFINITY };
        let right = if k + 1 < xs.len() {
            ys[k + 1]
        } else {
            f64::NEG_INFINITY
        };
        if ys[k] >= left && ys[k] >= right {
            let lo = xs[k.saturating_sub(1)];
            let hi = xs[(k + 1).min(xs.len() - 1)];
            best = best.max(golden_max(f, lo, hi));
        }
    }
    best
}

/// Uniform grid on `[lo, hi]`.
fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| lo + (hi - lo) * k as f64 / n as f64)
        .collect()
}

/// Grid covering the whole real axis via `x = x0 + L tan φ`, `φ ∈ (-π/2, π/2)`.
fn tangent_grid(x0: f64, scale: f64, n: usize) -> Vec<f64> {
    let half = std::f64::consts::FRAC_PI_2;
    (1..n)
        .map(|k| x0 + scale * (-half + std::f64::consts::PI * k as f64 / n as f64).tan())
        .collect()
}

fn grids(p: &HalfPlanePair, grid: usize) -> Result<Vec<Vec<f64>>> {
    let (a, b) = (p.a(), p.b());
    let height = a.im().max(b.im());
    let window = match geodesic(p)? {
        Geodesic::Semicircle(g) => {
            let (l, r) = (
                g.a_star.x().min(g.b_star.x()),
                g.a_star.x().max(g.b_star.x()),
            );
            let pad = WINDOW_RADII * g.euclid_radius;
            uniform_grid(l - pad, r + pad, grid)
        }
        Geodesic::Vertical { foot } => {
            let pad = WINDOW_RADII * height;
            uniform_grid(foot.x() - pad, foot.x() + pad, grid)
        }
    };
    Ok(vec![
        window,
        tangent_grid((a.re() + b.re()) / 2.0, height, grid),
    ])
}

/// Grid search plus golden-section refinement, seeded additionally at the two
/// tangency points `d` and `2c - d` when they exist.
pub fn visual_angle_oracle(p: &HalfPlanePair, grid: usize) -> Result<f64> {
    let mut best = visual_angle_scan(p, grid)?;
    let f = angle_fn(p);
    let seeds: Vec<f64> = if p.is_horizontal() {
        vec![(p.a().re() + p.b().re()) / 2.0]
    } else {
        let (d, e) = tangency_roots(p);
        vec![d, e]
    };
    let width = p.a().im().min(p.b().im()) * 1e-3;
    for x in seeds.into_iter().filter(|x| x.is_finite()) {
        best = best.max(golden_max(&f, x - width, x + width));
    }
    Ok(best)
}

/// Grid search plus golden-section refinement with no analytic seeds.
pub fn visual_angle_scan(p: &HalfPlanePair, grid: usize) -> Result<f64> {
    require_distinct(p)?;
    if grid < MIN_ORACLE_GRID {
        return out_of_range("grid", grid as f64);
    }
    let f = angle_fn(p);
    Ok(grids(p, grid)?
        .iter()
        .map(|xs| scan_and_refine(&f, xs))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::visual_angle::visual_angle;

    fn pair(ax: f64, ay: f64, bx: f64, by: f64) -> HalfPlanePair {
        HalfPlanePair::from_coords(ax, ay, bx, by).unwrap()
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let best = golden_max(&|x: f64| 1.0 - (x - 0.3).powi(2), -2.0, 5.0);
        assert!((best - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_at_quarter_pi_pair() {
        let p = pair(0.0, 2.0, -1.0, 1.0);
        let v = visual_angle_oracle(&p, 2000).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }

    #[test]
    fn scan_matches_vertical_case() {
        for t in [1.5, 3.0, 40.0] {
            let p = pair(0.0, 1.0, 0.0, t);
            let v = visual_angle_scan(&p, 2000).unwrap();
            assert!((v - ((t - 1.0) / (t + 1.0)).asin()).abs() < 1e-9);
        }
    }

    #[test]
    fn scan_matches_closed_form_on_assorted_pairs() {
        for (ax, ay, bx, by) in [
            (0.3, 0.7, -2.0, 0.1),
            (4.0, 4.5, -4.9, 0.06),
            (0.0, 1.0, 1e-9, 2.0),
            (1.0, 1.0, 1.0001, 1.0001),
        ] {
            let p = pair(ax, ay, bx, by);
            let closed = visual_angle(&p).unwrap().angle;
            let scan = visual_angle_scan(&p, 2000).unwrap();
            assert!((closed - scan).abs() < 1e-9, "{p:?}: {closed} vs {scan}");
            assert!(scan <= closed + 1e-12);
        }
    }

    #[test]
    fn rejects_small_grid() {
        assert!(visual_angle_scan(&pair(0.0, 1.0, 1.0, 1.0), 10).is_err());
    }
}
