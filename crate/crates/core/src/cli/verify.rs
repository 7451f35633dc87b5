//! Seeded verification suites.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use serde::Serialize;

use crate::distortion::{
    complement, elliptic_k, eta_k_forms, lambda_k, mu, mu_inv, phi_bound_check, phi_k, phi_k_pair,
};
use crate::error::Result;
use crate::geom::{angle_at, ComplexPoint};
use crate::hyperbolic::{
    half_plane_mobius, hyp_midpoint, rho_disk, rho_half_plane, rho_via_cross_ratio, HalfPlanePair,
};
use crate::sampling::Sampler;
use crate::visual_angle::{
    catalog_general, catalog_rows, catalog_unit, definitions, sin_from_attaining_point,
    sin_identity_rhs, unit_lower_bound, vhquot_ratio, visual_angle, visual_angle_bounds,
    visual_angle_normalized, visual_angle_oracle, Branch, CatalogField,
};

/// Suite names accepted by `verify`.
pub const SUITES: [&str; 7] = [
    "metrics",
    "catalog",
    "collinearity",
    "bounds",
    "oracle",
    "distortion",
    "holder",
];

/// Grid used by the oracle suite.
pub const ORACLE_GRID: usize = 2000;
const MIN_OBTUSE_FRACTION: f64 = 0.05;
const MU_RANGE: f64 = 40.0;

/// How a check's maximal residual is compared with its tolerance.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `max ≤ tol`
    AtMost,
    /// `max < tol`
    Below,
}

/// Default tolerance of every check, keyed by `suite.check`.
pub fn default_tolerances() -> BTreeMap<&'static str, (f64, Comparison)> {
    use Comparison::*;
    BTreeMap::from([
        ("metrics.rho_cross_ratio", (1e-9, AtMost)),
        ("metrics.rho_disk", (1e-9, AtMost)),
        ("metrics.midpoint", (1e-9, AtMost)),
        ("catalog.general", (1e-10, AtMost)),
        ("catalog.unit", (1e-10, AtMost)),
        ("catalog.unit_vs_general", (1e-10, AtMost)),
        ("collinearity.usmv", (1e-12, AtMost)),
        ("collinearity.right_angle", (1e-10, AtMost)),
        ("collinearity.distances", (1e-10, AtMost)),
        ("bounds.general", (1e-12, AtMost)),
        ("bounds.vertical_equality", (1e-9, AtMost)),
        ("bounds.horizontal_equality", (1e-9, AtMost)),
        ("bounds.sin_identity", (1e-10, AtMost)),
        ("bounds.attaining_point", (1e-10, AtMost)),
        ("bounds.unit_lower", (1e-12, AtMost)),
        ("oracle.oracle", (1e-6, Below)),
        ("oracle.obtuse_fraction", (0.0, AtMost)),
        ("oracle.normalized", (1e-9, AtMost)),
        ("distortion.mu_symmetric", (1e-13, AtMost)),
        ("distortion.mu_round_trip", (1e-11, Below)),
        ("distortion.phi_inverse", (1e-10, Below)),
        ("distortion.eta_forms", (1e-11, AtMost)),
        ("distortion.lambda_one", (0.0, AtMost)),
        ("distortion.lambda_bound", (0.0, Below)),
        ("distortion.phi_bound_equality", (1e-10, Below)),
        ("distortion.phi_bound_slack", (1e-12, AtMost)),
        ("distortion.monotonicity", (0.0, AtMost)),
        ("holder.k1", (1e-12, AtMost)),
        ("holder.rhs_k1", (0.0, AtMost)),
        ("holder.vhquot", (0.0, Below)),
        ("holder.sum_product", (0.0, Below)),
    ])
}

/// Outcome of one check.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub worst_case: String,
    pub pass: bool,
}

/// Outcome of a suite.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

/// Parameters of a verify run.
#[derive(Clone, PartialEq, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerances: BTreeMap<String, f64>,
}

struct Tracker {
    name: String,
    tol: f64,
    comparison: Comparison,
    cases: usize,
    max: f64,
    worst: String,
}

impl Tracker {
    fn record(&mut self, residual: f64, input: impl FnOnce() -> String) {
        self.cases += 1;
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        if self.cases == 1 || residual > self.max {
            self.max = residual;
            self.worst = input();
        }
    }

    /// Records an evaluation that may fail; failures count as infinite residuals.
    fn record_result(&mut self, residual: Result<f64>, input: impl Fn() -> String) {
        match residual {
            Ok(r) => self.record(r, input),
            Err(e) => self.record(f64::INFINITY, || format!("{} ({e})", input())),
        }
    }

    fn finish(self) -> CheckReport {
        let pass = match self.comparison {
            Comparison::AtMost => self.max <= self.tol,
            Comparison::Below => self.max < self.tol,
        };
        CheckReport {
            name: self.name,
            cases: self.cases,
            max_residual: self.max,
            tolerance: self.tol,
            comparison: self.comparison,
            worst_case: self.worst,
            pass: pass && self.cases > 0,
        }
    }
}

struct Suite<'a> {
    name: &'static str,
    config: &'a VerifyConfig,
    checks: Vec<CheckReport>,
}

impl<'a> Suite<'a> {
    fn tracker(&self, check: &str) -> Tracker {
        let key = format!("{}.{check}", self.name);
        let (default, comparison) = default_tolerances()[key.as_str()];
        Tracker {
            tol: self.config.tolerances.get(&key).copied().unwrap_or(default),
            name: check.to_string(),
            comparison,
            cases: 0,
            max: 0.0,
            worst: String::new(),
        }
    }

    fn push(&mut self, t: Tracker) {
        self.checks.push(t.finish());
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.name.to_string(),
            pass: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
        }
    }
}

fn describe(p: &HalfPlanePair) -> String {
    format!("a={} b={}", p.a(), p.b())
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn rho(a: ComplexPoint, b: ComplexPoint) -> Result<f64> {
    Ok(rho_half_plane(&HalfPlanePair::new(a, b)?))
}

fn cayley(z: ComplexPoint) -> ComplexPoint {
    (z - ComplexPoint::I) / (z + ComplexPoint::I)
}

/// Runs the named suite, or every suite for `all`. Returns `None` for an unknown name.
pub fn run(suite: &str, config: &VerifyConfig) -> Option<Vec<SuiteReport>> {
    if suite == "all" {
        return Some(
            SUITES
                .iter()
                .map(|s| run_one(s, config).expect("known suite"))
                .collect(),
        );
    }
    run_one(suite, config).map(|r| vec![r])
}

fn run_one(name: &str, config: &VerifyConfig) -> Option<SuiteReport> {
    let name = *SUITES.iter().find(|s| **s == name)?;
    let mut suite = Suite {
        name,
        config,
        checks: Vec::new(),
    };
    let mut rng = Sampler::new(config.seed);
    let n = config.samples;
    match name {
        "metrics" => metrics(&mut suite, &mut rng, n),
        "catalog" => catalog(&mut suite, &mut rng, n),
        "collinearity" => collinearity(&mut suite, &mut rng, n),
        "bounds" => bounds(&mut suite, &mut rng, n),
        "oracle" => oracle(&mut suite, &mut rng, n),
        "distortion" => distortion(&mut suite, &mut rng, n),
        "holder" => holder(&mut suite, &mut rng, n),
        _ => unreachable!(),
    }
    Some(suite.finish())
}

fn metrics(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let (mut cross, mut disk, mut mid) = (
        suite.tracker("rho_cross_ratio"),
        suite.tracker("rho_disk"),
        suite.tracker("midpoint"),
    );
    for _ in 0..n {
        let p = rng.mixed_pair();
        let r = rho_half_plane(&p);
        cross.record_result(rho_via_cross_ratio(&p).map(|x| rel(x, r)), || describe(&p));
        disk.record_result(
            rho_disk(cayley(p.a()), cayley(p.b())).map(|x| rel(x, r)),
            || describe(&p),
        );
        let m = hyp_midpoint(&p);
        let halves = rho(p.a(), m).and_then(|x| Ok((x, rho(m, p.b())?)));
        mid.record_result(
            halves.map(|(x, y)| rel(x, r / 2.0).max(rel(y, r / 2.0))),
            || describe(&p),
        );
    }
    suite.push(cross);
    suite.push(disk);
    suite.push(mid);
}

fn max_relative_row_residual(p: &HalfPlanePair, unit: bool) -> Result<f64> {
    let catalog = if unit {
        catalog_unit(p)?
    } else {
        catalog_general(p)?
    };
    let defs = definitions(p)?;
    Ok(catalog_rows(&catalog, &defs)
        .iter()
        .filter_map(|r| r.relative_residual())
        .fold(0.0, f64::max))
}

fn unit_vs_general(p: &HalfPlanePair) -> Result<f64> {
    let (u, g) = (catalog_unit(p)?, catalog_general(p)?);
    Ok(CatalogField::ALL
        .into_iter()
        .filter(|f| *f != CatalogField::G)
        .filter_map(|f| Some((u.get(f)?, g.get(f)?)))
        .map(|(x, y)| x.dist(y) / x.abs().max(y.abs()).max(1.0))
        .fold(0.0, f64::max))
}

fn catalog(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let mut general = suite.tracker("general");
    for k in 0..n {
        let p = match k % 10 {
            0 => rng.vertical_pair(),
            1 => rng.horizontal_pair(),
            _ => rng.pair(),
        };
        general.record_result(max_relative_row_residual(&p, false), || describe(&p));
    }
    let (mut unit, mut cross) = (suite.tracker("unit"), suite.tracker("unit_vs_general"));
    for _ in 0..n {
        let p = rng.unit_pair();
        unit.record_result(max_relative_row_residual(&p, true), || describe(&p));
        cross.record_result(unit_vs_general(&p), || describe(&p));
    }
    suite.push(general);
    suite.push(unit);
    suite.push(cross);
}

/// `(max |Re x - Re u| over s, m, v, |∠(0, m, c) - π/2|, distance mismatch)`.
pub fn collinearity_residuals(p: &HalfPlanePair) -> Result<(f64, Option<f64>, f64)> {
    let cat = catalog_unit(p)?;
    let (s, v) = (
        cat.s.expect("unit pairs have s"),
        cat.v.expect("unit pairs have v"),
    );
    let line = [s, cat.m, v]
        .iter()
        .map(|z| (z.re() - cat.u.re()).abs())
        .fold(0.0, f64::max);
    let right = cat
        .c
        .map(|c| (angle_at(ComplexPoint::ZERO, cat.m, c.to_complex()) - FRAC_PI_2).abs());
    let (a, b) = (p.a(), p.b());
    let d1 = rel(rho(a, s)?, rho(b, v)?);
    let d2 = rel(rho(b, s)?, rho(a, v)?);
    Ok((line, right, d1.max(d2)))
}

fn collinearity(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let (mut line, mut right, mut dist) = (
        suite.tracker("usmv"),
        suite.tracker("right_angle"),
        suite.tracker("distances"),
    );
    for _ in 0..n {
        let p = rng.unit_pair();
        match collinearity_residuals(&p) {
            Ok((l, r, d)) => {
                line.record(l, || describe(&p));
                if let Some(r) = r {
                    right.record(r, || describe(&p));
                }
                dist.record(d, || describe(&p));
            }
            Err(e) => {
                for t in [&mut line, &mut right, &mut dist] {
                    t.record(f64::INFINITY, || format!("{} ({e})", describe(&p)));
                }
            }
        }
    }
    suite.push(line);
    suite.push(right);
    suite.push(dist);
}

/// Amount by which `v` leaves `[lower, upper]`.
pub fn bounds_violation(p: &HalfPlanePair) -> Result<f64> {
    let v = visual_angle(p)?.angle;
    let (lo, hi) = visual_angle_bounds(p)?;
    Ok((lo - v).max(v - hi).max(0.0))
}

fn bounds(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let (mut general, mut attain) = (suite.tracker("general"), suite.tracker("attaining_point"));
    for _ in 0..n {
        let p = rng.mixed_pair();
        general.record_result(bounds_violation(&p), || describe(&p));
        let sin = visual_angle(&p).map(|r| r.angle.sin());
        attain.record_result(
            sin.and_then(|s| Ok((s - sin_from_attaining_point(&p)?).abs())),
            || describe(&p),
        );
    }
    let (mut vert, mut horiz) = (
        suite.tracker("vertical_equality"),
        suite.tracker("horizontal_equality"),
    );
    for _ in 0..n {
        let p = rng.vertical_pair();
        let r = visual_angle(&p).and_then(|v| Ok((v.angle - visual_angle_bounds(&p)?.0).abs()));
        vert.record_result(r, || describe(&p));
        let p = rng.horizontal_pair();
        let r = visual_angle(&p).and_then(|v| Ok((v.angle - visual_angle_bounds(&p)?.1).abs()));
        horiz.record_result(r, || describe(&p));
    }
    let (mut ident, mut lower) = (suite.tracker("sin_identity"), suite.tracker("unit_lower"));
    for _ in 0..n {
        let p = rng.unit_pair();
        let r = visual_angle(&p).and_then(|v| {
            let s = v.angle.sin();
            Ok((s - v.big_t).abs().max((s - sin_identity_rhs(&p)?).abs()))
        });
        ident.record_result(r, || describe(&p));
        let r = visual_angle(&p).and_then(|v| Ok((unit_lower_bound(&p)? - v.angle).max(0.0)));
        lower.record_result(r, || describe(&p));
    }
    for t in [general, attain, vert, horiz, ident, lower] {
        suite.push(t);
    }
}

fn oracle(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let (mut diff, mut norm) = (suite.tracker("oracle"), suite.tracker("normalized"));
    let mut obtuse = 0usize;
    for _ in 0..n {
        let p = rng.pair();
        match visual_angle(&p) {
            Ok(r) => {
                obtuse += usize::from(r.branch == Branch::ObtuseFormula);
                diff.record_result(
                    visual_angle_oracle(&p, ORACLE_GRID).map(|o| (o - r.angle).abs()),
                    || describe(&p),
                );
                norm.record_result(
                    visual_angle_normalized(&p).map(|x| rel(x.angle, r.angle)),
                    || describe(&p),
                );
            }
            Err(e) => diff.record(f64::INFINITY, || format!("{} ({e})", describe(&p))),
        }
    }
    let mut frac = suite.tracker("obtuse_fraction");
    let fraction = obtuse as f64 / n.max(1) as f64;
    frac.record((MIN_OBTUSE_FRACTION - fraction).max(0.0), || {
        format!("obtuse fraction {fraction} of {n} pairs")
    });
    suite.push(diff);
    suite.push(frac);
    suite.push(norm);
}

/// Points `y` covering `(0, 40]`: a geometric grid from `1e-3` upward and uniform samples.
pub fn mu_round_trip_points(rng: &mut Sampler, n: usize) -> Vec<f64> {
    let grid = n.max(2);
    let lo: f64 = 1e-3;
    let mut ys: Vec<f64> = (0..grid)
        .map(|k| lo * (MU_RANGE / lo).powf(k as f64 / (grid - 1) as f64))
        .collect();
    ys.extend((0..n).map(|_| MU_RANGE - rng.uniform(0.0, MU_RANGE)));
    ys
}

/// `|μ(μ⁻¹(y)) - y| / y`.
pub fn mu_round_trip(y: f64) -> Result<f64> {
    Ok((mu(mu_inv(y)?)? - y).abs() / y)
}

fn distortion(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let mut sym = suite.tracker("mu_symmetric");
    sym.record_result(mu(FRAC_1_SQRT_2).map(|m| (m - FRAC_PI_2).abs()), || {
        "r=1/√2".into()
    });
    suite.push(sym);

    let mut trip = suite.tracker("mu_round_trip");
    for y in mu_round_trip_points(rng, n) {
        trip.record_result(mu_round_trip(y), || format!("y={y}"));
    }
    suite.push(trip);

    let ks = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0];
    let side = ((n as f64).sqrt().ceil() as usize).max(2);
    let rs: Vec<f64> = (1..=side).map(|j| j as f64 / (side + 1) as f64).collect();

    let mut inv = suite.tracker("phi_inverse");
    for &k in &ks {
        for &r in &rs {
            let back = phi_k_pair(1.0 / k, r, complement(r))
                .and_then(|(x, xc)| phi_k_pair(k, x, xc))
                .map(|(x, _)| x);
            inv.record_result(back.map(|x| (x - r).abs()), || format!("K={k} r={r}"));
        }
    }
    suite.push(inv);

    let mut forms = suite.tracker("eta_forms");
    for &k in ks.iter().filter(|k| **k >= 1.0) {
        for &r in &rs {
            let t = (r / (1.0 - r)).powi(2);
            let res = eta_k_forms(k, t).map(|(x, y)| (x - y).abs() / y);
            forms.record_result(res, || format!("K={k} t={t}"));
        }
    }
    suite.push(forms);

    let mut one = suite.tracker("lambda_one");
    one.record_result(lambda_k(1.0).map(|l| (l - 1.0).abs()), || "K=1".into());
    suite.push(one);

    let mut bound = suite.tracker("lambda_bound");
    for j in 1..=side {
        let k = 1.0 + 3.0 * j as f64 / side as f64;
        let res = lambda_k(k).map(|l| l - (PI * (k - 1.0 / k)).exp());
        bound.record_result(res, || format!("K={k}"));
    }
    suite.push(bound);

    let (mut eq, mut slack) = (
        suite.tracker("phi_bound_equality"),
        suite.tracker("phi_bound_slack"),
    );
    for &k in &[1.0, 1.5, 2.0, 2.5, 3.0, 4.0] {
        for j in 0..side {
            let r = 0.01 + 0.98 * j as f64 / (side - 1) as f64;
            match phi_bound_check(k, r) {
                Ok(l) => {
                    eq.record(l.equality_residual(), || format!("K={k} r={r}"));
                    slack.record((-l.slack()).max(0.0), || format!("K={k} r={r}"));
                }
                Err(e) => {
                    eq.record(f64::INFINITY, || format!("K={k} r={r} ({e})"));
                    slack.record(f64::INFINITY, || format!("K={k} r={r} ({e})"));
                }
            }
        }
    }
    suite.push(eq);
    suite.push(slack);

    let mut mono = suite.tracker("monotonicity");
    let (violations, worst) = monotonicity_violations(1000);
    mono.record(violations as f64, || worst);
    suite.push(mono);
}

/// Counts strict monotonicity violations of `K`, `μ`, `φ_2` and `λ` on grids of `n` points.
pub fn monotonicity_violations(n: usize) -> (usize, String) {
    let grid: Vec<f64> = (1..=n).map(|j| j as f64 / (n + 1) as f64).collect();
    let mut count = 0;
    let mut worst = String::from("none");
    let mut check = |name: &str, values: Vec<Result<f64>>, increasing: bool| {
        let vals: Vec<f64> = values.into_iter().map(|v| v.unwrap_or(f64::NAN)).collect();
        for (j, w) in vals.windows(2).enumerate() {
            let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                count += 1;
                worst = format!("{name} at grid index {j}");
            }
        }
    };
    check(
        "elliptic_k",
        grid.iter().map(|&r| elliptic_k(r)).collect(),
        true,
    );
    check("mu", grid.iter().map(|&r| mu(r)).collect(), false);
    check("phi_2", grid.iter().map(|&r| phi_k(2.0, r)).collect(), true);
    let ks: Vec<f64> = (0..n)
        .map(|j| 1.0 + 3.0 * j as f64 / (n - 1) as f64)
        .collect();
    check("lambda", ks.iter().map(|&k| lambda_k(k)).collect(), true);
    (count, worst)
}

/// `tan(v(h a, h b)/2) - tan(v(a, b))` for `h(z) = (z - τ)/(1 - τz)`.
pub fn holder_excess(tau: f64, p: &HalfPlanePair) -> Result<f64> {
    let v = visual_angle(p)?.angle;
    let image = HalfPlanePair::new(
        half_plane_mobius(tau, p.a())?,
        half_plane_mobius(tau, p.b())?,
    )?;
    Ok((visual_angle(&image)?.angle / 2.0).tan() - v.tan())
}

fn holder(suite: &mut Suite, rng: &mut Sampler, n: usize) {
    let (mut k1, mut rhs, mut quot) = (
        suite.tracker("k1"),
        suite.tracker("rhs_k1"),
        suite.tracker("vhquot"),
    );
    let mut taken = 0;
    while taken < n {
        let p = rng.unit_pair();
        let tau = rng.tau();
        let describe_tau = || format!("{} tau={tau}", describe(&p));
        let ratio = vhquot_ratio(tau, &p).map(|r| (0.5 - r).max(r - 2.0));
        quot.record_result(ratio, describe_tau);
        let Ok(v) = visual_angle(&p).map(|r| r.angle) else {
            continue;
        };
        if v >= FRAC_PI_2 {
            continue;
        }
        taken += 1;
        k1.record_result(holder_excess(tau, &p).map(|x| x.max(0.0)), describe_tau);
        let sharp = crate::distortion::holder_rhs(1.0, v).map(|b| (b - v.tan()).abs());
        rhs.record_result(sharp, describe_tau);
    }
    let mut prop = suite.tracker("sum_product");
    for _ in 0..n {
        let (a, b, c) = rng.unit_triple();
        prop.record((c + a * b).abs() / (a + b).abs() - 1.0, || {
            format!("a={a} b={b} c={c}")
        });
    }
    for t in [k1, rhs, quot, prop] {
        suite.push(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(samples: usize) -> VerifyConfig {
        VerifyConfig {
            seed: 42,
            samples,
            tolerances: BTreeMap::new(),
        }
    }

    #[test]
    fn every_suite_has_tolerances() {
        let keys = default_tolerances();
        for report in run("all", &config(20)).unwrap() {
            for c in &report.checks {
                assert!(keys.contains_key(format!("{}.{}", report.suite, c.name).as_str()));
                assert!(c.cases > 0, "{}.{}", report.suite, c.name);
            }
        }
        assert!(run("nope", &config(1)).is_none());
    }

    #[test]
    fn geometric_suites_pass_on_small_samples() {
        for s in ["metrics", "catalog", "collinearity", "bounds", "holder"] {
            let r = &run(s, &config(200)).unwrap()[0];
            assert!(r.pass, "{r:#?}");
        }
    }

    #[test]
    fn overrides_apply() {
        let mut cfg = config(10);
        cfg.tolerances.insert("metrics.rho_disk".into(), -1.0);
        let r = &run("metrics", &cfg).unwrap()[0];
        assert!(!r.pass);
        assert_eq!(r.checks[1].tolerance, -1.0);
    }
}
