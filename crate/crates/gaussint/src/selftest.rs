//! Built-in invariant suites run by `gaussint --selftest`.
//!
//! Every suite draws its cases from a ChaCha generator seeded with the
//! user's seed, so a given seed always prints the same report.

use std::fmt;

use gaussint_core::basis::{cartesian_components, AngularIndex};
use gaussint_core::boys::Boys;
use gaussint_core::eri::{hgp_primitive_class, os_full_class, EriClass, QuartetGeometry};
use gaussint_core::gpt::GaussianPair;
use gaussint_core::one_electron::{kinetic_prim_asym, kinetic_prim_sym};
use gaussint_core::oracle::eri_by_differentiation;
use gaussint_core::rys::rys_rule_with;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub limit: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.limit
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, max deviation {:.2e} (limit {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.max_deviation,
            self.limit
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let ok = self.suites.iter().filter(|s| s.passed()).count();
        write!(f, "selftest seed {}: {}/{} suites passed", self.seed, ok, self.suites.len())
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn random_index(rng: &mut ChaCha8Rng, l_max: u32) -> AngularIndex {
    let comps = cartesian_components(rng.gen_range(0..=l_max));
    comps[rng.gen_range(0..comps.len())]
}

fn point(rng: &mut ChaCha8Rng, half: f64) -> [f64; 3] {
    std::array::from_fn(|_| rng.gen_range(-half..half))
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn class_rel(a: &EriClass, b: &EriClass) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

fn kinetic_forms(rng: &mut ChaCha8Rng) -> SuiteResult {
    let cases = 200;
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let (a1, a2) = (log_uniform(rng, 0.05, 50.0), log_uniform(rng, 0.05, 50.0));
        let (ca, cb) = (point(rng, 2.5), point(rng, 2.5));
        let (n1, n2) = (random_index(rng, 4), random_index(rng, 4));
        let pair = GaussianPair::new(a1, &ca, a2, &cb);
        worst = worst.max(rel(kinetic_prim_sym(&pair, n1, n2, a1, a2), kinetic_prim_asym(&pair, n1, n2, a2)));
    }
    SuiteResult { name: "kinetic-forms", cases, max_deviation: worst, limit: 1e-12 }
}

fn boys_erf(boys: &Boys) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let args = [1e-8, 0.1, 1.0, 10.0, 100.0];
    for &t in &args {
        let f0 = boys.table(0, t).map(|v| v.get(0)).unwrap_or(f64::NAN);
        let exact = 0.5 * (std::f64::consts::PI / t).sqrt() * libm::erf(t.sqrt());
        worst = worst.max(rel(f0, exact));
    }
    let zero = boys.table(16, 0.0).expect("T = 0 is valid");
    for m in 0..=16 {
        worst = worst.max(rel(zero.get(m), 1.0 / (2 * m + 1) as f64));
    }
    if worst.is_nan() {
        worst = f64::INFINITY;
    }
    SuiteResult { name: "boys-erf", cases: args.len() + 17, max_deviation: worst, limit: 1e-13 }
}

fn rys_exactness(boys: &Boys) -> SuiteResult {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 1..=6 {
        for &t in &[0.0, 0.1, 1.0, 10.0, 100.0] {
            let (Ok(rule), Ok(f)) = (rys_rule_with(n, t, boys), boys.table(2 * n - 1, t)) else {
                worst = f64::INFINITY;
                continue;
            };
            for m in 0..2 * n {
                worst = worst.max(rel(rule.moment(m as u32), f.get(m)));
            }
            cases += 1;
        }
    }
    SuiteResult { name: "rys-exactness", cases, max_deviation: worst, limit: 1e-10 }
}

fn backend_triangle(rng: &mut ChaCha8Rng, boys: &Boys) -> SuiteResult {
    let cases = 24;
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let exps: [f64; 4] = std::array::from_fn(|_| log_uniform(rng, 0.1, 10.0));
        let centers: [[f64; 3]; 4] = std::array::from_fn(|_| point(rng, 1.5));
        let ls: [u32; 4] = std::array::from_fn(|_| rng.gen_range(0..=2));
        let g = QuartetGeometry::new(exps, centers);
        let os = os_full_class(&g, ls, boys);
        let hgp = hgp_primitive_class(&g, ls, boys);
        let oracle = eri_by_differentiation(exps, centers, ls, boys);
        worst = worst.max(class_rel(&os, &hgp)).max(class_rel(&os, &oracle)).max(class_rel(&hgp, &oracle));
    }
    SuiteResult { name: "backend-triangle", cases, max_deviation: worst, limit: 1e-10 }
}

/// Runs every suite with the given Boys settings.
pub fn run_selftest(seed: u64, boys: &Boys) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![kinetic_forms(&mut rng), boys_erf(boys), rys_exactness(boys), backend_triangle(&mut rng, boys)];
    SelftestReport { seed, suites }
}
