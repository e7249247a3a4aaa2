//! Slow reference engines for validation.
//!
//! Nothing here calls the recursions in [`crate::eri`] or the analytic
//! one-electron formulas; agreement between these engines and the
//! production paths is what the test suites check.
//!
//! - [`eri_by_differentiation`] differentiates the closed-form `(ss|ss)`
//!   integral with respect to the center coordinates. Raising the index of
//!   a Gaussian obeys `phi(n+1_i) = (1/2a) d/dR_i phi(n) + (n_i/2a) phi(n-1_i)`,
//!   so every Cartesian integral is a fixed combination of center
//!   derivatives of `(ss|ss)`. The derivatives are exact: `(ss|ss)` is
//!   written as `int_0^1 prod_d h_d(t) dt` with Gaussian factors `h_d`, the
//!   Taylor coefficients of each `h_d` are polynomials in `s = t^2`, and
//!   `int_0^1 s^m exp(-T s) dt = F_m(T)` closes the expression.
//! - [`quadrature_one_electron`] integrates overlap, kinetic and nuclear
//!   attraction numerically: Gauss-Hermite grids around the composite
//!   center, and a spherical grid around the nucleus so the `1/r`
//!   singularity is absorbed by the volume element.
//! - [`spherical_coulomb_energy`] is the Coulomb energy of two spherical
//!   charge clouds by radial quadrature.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::{cartesian_components, AngularIndex, ContractedShell, PrimitiveGaussian};
use crate::boys::Boys;
use crate::eri::EriClass;
use crate::linalg::tridiagonal_eigen;
use crate::num::{abs, ceil, cos, exp, pow, powi, sin, sqrt};
use crate::{Error, Vec3};

// ---------------------------------------------------------------------------
// Differentiation oracle

/// Truncated Taylor polynomial in the four center coordinates of one
/// Cartesian direction, with coefficients that are polynomials in `s`.
struct Jet {
    dims: [usize; 4],
    sdeg: usize,
    data: Vec<f64>,
}

impl Jet {
    fn zeros(bounds: [usize; 4], sdeg: usize) -> Self {
        let dims = bounds.map(|b| b + 1);
        Jet { dims, sdeg, data: vec![0.0; dims.iter().product::<usize>() * sdeg] }
    }

    fn mono(&self, k: [usize; 4]) -> usize {
        ((k[0] * self.dims[1] + k[1]) * self.dims[2] + k[2]) * self.dims[3] + k[3]
    }

    fn monomials(&self) -> impl Iterator<Item = [usize; 4]> {
        let d = self.dims;
        (0..d[0]).flat_map(move |a| {
            (0..d[1]).flat_map(move |b| (0..d[2]).flat_map(move |c| (0..d[3]).map(move |e| [a, b, c, e])))
        })
    }

    fn coef(&self, k: [usize; 4]) -> &[f64] {
        let i = self.mono(k) * self.sdeg;
        &self.data[i..i + self.sdeg]
    }

    /// `self * g / n`, truncated to the box and to `sdeg`, where `g` has
    /// coefficients of degree at most one in `s`.
    fn mul_sparse(&self, g: &[([usize; 4], [f64; 2])], n: f64) -> Jet {
        let mut out = Jet { dims: self.dims, sdeg: self.sdeg, data: vec![0.0; self.data.len()] };
        for k in self.monomials() {
            let src = self.coef(k);
            if src.iter().all(|&v| v == 0.0) {
                continue;
            }
            for (gk, gc) in g {
                let sum: [usize; 4] = core::array::from_fn(|x| k[x] + gk[x]);
                if (0..4).any(|x| sum[x] >= self.dims[x]) {
                    continue;
                }
                let dst = out.mono(sum) * self.sdeg;
                for (p, &v) in src.iter().enumerate() {
                    if v == 0.0 {
                        continue;
                    }
                    out.data[dst + p] += v * gc[0] / n;
                    if p + 1 < self.sdeg {
                        out.data[dst + p + 1] += v * gc[1] / n;
                    }
                }
            }
        }
        out
    }
}

/// Taylor jet of
/// `exp(-mu_ab (A-B)^2 - mu_cd (C-D)^2 - s rho ((P-Q)^2 - (P0-Q0)^2)) * exp(mu_ab (A0-B0)^2 + mu_cd (C0-D0)^2)`
/// in one direction, i.e. the center-dependent factor relative to its
/// value at the expansion point.
fn direction_jet(exps: [f64; 4], x: [f64; 4], bounds: [usize; 4]) -> Jet {
    let [a, b, c, d] = exps;
    let (zeta, eta) = (a + b, c + d);
    let mu_ab = a * b / zeta;
    let mu_cd = c * d / eta;
    let rho = zeta * eta / (zeta + eta);
    let u = x[0] - x[1];
    let v = x[2] - x[3];
    let w = (a * x[0] + b * x[1]) / zeta - (c * x[2] + d * x[3]) / eta;
    // each form: (constant, gradient, weight on s^0, weight on s^1)
    let forms = [
        (u, [1.0, -1.0, 0.0, 0.0], -mu_ab, 0.0),
        (v, [0.0, 0.0, 1.0, -1.0], -mu_cd, 0.0),
        (w, [a / zeta, b / zeta, -c / eta, -d / eta], 0.0, -rho),
    ];
    // (c0 + l.delta)^2 - c0^2 = 2 c0 l.delta + (l.delta)^2
    let mut acc: Vec<([usize; 4], [f64; 2])> = Vec::new();
    let mut push = |k: [usize; 4], val: [f64; 2]| {
        if (0..4).any(|i| k[i] > bounds[i]) {
            return;
        }
        match acc.iter_mut().find(|(m, _)| *m == k) {
            Some((_, c)) => {
                c[0] += val[0];
                c[1] += val[1];
            }
            None => acc.push((k, val)),
        }
    };
    for (c0, l, w0, w1) in forms {
        for i in 0..4 {
            if l[i] == 0.0 {
                continue;
            }
            let mut k = [0; 4];
            k[i] = 1;
            let t = 2.0 * c0 * l[i];
            push(k, [w0 * t, w1 * t]);
            for j in 0..4 {
                if l[j] == 0.0 {
                    continue;
                }
                let mut k2 = k;
                k2[j] += 1;
                let t = l[i] * l[j];
                push(k2, [w0 * t, w1 * t]);
            }
        }
    }
    let g: Vec<_> = acc.into_iter().filter(|(_, c)| c[0] != 0.0 || c[1] != 0.0).collect();

    let total: usize = bounds.iter().sum();
    let mut result = Jet::zeros(bounds, total + 1);
    result.data[0] = 1.0;
    let mut term = Jet::zeros(bounds, total + 1);
    term.data[0] = 1.0;
    for n in 1..=total {
        term = term.mul_sparse(&g, n as f64);
        for (r, t) in result.data.iter_mut().zip(&term.data) {
            *r += t;
        }
    }
    result
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Polynomial product, truncated to `len` coefficients.
fn poly_mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

struct SsssParts {
    /// `2 pi^{5/2} / (zeta eta sqrt(zeta + eta)) * exp(-mu_ab AB^2 - mu_cd CD^2)`.
    prefactor: f64,
    /// `rho |P - Q|^2`.
    t: f64,
}

fn ssss_parts(exps: [f64; 4], centers: &[Vec3; 4]) -> SsssParts {
    let [a, b, c, d] = exps;
    let (zeta, eta) = (a + b, c + d);
    let rho = zeta * eta / (zeta + eta);
    let mut ab2 = 0.0;
    let mut cd2 = 0.0;
    let mut pq2 = 0.0;
    for k in 0..3 {
        let [xa, xb, xc, xd] = [centers[0][k], centers[1][k], centers[2][k], centers[3][k]];
        ab2 += (xa - xb) * (xa - xb);
        cd2 += (xc - xd) * (xc - xd);
        let pq = (a * xa + b * xb) / zeta - (c * xc + d * xd) / eta;
        pq2 += pq * pq;
    }
    let prefactor = 2.0 * pow(PI, 2.5) / (zeta * eta * sqrt(zeta + eta)) * exp(-a * b / zeta * ab2 - c * d / eta * cd2);
    SsssParts { prefactor, t: rho * pq2 }
}

/// `sum_m c_m F_m(T)` times the `(ss|ss)` prefactor.
fn close_with_boys(poly: &[f64], parts: &SsssParts, boys: &Boys) -> f64 {
    let mut f = vec![0.0; poly.len()];
    boys.fill(parts.t, &mut f);
    parts.prefactor * poly.iter().zip(&f).map(|(c, f)| c * f).sum::<f64>()
}

/// A center-derivative of the primitive `(ss|ss)` integral.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSeed {
    pub exponents: [f64; 4],
    pub centers: [Vec3; 4],
    /// `orders[center][direction]`: how often to differentiate with
    /// respect to that center coordinate.
    pub orders: [[u32; 3]; 4],
}

impl DerivativeSeed {
    pub fn total_order(&self) -> u32 {
        self.orders.iter().flatten().sum()
    }

    /// The mixed derivative of `(ss|ss)` over unnormalized primitives.
    pub fn evaluate(&self, boys: &Boys) -> f64 {
        let total = self.total_order() as usize;
        let mut poly = vec![1.0];
        for dir in 0..3 {
            let k: [usize; 4] = core::array::from_fn(|x| self.orders[x][dir] as usize);
            let x: [f64; 4] = core::array::from_fn(|c| self.centers[c][dir]);
            let jet = direction_jet(self.exponents, x, k);
            let scale: f64 = k.iter().map(|&n| factorial(n)).product();
            let p: Vec<f64> = jet.coef(k).iter().map(|c| c * scale).collect();
            poly = poly_mul(&poly, &p, total + 1);
        }
        close_with_boys(&poly, &ssss_parts(self.exponents, &self.centers), boys)
    }
}

/// Coefficients `H[n][k]` expressing index `n` on a center with exponent
/// `alpha` as `sum_k H[n][k] d^k/dR^k` applied to the s function.
fn raising_table(alpha: f64, n_max: usize) -> Vec<Vec<f64>> {
    let mut h = vec![vec![0.0; n_max + 1]; n_max + 1];
    h[0][0] = 1.0;
    for n in 0..n_max {
        for k in 0..=n + 1 {
            let mut v = 0.0;
            if k > 0 {
                v += h[n][k - 1];
            }
            if n > 0 {
                v += n as f64 * h[n - 1][k];
            }
            h[n + 1][k] = v / (2.0 * alpha);
        }
    }
    h
}

/// Primitive class over unnormalized Gaussians with exponents
/// `[a, b, c, d]` on `centers`, by differentiating `(ss|ss)`.
pub fn eri_by_differentiation(exps: [f64; 4], centers: [Vec3; 4], ls: [u32; 4], boys: &Boys) -> EriClass {
    let bounds = ls.map(|l| l as usize);
    let total: usize = bounds.iter().sum();
    let dims = bounds.map(|b| b + 1);
    let tables: Vec<Vec<Vec<f64>>> = (0..4).map(|x| raising_table(exps[x], bounds[x])).collect();

    // per direction: s-polynomial for every index tuple (nA, nB, nC, nD)
    let ntuple: usize = dims.iter().product();
    let tuple_index = |n: [usize; 4]| ((n[0] * dims[1] + n[1]) * dims[2] + n[2]) * dims[3] + n[3];
    let mut dir_polys: Vec<Vec<Vec<f64>>> = Vec::with_capacity(3);
    for dir in 0..3 {
        let x: [f64; 4] = core::array::from_fn(|c| centers[c][dir]);
        let jet = direction_jet(exps, x, bounds);
        let mut polys = vec![Vec::new(); ntuple];
        for n in jet.monomials() {
            let mut p = vec![0.0; total + 1];
            for k in jet.monomials() {
                if (0..4).any(|c| k[c] > n[c]) {
                    continue;
                }
                let h: f64 = (0..4).map(|c| tables[c][n[c]][k[c]] * factorial(k[c])).product();
                if h == 0.0 {
                    continue;
                }
                for (dst, src) in p.iter_mut().zip(jet.coef(k)) {
                    *dst += h * src;
                }
            }
            polys[tuple_index(n)] = p;
        }
        dir_polys.push(polys);
    }

    let parts = ssss_parts(exps, &centers);
    let comps: Vec<Vec<AngularIndex>> = ls.iter().map(|&l| cartesian_components(l)).collect();
    let mut values = Vec::new();
    for a in &comps[0] {
        for b in &comps[1] {
            for c in &comps[2] {
                for d in &comps[3] {
                    let mut poly = vec![1.0];
                    for (dir, polys) in dir_polys.iter().enumerate() {
                        let n = [a, b, c, d].map(|x| x.as_array()[dir] as usize);
                        poly = poly_mul(&poly, &polys[tuple_index(n)], total + 1);
                    }
                    values.push(close_with_boys(&poly, &parts, boys));
                }
            }
        }
    }
    EriClass::new(ls, values)
}

/// Contracted, normalized class built from [`eri_by_differentiation`]
/// primitive classes.
pub fn eri_contracted_by_differentiation(shells: [&ContractedShell; 4], boys: &Boys) -> EriClass {
    let ls = shells.map(|s| s.l());
    let mut acc = vec![0.0; crate::eri::class_size(ls)];
    let [a, b, c, d] = shells;
    for (&ea, &ca) in a.exponents().iter().zip(a.radial_coefficients()) {
        for (&eb, &cb) in b.exponents().iter().zip(b.radial_coefficients()) {
            for (&ec, &cc) in c.exponents().iter().zip(c.radial_coefficients()) {
                for (&ed, &cd) in d.exponents().iter().zip(d.radial_coefficients()) {
                    let centers = [*a.center(), *b.center(), *c.center(), *d.center()];
                    let prim = eri_by_differentiation([ea, eb, ec, ed], centers, ls, boys);
                    let w = ca * cb * cc * cd;
                    for (x, v) in acc.iter_mut().zip(prim.values()) {
                        *x += w * v;
                    }
                }
            }
        }
    }
    let mut k = 0;
    for &sa in a.component_scales() {
        for &sb in b.component_scales() {
            for &sc in c.component_scales() {
                for &sd in d.component_scales() {
                    acc[k] *= sa * sb * sc * sd;
                    k += 1;
                }
            }
        }
    }
    EriClass::new(ls, acc)
}

// ---------------------------------------------------------------------------
// Gauss rules

/// `n`-point Gauss-Hermite rule for `int f(x) exp(-x^2) dx`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let off: Vec<f64> = (1..n).map(|k| sqrt(k as f64 / 2.0)).collect();
    let (x, z) = tridiagonal_eigen(&vec![0.0; n], &off);
    let w = z.iter().map(|v| sqrt(PI) * v * v).collect();
    (x, w)
}

/// `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let off: Vec<f64> = (1..n).map(|k| k as f64 / sqrt((4 * k * k - 1) as f64)).collect();
    let (x, z) = tridiagonal_eigen(&vec![0.0; n], &off);
    let w = z.iter().map(|v| 2.0 * v * v).collect();
    (x, w)
}

/// Composite Gauss-Legendre nodes and weights over the given breakpoints.
fn panels(breaks: &[f64], rule: &(Vec<f64>, Vec<f64>)) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity((breaks.len() - 1) * rule.0.len());
    for win in breaks.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (x, w) in rule.0.iter().zip(&rule.1) {
            out.push((mid + half * x, half * w));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// One-electron quadrature

/// Which one-electron operator to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneElectronKind {
    Overlap,
    Kinetic,
    /// `<a| 1/|r - C| |b>` (no charge, no sign).
    Nuclear,
}

/// Result of a refined quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    /// Estimate on the finest grid.
    pub value: f64,
    /// Difference between the last two refinements.
    pub difference: f64,
    /// Quadrature of the absolute integrand, the scale for `difference`.
    pub scale: f64,
}

/// Relative change (against [`QuadratureEstimate::scale`]) accepted
/// between two refinements.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;
const MAX_LEVEL: u32 = 4;

/// Numerical `<a|op|b>` over unnormalized primitives. `c` is the nucleus
/// position, required for [`OneElectronKind::Nuclear`].
pub fn quadrature_one_electron(
    kind: OneElectronKind,
    a: &PrimitiveGaussian,
    b: &PrimitiveGaussian,
    c: Option<&Vec3>,
) -> Result<QuadratureEstimate, Error> {
    let estimate = |level: u32| match kind {
        OneElectronKind::Overlap => hermite_grid(a, b, level, |r| a.value_at(r) * b.value_at(r)),
        OneElectronKind::Kinetic => hermite_grid(a, b, level, |r| -0.5 * a.value_at(r) * laplacian(b, r)),
        OneElectronKind::Nuclear => spherical_grid(a, b, c.expect("checked below"), level),
    };
    if kind == OneElectronKind::Nuclear && c.is_none() {
        return Err(Error::InvalidConfig("nuclear quadrature needs a nucleus position"));
    }
    let mut prev = estimate(0);
    for level in 1..=MAX_LEVEL {
        let next = estimate(level);
        let difference = abs(next.0 - prev.0);
        if difference <= QUADRATURE_TOLERANCE * next.1 {
            return Ok(QuadratureEstimate { value: next.0, difference, scale: next.1 });
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged { estimate: prev.0, difference: f64::NAN })
}

/// Analytic Laplacian of an unnormalized primitive at `r`.
fn laplacian(g: &PrimitiveGaussian, r: &Vec3) -> f64 {
    let alpha = g.exponent;
    let n = g.index.as_array();
    let d: Vec3 = core::array::from_fn(|k| r[k] - g.center[k]);
    let one = |k: usize| powi(d[k], n[k]);
    let two = |k: usize| {
        let m = n[k] as f64;
        let mut v = -2.0 * alpha * (2.0 * m + 1.0) * powi(d[k], n[k]) + 4.0 * alpha * alpha * powi(d[k], n[k] + 2);
        if n[k] >= 2 {
            v += m * (m - 1.0) * powi(d[k], n[k] - 2);
        }
        v
    };
    let gauss = exp(-alpha * (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
    (two(0) * one(1) * one(2) + one(0) * two(1) * one(2) + one(0) * one(1) * two(2)) * gauss
}

fn composite(a: &PrimitiveGaussian, b: &PrimitiveGaussian) -> (f64, Vec3) {
    let gamma = a.exponent + b.exponent;
    let p = core::array::from_fn(|k| (a.exponent * a.center[k] + b.exponent * b.center[k]) / gamma);
    (gamma, p)
}

/// Tensor Gauss-Hermite grid centered at the composite center; returns
/// the estimate and the absolute-integrand scale.
fn hermite_grid(a: &PrimitiveGaussian, b: &PrimitiveGaussian, level: u32, f: impl Fn(&Vec3) -> f64) -> (f64, f64) {
    let (gamma, p) = composite(a, b);
    let n = 8usize << level;
    let (x, w) = gauss_hermite(n);
    let s = 1.0 / sqrt(gamma);
    let (mut sum, mut scale) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = [p[0] + s * x[i], p[1] + s * x[j], p[2] + s * x[k]];
                let weight = w[i] * w[j] * w[k] * exp(x[i] * x[i] + x[j] * x[j] + x[k] * x[k]);
                let v = weight * f(&r);
                sum += v;
                scale += abs(v);
            }
        }
    }
    let jac = s * s * s;
    (sum * jac, scale * jac)
}

/// Spherical product grid centered at the nucleus with the polar axis
/// pointing at the composite center: Gauss-Legendre panels in the radius
/// (width comparable to the Gaussian width), geometrically graded
/// Gauss-Legendre panels in the polar angle, trapezoid in the azimuth.
fn spherical_grid(a: &PrimitiveGaussian, b: &PrimitiveGaussian, c: &Vec3, level: u32) -> (f64, f64) {
    let (gamma, p) = composite(a, b);
    let width = 1.0 / sqrt(gamma);
    let pc: Vec3 = core::array::from_fn(|k| p[k] - c[k]);
    let dist = sqrt(pc[0] * pc[0] + pc[1] * pc[1] + pc[2] * pc[2]);
    let axis = if dist > 1e-12 { pc.map(|v| v / dist) } else { [0.0, 0.0, 1.0] };
    let (e1, e2) = orthonormal_pair(&axis);

    let r_max = dist + 12.0 * width;
    let n_radial = ((r_max / width) as usize).max(4);
    let r_breaks: Vec<f64> = (0..=n_radial).map(|k| r_max * k as f64 / n_radial as f64).collect();

    let mut t_breaks = vec![0.0];
    let mut t = if dist > width { width / dist } else { PI / 4.0 };
    while t < PI {
        t_breaks.push(t);
        t *= 2.0;
    }
    t_breaks.push(PI);

    let n = 8usize << level;
    let rule = gauss_legendre(n);
    let radial = panels(&r_breaks, &rule);
    let polar = panels(&t_breaks, &rule);
    let n_phi = 6usize << level;
    let dphi = 2.0 * PI / n_phi as f64;
    let trig: Vec<(f64, f64)> = (0..n_phi).map(|k| (cos(k as f64 * dphi), sin(k as f64 * dphi))).collect();

    let (mut sum, mut scale) = (0.0, 0.0);
    for &(theta, wt) in &polar {
        let (st, ct) = (sin(theta), cos(theta));
        for &(cp, sp) in &trig {
            let dir: Vec3 = core::array::from_fn(|k| st * cp * e1[k] + st * sp * e2[k] + ct * axis[k]);
            for &(r, wr) in &radial {
                let pt: Vec3 = core::array::from_fn(|k| c[k] + r * dir[k]);
                // r^2 sin(theta) volume element times 1/r
                let v = wt * wr * dphi * r * st * a.value_at(&pt) * b.value_at(&pt);
                sum += v;
                scale += abs(v);
            }
        }
    }
    (sum, scale)
}

fn orthonormal_pair(axis: &Vec3) -> (Vec3, Vec3) {
    let helper = if abs(axis[0]) < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot = helper[0] * axis[0] + helper[1] * axis[1] + helper[2] * axis[2];
    let mut e1: Vec3 = core::array::from_fn(|k| helper[k] - dot * axis[k]);
    let n = sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    e1 = e1.map(|v| v / n);
    let e2 = [axis[1] * e1[2] - axis[2] * e1[1], axis[2] * e1[0] - axis[0] * e1[2], axis[0] * e1[1] - axis[1] * e1[0]];
    (e1, e2)
}

// ---------------------------------------------------------------------------
// Coulomb energy of spherical densities

/// `int int rho1(r1) rho2(r2) / |r1 - r2|` for spherically symmetric
/// densities given as functions of the radius, truncated at `r_max`.
///
/// Uses `1/|r1 - r2|` averaged over angles `= 1/max(r1, r2)` and composite
/// Gauss-Legendre quadrature with the inner integral split at `r1`.
pub fn spherical_coulomb_energy(rho1: impl Fn(f64) -> f64, rho2: impl Fn(f64) -> f64, r_max: f64) -> f64 {
    let rule = gauss_legendre(16);
    let n_panels = 48;
    let breaks: Vec<f64> = (0..=n_panels).map(|k| r_max * k as f64 / n_panels as f64).collect();
    let outer = panels(&breaks, &rule);
    let mut energy = 0.0;
    for &(r1, w1) in &outer {
        let inner_lo = panels(&split(0.0, r1, n_panels), &rule);
        let inner_hi = panels(&split(r1, r_max, n_panels), &rule);
        let enclosed: f64 = inner_lo.iter().map(|&(r, w)| w * 4.0 * PI * r * r * rho2(r)).sum();
        let outside: f64 = inner_hi.iter().map(|&(r, w)| w * 4.0 * PI * r * rho2(r)).sum();
        let potential = if r1 > 0.0 { enclosed / r1 } else { 0.0 } + outside;
        energy += w1 * 4.0 * PI * r1 * r1 * rho1(r1) * potential;
    }
    energy
}

fn split(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = (ceil(n as f64 * (hi - lo) / hi.max(1e-300)) as usize).max(1);
    (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_at(alpha: f64, c: Vec3) -> PrimitiveGaussian {
        PrimitiveGaussian::new(alpha, AngularIndex::S, c).unwrap()
    }

    #[test]
    fn hermite_rule_moments() {
        let (x, w) = gauss_hermite(6);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m0 - PI.sqrt()).abs() < 1e-14);
        assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn normalized_s_self_overlap() {
        let g = s_at(1.3, [0.2, 0.0, -0.4]);
        let n = g.norm();
        let v = quadrature_one_electron(OneElectronKind::Overlap, &g, &g, None).unwrap().value * n * n;
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn kinetic_of_normalized_s() {
        let g = s_at(1.0, [0.0; 3]);
        let n = g.norm();
        let v = quadrature_one_electron(OneElectronKind::Kinetic, &g, &g, None).unwrap().value * n * n;
        assert!((v - 1.5).abs() < 1e-7);
    }

    #[test]
    fn nuclear_s_at_nucleus() {
        let g = s_at(1.0, [0.0; 3]);
        let n = g.norm();
        let v = quadrature_one_electron(OneElectronKind::Nuclear, &g, &g, Some(&[0.0; 3])).unwrap().value * n * n;
        assert!((v - 2.0 * (2.0 / PI).sqrt()).abs() < 1e-6);
        assert!(quadrature_one_electron(OneElectronKind::Nuclear, &g, &g, None).is_err());
    }

    #[test]
    fn ssss_derivative_is_p_function() {
        // (p_x s|ss) = (1/2a) d/dA_x (ss|ss)
        let boys = Boys::default();
        let exps = [0.8, 1.1, 0.6, 1.7];
        let centers = [[0.1, 0.3, -0.2], [0.9, -0.4, 0.5], [-0.6, 0.2, 0.0], [0.3, 0.8, -0.7]];
        let mut orders = [[0; 3]; 4];
        orders[0][0] = 1;
        let seed = DerivativeSeed { exponents: exps, centers, orders };
        assert_eq!(seed.total_order(), 1);
        let class = eri_by_differentiation(exps, centers, [1, 0, 0, 0], &boys);
        let expect = seed.evaluate(&boys) / (2.0 * exps[0]);
        assert!((class.values()[0] - expect).abs() < 1e-14 * expect.abs().max(1e-300));
    }

    #[test]
    fn coulomb_of_gaussian_clouds() {
        // normalized s functions with alpha = 1: density N^2 exp(-2 r^2)
        let n2 = (2.0 / PI).powf(1.5);
        let e = spherical_coulomb_energy(|r| n2 * (-2.0 * r * r).exp(), |r| n2 * (-2.0 * r * r).exp(), 8.0);
        assert!((e - 2.0 / PI.sqrt()).abs() < 1e-12, "{e}");
    }
}
