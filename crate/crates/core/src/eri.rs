//! Electron-repulsion integrals `(ab|cd)` over shell quartets.
//!
//! Three evaluation routes share the same geometry and base values
//! `[00|00]^(m) = C0 F_m(T)`:
//!
//! - [`eri_ssss`]: the closed form for four s functions.
//! - Obara-Saika ([`os_full_class`]): top-down memoized recursion that
//!   raises the first bra and first ket centers, then moves angular
//!   momentum onto the second centers with the horizontal relation. In
//!   contracted work every primitive quartet goes through the whole chain
//!   before contraction.
//! - Head-Gordon-Pople ([`os_vrr_class`] + [`hrr_transfer`]): the vertical
//!   relation fills the `[e0|f0]` pyramid bottom-up, the pyramid is
//!   contracted, and the horizontal relation runs once per contracted class.
//!
//! The intermediate point is `W = (zeta P + eta Q) / (zeta + eta)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::{cumulative_components, cumulative_count, shell_size, AngularIndex, Axis, Basis, ContractedShell};
use crate::boys::Boys;
use crate::gpt::{moment_factor, GaussianPair};
use crate::num::{abs, pow, sqrt};
use crate::{hrr, norm2, sub, Error, Vec3};

/// `2 pi^{5/2}`.
fn two_pi_five_halves() -> f64 {
    2.0 * pow(PI, 2.5)
}

/// Geometry of a primitive quartet `(ab|cd)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuartetGeometry {
    /// Bra exponent sum `zeta`.
    pub zeta: f64,
    /// Ket exponent sum `eta`.
    pub eta: f64,
    /// `zeta eta / (zeta + eta)`.
    pub rho: f64,
    pub p: Vec3,
    pub q: Vec3,
    pub w: Vec3,
    /// `rho |P - Q|^2`.
    pub t: f64,
    pub k1: f64,
    pub k2: f64,
    pub pa: Vec3,
    pub pb: Vec3,
    pub qc: Vec3,
    pub qd: Vec3,
    pub wp: Vec3,
    pub wq: Vec3,
    pub ab: Vec3,
    pub cd: Vec3,
}

impl QuartetGeometry {
    /// Geometry for exponents `[a, b, c, d]` on centers `[A, B, C, D]`.
    pub fn new(exponents: [f64; 4], centers: [Vec3; 4]) -> Self {
        let bra = GaussianPair::new(exponents[0], &centers[0], exponents[1], &centers[1]);
        let ket = GaussianPair::new(exponents[2], &centers[2], exponents[3], &centers[3]);
        Self::from_pairs(&bra, &ket)
    }

    pub fn from_pairs(bra: &GaussianPair, ket: &GaussianPair) -> Self {
        let (zeta, eta) = (bra.gamma, ket.gamma);
        let sum = zeta + eta;
        let (p, q) = (bra.center, ket.center);
        let w: Vec3 = core::array::from_fn(|k| (zeta * p[k] + eta * q[k]) / sum);
        let rho = zeta * eta / sum;
        QuartetGeometry {
            zeta,
            eta,
            rho,
            p,
            q,
            w,
            t: rho * norm2(&sub(&p, &q)),
            k1: bra.prefactor,
            k2: ket.prefactor,
            pa: bra.pa,
            pb: bra.pb,
            qc: ket.pa,
            qd: ket.pb,
            wp: sub(&w, &p),
            wq: sub(&w, &q),
            ab: bra.ab,
            cd: ket.ab,
        }
    }

    /// `C0 = 2 pi^{5/2} K1 K2 / (zeta eta sqrt(zeta + eta))`.
    pub fn prefactor(&self) -> f64 {
        two_pi_five_halves() * self.k1 * self.k2 / (self.zeta * self.eta * sqrt(self.zeta + self.eta))
    }

    /// `[00|00]^(m) = C0 F_m(T)` for `m = 0..=m_max`.
    pub fn base_values(&self, m_max: usize, boys: &Boys) -> Vec<f64> {
        let mut f = vec![0.0; m_max + 1];
        boys.fill(self.t, &mut f);
        let c0 = self.prefactor();
        for v in &mut f {
            *v *= c0;
        }
        f
    }
}

/// `(ss|ss)` over unnormalized primitives.
pub fn eri_ssss(geom: &QuartetGeometry, boys: &Boys) -> f64 {
    geom.base_values(0, boys)[0]
}

/// Evaluation route for contracted classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EriBackend {
    /// Obara-Saika, contraction after the full recursion.
    Os,
    /// Head-Gordon-Pople, contraction between the vertical and horizontal steps.
    Hgp,
    /// Closed form; only all-s quartets.
    SsssOnly,
}

impl EriBackend {
    pub fn name(&self) -> &'static str {
        match self {
            EriBackend::Os => "os",
            EriBackend::Hgp => "hgp",
            EriBackend::SsssOnly => "ssss",
        }
    }
}

/// Dense block of integrals over the components of four shells, indexed
/// `[((ia * nb + ib) * nc + ic) * nd + id]` with canonical component
/// positions.
#[derive(Debug, Clone, PartialEq)]
pub struct EriClass {
    ls: [u32; 4],
    values: Vec<f64>,
}

impl EriClass {
    /// Panics if `values` does not hold one entry per component quadruple.
    pub fn new(ls: [u32; 4], values: Vec<f64>) -> Self {
        assert_eq!(values.len(), class_size(ls), "class block size");
        EriClass { ls, values }
    }

    pub fn zeros(ls: [u32; 4]) -> Self {
        EriClass { ls, values: vec![0.0; class_size(ls)] }
    }

    pub fn angular_momenta(&self) -> [u32; 4] {
        self.ls
    }

    pub fn dims(&self) -> [usize; 4] {
        self.ls.map(shell_size)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index(&self, k: [usize; 4]) -> usize {
        let d = self.dims();
        ((k[0] * d[1] + k[1]) * d[2] + k[2]) * d[3] + k[3]
    }

    pub fn get(&self, k: [usize; 4]) -> f64 {
        self.values[self.index(k)]
    }

    /// Value for the given component indices.
    pub fn component(&self, n: [AngularIndex; 4]) -> f64 {
        self.get(n.map(|x| x.shell_position()))
    }

    /// Largest absolute value in the block.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| if abs(*v) > m { abs(*v) } else { m })
    }

    fn add_scaled(&mut self, other: &EriClass, scale: f64) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += scale * b;
        }
    }
}

/// Number of integrals in a class, the product of the four shell sizes.
pub fn class_size(ls: [u32; 4]) -> usize {
    ls.iter().map(|&l| shell_size(l)).product()
}

/// `[e0|f0]^(0)` for every `e` with `l(e) <= e_max` and every `f` with
/// `l(f) <= f_max`, both in cumulative order.
#[derive(Debug, Clone, PartialEq)]
pub struct VrrTable {
    e_max: u32,
    f_max: u32,
    values: Vec<f64>,
}

impl VrrTable {
    pub fn zeros(e_max: u32, f_max: u32) -> Self {
        VrrTable { e_max, f_max, values: vec![0.0; cumulative_count(e_max) * cumulative_count(f_max)] }
    }

    pub fn e_max(&self) -> u32 {
        self.e_max
    }

    pub fn f_max(&self) -> u32 {
        self.f_max
    }

    pub fn get(&self, e: AngularIndex, f: AngularIndex) -> f64 {
        self.values[e.cumulative_position() * cumulative_count(self.f_max) + f.cumulative_position()]
    }

    /// `self += scale * other`; both tables must have the same extent.
    pub fn add_scaled(&mut self, other: &VrrTable, scale: f64) {
        debug_assert!(self.e_max == other.e_max && self.f_max == other.f_max);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += scale * b;
        }
    }
}

/// Vertical recursion from Boys values; see [`os_vrr_from_base`].
pub fn os_vrr_class(geom: &QuartetGeometry, e_max: u32, f_max: u32, boys: &Boys) -> VrrTable {
    let base = geom.base_values((e_max + f_max) as usize, boys);
    os_vrr_from_base(geom, e_max, f_max, &base)
}

/// Builds the `[e0|f0]` pyramid bottom-up from supplied base values
/// `[00|00]^(m)`, `m = 0..=e_max + f_max`.
///
/// The bra column (`f = 0`) uses
/// `[e+1_i,0|00]^(m) = PA_i [e]^(m) + WP_i [e]^(m+1)
///   + e_i/(2 zeta) ([e-1_i]^(m) - rho/zeta [e-1_i]^(m+1))`,
/// then every ket level uses the analogous relation on `C` with the
/// extra coupling `e_i / (2 (zeta + eta)) [e-1_i,0|f0]^(m+1)`.
pub fn os_vrr_from_base(geom: &QuartetGeometry, e_max: u32, f_max: u32, base: &[f64]) -> VrrTable {
    let l = e_max + f_max;
    let width = (l + 1) as usize;
    assert!(base.len() >= width, "need base values up to m = e_max + f_max");
    let es = cumulative_components(e_max);
    let fs = cumulative_components(f_max);
    let (ne, nf) = (es.len(), fs.len());
    let at = |ie: usize, jf: usize, m: usize| (ie * nf + jf) * width + m;
    let mut t = vec![0.0; ne * nf * width];
    t[..width].copy_from_slice(&base[..width]);

    let inv2z = 0.5 / geom.zeta;
    let inv2e = 0.5 / geom.eta;
    let inv2s = 0.5 / (geom.zeta + geom.eta);
    let rz = geom.rho / geom.zeta;
    let re = geom.rho / geom.eta;

    for e in es.iter().skip(1) {
        let axis = first_axis(e);
        let i = axis as usize;
        let e1 = lower(e, axis);
        let ie = e.cumulative_position();
        let i1 = e1.cumulative_position();
        let n1 = e1.get(axis);
        for m in 0..=(l - e.l()) as usize {
            let mut v = geom.pa[i] * t[at(i1, 0, m)] + geom.wp[i] * t[at(i1, 0, m + 1)];
            if n1 > 0 {
                let i2 = lower(&e1, axis).cumulative_position();
                v += n1 as f64 * inv2z * (t[at(i2, 0, m)] - rz * t[at(i2, 0, m + 1)]);
            }
            t[at(ie, 0, m)] = v;
        }
    }

    for f in fs.iter().skip(1) {
        let axis = first_axis(f);
        let j = axis as usize;
        let f1 = lower(f, axis);
        let jf = f.cumulative_position();
        let j1 = f1.cumulative_position();
        let n1 = f1.get(axis);
        let j2 = if n1 > 0 { Some(lower(&f1, axis).cumulative_position()) } else { None };
        for e in &es {
            let ie = e.cumulative_position();
            let ne_i = e.get(axis);
            let ie1 = if ne_i > 0 { Some(lower(e, axis).cumulative_position()) } else { None };
            let top = l as i64 - e.l() as i64 - f.l() as i64;
            for m in 0..=top.max(-1) as usize {
                if top < 0 {
                    break;
                }
                let mut v = geom.qc[j] * t[at(ie, j1, m)] + geom.wq[j] * t[at(ie, j1, m + 1)];
                if let Some(j2) = j2 {
                    v += n1 as f64 * inv2e * (t[at(ie, j2, m)] - re * t[at(ie, j2, m + 1)]);
                }
                if let Some(ie1) = ie1 {
                    v += ne_i as f64 * inv2s * t[at(ie1, j1, m + 1)];
                }
                t[at(ie, jf, m)] = v;
            }
        }
    }

    let values = (0..ne * nf).map(|k| t[k * width]).collect();
    VrrTable { e_max, f_max, values }
}

fn first_axis(n: &AngularIndex) -> Axis {
    n.first_nonzero_axis().expect("non-zero angular index")
}

fn lower(n: &AngularIndex, axis: Axis) -> AngularIndex {
    n.lowered(axis).expect("positive component")
}

/// Moves angular momentum from `e` to `b` and from `f` to `d`:
/// `(a, b+1_i| = (a+1_i, b| + AB_i (a, b|` and its ket analogue with `CD`.
///
/// The table must reach `e_max >= la + lb` and `f_max >= lc + ld`.
pub fn hrr_transfer(table: &VrrTable, ab: &Vec3, cd: &Vec3, ls: [u32; 4]) -> EriClass {
    let [la, lb, lc, ld] = ls;
    assert!(table.e_max >= la + lb && table.f_max >= lc + ld, "table does not cover the target class");
    let nf = cumulative_count(table.f_max);
    let bra = hrr::transfer(&table.values, nf, la, lb, ab);
    let nab = shell_size(la) * shell_size(lb);
    let ncd = shell_size(lc) * shell_size(ld);
    let mut values = Vec::with_capacity(nab * ncd);
    for row in bra.chunks(nf).take(nab) {
        values.extend(hrr::transfer(row, 1, lc, ld, cd));
    }
    EriClass::new(ls, values)
}

/// Primitive class through the vertical and horizontal relations.
pub fn hgp_primitive_class(geom: &QuartetGeometry, ls: [u32; 4], boys: &Boys) -> EriClass {
    let table = os_vrr_class(geom, ls[0] + ls[1], ls[2] + ls[3], boys);
    hrr_transfer(&table, &geom.ab, &geom.cd, ls)
}

/// Primitive class by the Obara-Saika route; see [`os_full_class_from_base`].
pub fn os_full_class(geom: &QuartetGeometry, ls: [u32; 4], boys: &Boys) -> EriClass {
    let base = geom.base_values(ls.iter().sum::<u32>() as usize, boys);
    os_full_class_from_base(geom, ls, &base)
}

/// Primitive class from supplied base values `[00|00]^(m)`.
///
/// Each `[e0|f0]^(m)` is evaluated on demand by the four-center relation
/// for raising `A`,
/// `[a+1_i,b|cd]^(m) = PA_i [ab|cd]^(m) + WP_i [ab|cd]^(m+1)
///   + a_i/(2 zeta) ([a-1_i,b|cd]^(m) - rho/zeta [a-1_i,b|cd]^(m+1))
///   + b_i/(2 zeta) (...) + c_i/(2(zeta+eta)) [ab|c-1_i,d]^(m+1) + d_i/(2(zeta+eta)) (...)`,
/// where the `b` and `d` terms vanish because those centers carry no
/// angular momentum at this stage; `C` is raised by the mirror relation
/// once `a` is exhausted. Results are memoized within the quartet.
pub fn os_full_class_from_base(geom: &QuartetGeometry, ls: [u32; 4], base: &[f64]) -> EriClass {
    let table = os_pyramid(geom, ls[0] + ls[1], ls[2] + ls[3], base);
    hrr_transfer(&table, &geom.ab, &geom.cd, ls)
}

fn os_pyramid(geom: &QuartetGeometry, e_max: u32, f_max: u32, base: &[f64]) -> VrrTable {
    let mut rec = OsRecursion::new(geom, e_max, f_max, base);
    let es = cumulative_components(e_max);
    let fs = cumulative_components(f_max);
    let mut values = Vec::with_capacity(es.len() * fs.len());
    for e in &es {
        for f in &fs {
            values.push(rec.value(*e, *f, 0));
        }
    }
    VrrTable { e_max, f_max, values }
}

struct OsRecursion<'a> {
    geom: &'a QuartetGeometry,
    base: &'a [f64],
    nf: usize,
    width: usize,
    memo: Vec<f64>,
}

impl<'a> OsRecursion<'a> {
    fn new(geom: &'a QuartetGeometry, e_max: u32, f_max: u32, base: &'a [f64]) -> Self {
        let width = (e_max + f_max + 1) as usize;
        assert!(base.len() >= width, "need base values up to m = e_max + f_max");
        let (ne, nf) = (cumulative_count(e_max), cumulative_count(f_max));
        OsRecursion { geom, base, nf, width, memo: vec![f64::NAN; ne * nf * width] }
    }

    fn value(&mut self, e: AngularIndex, f: AngularIndex, m: usize) -> f64 {
        if e.l() == 0 && f.l() == 0 {
            return self.base[m];
        }
        let key = (e.cumulative_position() * self.nf + f.cumulative_position()) * self.width + m;
        let cached = self.memo[key];
        if !cached.is_nan() {
            return cached;
        }
        let g = self.geom;
        let v = if e.l() > 0 {
            self.raise(e, f, m, true, g.pa, g.wp, g.zeta)
        } else {
            self.raise(f, e, m, false, g.qc, g.wq, g.eta)
        };
        self.memo[key] = v;
        v
    }

    /// One step of the relation raising `x` (bra if `bra`, else ket) with
    /// `y` the other electron's index.
    #[allow(clippy::too_many_arguments)]
    fn raise(
        &mut self,
        x: AngularIndex,
        y: AngularIndex,
        m: usize,
        bra: bool,
        shift: Vec3,
        wshift: Vec3,
        sigma: f64,
    ) -> f64 {
        let axis = first_axis(&x);
        let i = axis as usize;
        let x1 = lower(&x, axis);
        let pair = |s: &mut Self, xx: AngularIndex, yy: AngularIndex, mm: usize| {
            if bra {
                s.value(xx, yy, mm)
            } else {
                s.value(yy, xx, mm)
            }
        };
        let mut v = shift[i] * pair(self, x1, y, m) + wshift[i] * pair(self, x1, y, m + 1);
        let nx = x1.get(axis);
        if nx > 0 {
            let x2 = lower(&x1, axis);
            let ratio = self.geom.rho / sigma;
            v += nx as f64 / (2.0 * sigma) * (pair(self, x2, y, m) - ratio * pair(self, x2, y, m + 1));
        }
        let ny = y.get(axis);
        if ny > 0 {
            let y1 = lower(&y, axis);
            v += ny as f64 / (2.0 * (self.geom.zeta + self.geom.eta)) * pair(self, x1, y1, m + 1);
        }
        v
    }
}

/// Contracted, normalized class for four shells.
pub fn compute_class_contracted(
    shells: [&ContractedShell; 4],
    backend: EriBackend,
    boys: &Boys,
) -> Result<EriClass, Error> {
    let ls = shells.map(|s| s.l());
    let [a, b, c, d] = shells;
    let mut class = match backend {
        EriBackend::SsssOnly => {
            if ls.iter().any(|&l| l > 0) {
                return Err(Error::BackendUnsupported("the ssss backend only handles s shells"));
            }
            let mut sum = 0.0;
            for_each_primitive_quartet(shells, |geom, coef| sum += coef * eri_ssss(geom, boys));
            EriClass::new(ls, vec![sum])
        }
        EriBackend::Os => {
            let mut acc = EriClass::zeros(ls);
            for_each_primitive_quartet(shells, |geom, coef| acc.add_scaled(&os_full_class(geom, ls, boys), coef));
            acc
        }
        EriBackend::Hgp => {
            let (e_max, f_max) = (ls[0] + ls[1], ls[2] + ls[3]);
            let mut acc = VrrTable::zeros(e_max, f_max);
            for_each_primitive_quartet(shells, |geom, coef| {
                acc.add_scaled(&os_vrr_class(geom, e_max, f_max, boys), coef)
            });
            let ab = sub(a.center(), b.center());
            let cd = sub(c.center(), d.center());
            hrr_transfer(&acc, &ab, &cd, ls)
        }
    };
    apply_component_scales(&mut class, shells);
    Ok(class)
}

fn for_each_primitive_quartet(shells: [&ContractedShell; 4], mut f: impl FnMut(&QuartetGeometry, f64)) {
    let [a, b, c, d] = shells;
    let kets: Vec<(GaussianPair, f64)> = pairs(c, d);
    for (bra, cab) in pairs(a, b) {
        for (ket, ccd) in &kets {
            let geom = QuartetGeometry::from_pairs(&bra, ket);
            f(&geom, cab * ccd);
        }
    }
}

fn pairs(a: &ContractedShell, b: &ContractedShell) -> Vec<(GaussianPair, f64)> {
    let mut out = Vec::with_capacity(a.num_primitives() * b.num_primitives());
    for (&alpha, &ca) in a.exponents().iter().zip(a.radial_coefficients()) {
        for (&beta, &cb) in b.exponents().iter().zip(b.radial_coefficients()) {
            out.push((GaussianPair::new(alpha, a.center(), beta, b.center()), ca * cb));
        }
    }
    out
}

fn apply_component_scales(class: &mut EriClass, shells: [&ContractedShell; 4]) {
    let [sa, sb, sc, sd] = shells.map(|s| s.component_scales());
    let mut k = 0;
    for &x in sa {
        for &y in sb {
            let xy = x * y;
            for &z in sc {
                let xyz = xy * z;
                for &w in sd {
                    class.values[k] *= xyz * w;
                    k += 1;
                }
            }
        }
    }
}

/// Magnitude estimate for a contracted shell quartet:
/// `sum |c_a c_b c_c c_d| C0 M_ab M_cd`, with `C0` the `(ss|ss)` prefactor
/// and `M` the polynomial moment factors of each pair, times the largest
/// component scales.
pub fn quartet_bound(shells: [&ContractedShell; 4]) -> f64 {
    let [a, b, c, d] = shells;
    let bra = pair_bounds(a, b);
    let ket = pair_bounds(c, d);
    let mut sum = 0.0;
    for &(zeta, x) in &bra {
        for &(eta, y) in &ket {
            sum += x * y / (zeta * eta * sqrt(zeta + eta));
        }
    }
    let scale: f64 =
        shells.iter().map(|s| s.component_scales().iter().fold(0.0f64, |m, &v| if v > m { v } else { m })).product();
    two_pi_five_halves() * sum * scale
}

fn pair_bounds(a: &ContractedShell, b: &ContractedShell) -> Vec<(f64, f64)> {
    pairs(a, b).iter().map(|(p, c)| (p.gamma, abs(*c) * p.prefactor * moment_factor(p, a.l(), b.l()))).collect()
}

/// Shell quartets `(sa, sb, sc, sd)` with `sa >= sb`, `sc >= sd` and
/// `pair(sa, sb) >= pair(sc, sd)`, in increasing compound order.
pub fn canonical_shell_quartets(num_shells: usize) -> Vec<[usize; 4]> {
    let pairs: Vec<(usize, usize)> = (0..num_shells).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(pairs.len() * (pairs.len() + 1) / 2);
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[..=p] {
            out.push([a, b, c, d]);
        }
    }
    out
}

#[inline]
fn pair_index(i: u64, j: u64) -> u64 {
    i * (i + 1) / 2 + j
}

/// Whether `(i, j, k, l)` satisfies `i >= j`, `k >= l`, `(ij) >= (kl)`.
pub fn is_canonical(idx: [u32; 4]) -> bool {
    let [i, j, k, l] = idx.map(u64::from);
    i >= j && k >= l && pair_index(i, j) >= pair_index(k, l)
}

/// Representative of the 8-fold permutation orbit of `(i, j, k, l)`.
pub fn canonicalize(idx: [u32; 4]) -> [u32; 4] {
    let [i, j, k, l] = idx;
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    if pair_index(i as u64, j as u64) >= pair_index(k as u64, l as u64) {
        [i, j, k, l]
    } else {
        [k, l, i, j]
    }
}

/// Compound index `(ij)(ij+1)/2 + (kl)` of a canonical quadruple; sorting
/// by it is the output order.
pub fn compound_index(idx: [u32; 4]) -> u64 {
    let [i, j, k, l] = idx.map(u64::from);
    let (ij, kl) = (pair_index(i, j), pair_index(k, l));
    pair_index(ij, kl)
}

/// Number of canonical quadruples for `n` basis functions.
pub fn unique_count(n: usize) -> usize {
    let pairs = n * (n + 1) / 2;
    pairs * (pairs + 1) / 2
}

/// One canonical integral, 0-based function indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EriRecord {
    pub indices: [u32; 4],
    pub value: f64,
}

/// Canonical integral list with quartet bookkeeping.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EriList {
    /// Sorted by [`compound_index`]; each canonical quadruple at most once.
    pub records: Vec<EriRecord>,
    pub quartets_computed: usize,
    pub quartets_screened: usize,
}

/// The 8 index permutations that leave an integral unchanged.
fn permutations(idx: [u32; 4]) -> [[u32; 4]; 8] {
    let [i, j, k, l] = idx;
    [[i, j, k, l], [j, i, k, l], [i, j, l, k], [j, i, l, k], [k, l, i, j], [l, k, i, j], [k, l, j, i], [l, k, j, i]]
}

/// Appends one record per permutation orbit met in the class for shell
/// quartet `q`, under the orbit's canonical indices.
///
/// An orbit can be met inside a class only at non-canonical positions: in
/// `(p s | p s')` with two different s shells, `(i j | k l)` with `k > i`
/// is canonical only as `(k l | i j)`, which lies in the non-canonical
/// quartet `(p s' | p s)`. Each orbit is therefore emitted from the first of
/// its members that lies in the class. Permuted classes hold the same
/// orbits, so every orbit is emitted exactly once over the canonical shell
/// quartets.
pub fn collect_class(basis: &Basis, q: [usize; 4], class: &EriClass, out: &mut Vec<EriRecord>) {
    let offs = q.map(|s| basis.offsets()[s] as u32);
    let d = class.dims();
    let inside = |idx: &[u32; 4]| (0..4).all(|x| idx[x] >= offs[x] && idx[x] < offs[x] + d[x] as u32);
    let mut k = 0;
    for ia in 0..d[0] {
        for ib in 0..d[1] {
            for ic in 0..d[2] {
                for id in 0..d[3] {
                    let idx = [offs[0] + ia as u32, offs[1] + ib as u32, offs[2] + ic as u32, offs[3] + id as u32];
                    let first = permutations(idx).into_iter().filter(|p| inside(p)).min().unwrap_or(idx);
                    if first == idx {
                        out.push(EriRecord { indices: canonicalize(idx), value: class.values[k] });
                    }
                    k += 1;
                }
            }
        }
    }
}

/// Sorts records into output order.
pub fn sort_records(records: &mut [EriRecord]) {
    records.sort_by_key(|r| compound_index(r.indices));
}

/// Every unique integral of the basis, skipping quartets whose
/// [`quartet_bound`] falls below `threshold`. A threshold of zero keeps
/// every quartet.
pub fn compute_all(basis: &Basis, backend: EriBackend, threshold: f64, boys: &Boys) -> Result<EriList, Error> {
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::InvalidConfig("screening threshold must be finite and non-negative"));
    }
    let shells = basis.shells();
    let mut list = EriList::default();
    for q in canonical_shell_quartets(shells.len()) {
        let quartet = q.map(|s| &shells[s]);
        if quartet_bound(quartet) < threshold {
            list.quartets_screened += 1;
            continue;
        }
        let class = compute_class_contracted(quartet, backend, boys)?;
        collect_class(basis, q, &class, &mut list.records);
        list.quartets_computed += 1;
    }
    sort_records(&mut list.records);
    Ok(list)
}
