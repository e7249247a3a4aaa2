//! One-electron integrals: overlap `S`, kinetic energy `T` and nuclear
//! attraction `V`.
//!
//! Overlap and kinetic integrals factor into one-dimensional overlaps
//! built from the binomial prefactors of the product theorem. Kinetic
//! integrals are available in the asymmetric form (second derivative on
//! the ket) and the symmetric form (first derivatives on both sides); the
//! symmetric one is the default. Nuclear attraction uses the one-electron
//! Obara-Saika recursion on the bra center seeded by
//! `(2 pi K / gamma) F_m(gamma |PC|^2)`, then a horizontal transfer to the
//! ket.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::basis::{
    cartesian_components, cumulative_components, cumulative_count, odd_double_factorial, shell_size, AngularIndex,
    Basis, ContractedShell, Molecule,
};
use crate::boys::Boys;
use crate::gpt::{f_k, GaussianPair};
use crate::num::{pow, powi, sqrt};
use crate::{hrr, norm2, sub, Vec3};

/// Dense symmetric matrix stored as its packed lower triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dimension: usize,
    packed: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dimension: usize) -> Self {
        SymmetricMatrix { dimension, packed: vec![0.0; dimension * (dimension + 1) / 2] }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    #[inline]
    fn index(i: usize, j: usize) -> usize {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        hi * (hi + 1) / 2 + lo
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[Self::index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.packed[Self::index(i, j)] = value;
    }

    /// Packed lower triangle, row by row: `(0,0), (1,0), (1,1), (2,0), ...`.
    pub fn packed(&self) -> &[f64] {
        &self.packed
    }

    /// Writes a `rows x cols` row-major block at `(row0, col0)`.
    /// Only elements on or below the diagonal are stored.
    pub fn set_block(&mut self, row0: usize, col0: usize, cols: usize, block: &[f64]) {
        for (k, &v) in block.iter().enumerate() {
            let (i, j) = (row0 + k / cols, col0 + k % cols);
            if i >= j {
                self.set(i, j, v);
            }
        }
    }
}

/// One-dimensional overlap `int (x-A)^l1 (x-B)^l2 exp(-gamma x_P^2) dx`
/// (without the prefactor `K`), keeping only even powers of `x_P`.
pub fn overlap_1d(l1: u32, l2: u32, pa: f64, pb: f64, gamma: f64) -> f64 {
    let mut sum = 0.0;
    for i in 0..=(l1 + l2) / 2 {
        sum += f_k(2 * i, l1, l2, pa, pb) * odd_double_factorial(i) / powi(2.0 * gamma, i);
    }
    sum * sqrt(PI / gamma)
}

/// Overlap of two unnormalized s primitives, `K (pi/gamma)^{3/2}`.
pub fn overlap_prim_ss(pair: &GaussianPair) -> f64 {
    pair.prefactor * pow(PI / pair.gamma, 1.5)
}

/// Overlap of two unnormalized primitives.
pub fn overlap_prim(pair: &GaussianPair, n1: AngularIndex, n2: AngularIndex) -> f64 {
    let (a, b) = (n1.as_array(), n2.as_array());
    let mut v = pair.prefactor;
    for d in 0..3 {
        v *= overlap_1d(a[d], b[d], pair.pa[d], pair.pb[d], pair.gamma);
    }
    v
}

/// One-dimensional overlap that vanishes for negative indices.
#[inline]
fn s1(l1: i64, l2: i64, pa: f64, pb: f64, gamma: f64) -> f64 {
    if l1 < 0 || l2 < 0 {
        0.0
    } else {
        overlap_1d(l1 as u32, l2 as u32, pa, pb, gamma)
    }
}

/// Kinetic energy from `-1/2 d^2/dx^2` applied to the ket, a sum of three
/// overlaps per direction with the ket index shifted by 0, +2 and -2.
pub fn kinetic_prim_asym(pair: &GaussianPair, n1: AngularIndex, n2: AngularIndex, alpha2: f64) -> f64 {
    let (a, b) = (n1.as_array(), n2.as_array());
    let g = pair.gamma;
    let s: [f64; 3] = core::array::from_fn(|d| s1(a[d] as i64, b[d] as i64, pair.pa[d], pair.pb[d], g));
    let mut total = 0.0;
    for d in 0..3 {
        let (l1, l2) = (a[d] as i64, b[d] as i64);
        let (pa, pb) = (pair.pa[d], pair.pb[d]);
        let t = alpha2 * (2 * l2 + 1) as f64 * s[d]
            - 2.0 * alpha2 * alpha2 * s1(l1, l2 + 2, pa, pb, g)
            - 0.5 * (l2 * (l2 - 1)) as f64 * s1(l1, l2 - 2, pa, pb, g);
        total += t * s[(d + 1) % 3] * s[(d + 2) % 3];
    }
    pair.prefactor * total
}

/// Kinetic energy as `1/2 <grad a | grad b>`; symmetric under exchanging
/// the two functions.
pub fn kinetic_prim_sym(pair: &GaussianPair, n1: AngularIndex, n2: AngularIndex, alpha1: f64, alpha2: f64) -> f64 {
    let (a, b) = (n1.as_array(), n2.as_array());
    let g = pair.gamma;
    let s: [f64; 3] = core::array::from_fn(|d| s1(a[d] as i64, b[d] as i64, pair.pa[d], pair.pb[d], g));
    let mut total = 0.0;
    for d in 0..3 {
        let (l1, l2) = (a[d] as i64, b[d] as i64);
        let (pa, pb) = (pair.pa[d], pair.pb[d]);
        let mut t = 2.0 * alpha1 * alpha2 * s1(l1 + 1, l2 + 1, pa, pb, g);
        if l1 > 0 && l2 > 0 {
            t += 0.5 * (l1 * l2) as f64 * s1(l1 - 1, l2 - 1, pa, pb, g);
        }
        if l2 > 0 {
            t -= alpha1 * l2 as f64 * s1(l1 + 1, l2 - 1, pa, pb, g);
        }
        if l1 > 0 {
            t -= alpha2 * l1 as f64 * s1(l1 - 1, l2 + 1, pa, pb, g);
        }
        total += t * s[(d + 1) % 3] * s[(d + 2) % 3];
    }
    pair.prefactor * total
}

/// `<a| 1/r_C |b>` for two unnormalized s primitives,
/// `(2 pi K / gamma) F_0(gamma |PC|^2)`.
pub fn nuclear_prim_ss(pair: &GaussianPair, c: &Vec3, boys: &Boys) -> f64 {
    let pc = sub(&pair.center, c);
    let mut f = [0.0];
    boys.fill(pair.gamma * norm2(&pc), &mut f);
    2.0 * PI * pair.prefactor / pair.gamma * f[0]
}

/// `<a| 1/r_C |b>` for every component pair of shells `la`, `lb`
/// (unnormalized primitives), row-major over canonical positions.
pub fn nuclear_prim_block(pair: &GaussianPair, la: u32, lb: u32, c: &Vec3, boys: &Boys) -> Vec<f64> {
    let l = la + lb;
    let width = (l + 1) as usize;
    let pc = sub(&pair.center, c);
    let mut table = vec![0.0; cumulative_count(l) * width];
    boys.fill(pair.gamma * norm2(&pc), &mut table[..width]);
    let base = 2.0 * PI * pair.prefactor / pair.gamma;
    for v in &mut table[..width] {
        *v *= base;
    }
    let inv2g = 0.5 / pair.gamma;
    for e in cumulative_components(l).into_iter().skip(1) {
        let axis = e.first_nonzero_axis().unwrap_or(crate::basis::Axis::X);
        let i = axis as usize;
        let prev = e.lowered(axis).unwrap_or(e);
        let (ie, ip) = (e.cumulative_position(), prev.cumulative_position());
        let ni = prev.get(axis);
        let ipp = prev.lowered(axis).map(|x| x.cumulative_position()).ok();
        for m in 0..=(l - e.l()) as usize {
            let mut v = pair.pa[i] * table[ip * width + m] - pc[i] * table[ip * width + m + 1];
            if let Some(ipp) = ipp {
                v += ni as f64 * inv2g * (table[ipp * width + m] - table[ipp * width + m + 1]);
            }
            table[ie * width + m] = v;
        }
    }
    // keep the m = 0 column only
    let ne = cumulative_count(l);
    let zeroth: Vec<f64> = (0..ne).map(|e| table[e * width]).collect();
    hrr::transfer(&zeroth, 1, la, lb, &pair.ab)
}

/// `<a| 1/r_C |b>` for one component pair.
pub fn nuclear_prim(pair: &GaussianPair, n1: AngularIndex, n2: AngularIndex, c: &Vec3, boys: &Boys) -> f64 {
    let block = nuclear_prim_block(pair, n1.l(), n2.l(), c, boys);
    block[n1.shell_position() * shell_size(n2.l()) + n2.shell_position()]
}

/// Overlap between component `ka` of shell `a` and component `kb` of shell `b`.
pub fn overlap_contracted(a: &ContractedShell, ka: usize, b: &ContractedShell, kb: usize) -> f64 {
    let (na, nb) = (cartesian_components(a.l())[ka], cartesian_components(b.l())[kb]);
    let mut sum = 0.0;
    for (&ea, &ca) in a.exponents().iter().zip(a.radial_coefficients()) {
        for (&eb, &cb) in b.exponents().iter().zip(b.radial_coefficients()) {
            let pair = GaussianPair::new(ea, a.center(), eb, b.center());
            sum += ca * cb * overlap_prim(&pair, na, nb);
        }
    }
    sum * a.component_scale(ka) * b.component_scale(kb)
}

/// Which one-electron operator a block holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Overlap,
    Kinetic,
    /// `-sum_C Z_C / r_C`.
    Nuclear,
}

/// Contracted `S`, `T` and `V` blocks for one shell pair, each row-major
/// `a.size() x b.size()`.
pub fn shell_pair_blocks(
    a: &ContractedShell,
    b: &ContractedShell,
    nuclei: &[(f64, Vec3)],
    boys: &Boys,
) -> [Vec<f64>; 3] {
    let ca = a.components();
    let cb = b.components();
    let (na, nb) = (ca.len(), cb.len());
    let mut s = vec![0.0; na * nb];
    let mut t = vec![0.0; na * nb];
    let mut v = vec![0.0; na * nb];
    for (&ea, &da) in a.exponents().iter().zip(a.radial_coefficients()) {
        for (&eb, &db) in b.exponents().iter().zip(b.radial_coefficients()) {
            let pair = GaussianPair::new(ea, a.center(), eb, b.center());
            let w = da * db;
            for (i, &n1) in ca.iter().enumerate() {
                for (j, &n2) in cb.iter().enumerate() {
                    s[i * nb + j] += w * overlap_prim(&pair, n1, n2);
                    t[i * nb + j] += w * kinetic_prim_sym(&pair, n1, n2, ea, eb);
                }
            }
            for &(z, c) in nuclei {
                let block = nuclear_prim_block(&pair, a.l(), b.l(), &c, boys);
                for (acc, x) in v.iter_mut().zip(&block) {
                    *acc -= w * z * x;
                }
            }
        }
    }
    for i in 0..na {
        for j in 0..nb {
            let f = a.component_scale(i) * b.component_scale(j);
            s[i * nb + j] *= f;
            t[i * nb + j] *= f;
            v[i * nb + j] *= f;
        }
    }
    [s, t, v]
}

/// Overlap, kinetic and nuclear-attraction matrices over a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OneElectronMatrices {
    pub overlap: SymmetricMatrix,
    pub kinetic: SymmetricMatrix,
    pub nuclear: SymmetricMatrix,
}

impl OneElectronMatrices {
    pub fn zeros(dimension: usize) -> Self {
        OneElectronMatrices {
            overlap: SymmetricMatrix::zeros(dimension),
            kinetic: SymmetricMatrix::zeros(dimension),
            nuclear: SymmetricMatrix::zeros(dimension),
        }
    }

    pub fn get(&self, op: Operator) -> &SymmetricMatrix {
        match op {
            Operator::Overlap => &self.overlap,
            Operator::Kinetic => &self.kinetic,
            Operator::Nuclear => &self.nuclear,
        }
    }

    /// Stores the blocks of shell pair `(sa, sb)`, `sa >= sb`.
    pub fn store(&mut self, basis: &Basis, sa: usize, sb: usize, blocks: &[Vec<f64>; 3]) {
        let (ra, rb) = (basis.offsets()[sa], basis.offsets()[sb]);
        let cols = basis.shells()[sb].size();
        self.overlap.set_block(ra, rb, cols, &blocks[0]);
        self.kinetic.set_block(ra, rb, cols, &blocks[1]);
        self.nuclear.set_block(ra, rb, cols, &blocks[2]);
    }
}

/// `S`, `T`, `V` over a normalized basis, shell pair by shell pair.
pub fn build_matrices(basis: &Basis, molecule: &Molecule, boys: &Boys) -> OneElectronMatrices {
    let nuclei = molecule.nuclei();
    let mut out = OneElectronMatrices::zeros(basis.dimension());
    let shells = basis.shells();
    for sa in 0..shells.len() {
        for sb in 0..=sa {
            let blocks = shell_pair_blocks(&shells[sa], &shells[sb], &nuclei, boys);
            out.store(basis, sa, sb, &blocks);
        }
    }
    out
}
