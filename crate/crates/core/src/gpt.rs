//! Gaussian product theorem.
//!
//! The product of two Gaussians on `A` and `B` is a Gaussian on the
//! composite center `P = (a A + b B) / (a + b)` times the prefactor
//! `K = exp(-a b |A-B|^2 / (a + b))`. Polynomial parts are re-expanded
//! around `P` with the binomial prefactors `f_k`, using `PA = P - A` and
//! `PB = P - B` so that `x - A_x = x_P + PA_x`.

use crate::num::{abs, exp, powi};
use crate::{norm2, sub, Error, Vec3};

/// Largest `n` for which [`binomial`] is tabulated.
pub const BINOMIAL_MAX: usize = 24;

const fn pascal() -> [[f64; BINOMIAL_MAX + 1]; BINOMIAL_MAX + 1] {
    let mut t = [[0.0; BINOMIAL_MAX + 1]; BINOMIAL_MAX + 1];
    let mut n = 0;
    while n <= BINOMIAL_MAX {
        t[n][0] = 1.0;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0.0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static PASCAL: [[f64; BINOMIAL_MAX + 1]; BINOMIAL_MAX + 1] = pascal();

/// `C(n, k)`; zero when `k > n`. Panics if `n > BINOMIAL_MAX`.
#[inline]
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        0.0
    } else {
        PASCAL[n as usize][k as usize]
    }
}

/// Composite data for a pair of primitive Gaussians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPair {
    /// `alpha1 + alpha2`.
    pub gamma: f64,
    /// Composite center `P`.
    pub center: Vec3,
    /// `exp(-alpha1 alpha2 |A-B|^2 / gamma)`.
    pub prefactor: f64,
    /// `P - A`.
    pub pa: Vec3,
    /// `P - B`.
    pub pb: Vec3,
    /// `A - B`.
    pub ab: Vec3,
    /// `|A - B|^2`.
    pub ab2: f64,
}

impl GaussianPair {
    /// Pair data for `exp(-alpha1 |r-A|^2) exp(-alpha2 |r-B|^2)`.
    ///
    /// Both exponents must be positive.
    pub fn new(alpha1: f64, a: &Vec3, alpha2: f64, b: &Vec3) -> Self {
        debug_assert!(alpha1 > 0.0 && alpha2 > 0.0);
        let gamma = alpha1 + alpha2;
        let center = [
            (alpha1 * a[0] + alpha2 * b[0]) / gamma,
            (alpha1 * a[1] + alpha2 * b[1]) / gamma,
            (alpha1 * a[2] + alpha2 * b[2]) / gamma,
        ];
        let ab = sub(a, b);
        let ab2 = norm2(&ab);
        GaussianPair {
            gamma,
            center,
            prefactor: exp(-alpha1 * alpha2 * ab2 / gamma),
            pa: sub(&center, a),
            pb: sub(&center, b),
            ab,
            ab2,
        }
    }
}

/// Same as [`GaussianPair::new`].
pub fn make_pair(alpha1: f64, a: &Vec3, alpha2: f64, b: &Vec3) -> GaussianPair {
    GaussianPair::new(alpha1, a, alpha2, b)
}

fn check_k(k: u32, l1: u32, l2: u32) -> Result<(), Error> {
    if k > l1 + l2 {
        Err(Error::OutOfRange { what: "binomial prefactor order k", value: k as i64, min: 0, max: (l1 + l2) as i64 })
    } else {
        Ok(())
    }
}

/// Coefficient of `x^k` in `(x + pa)^l1 (x + pb)^l2`, written as the
/// constrained double sum over `i + j = k`.
pub fn binomial_prefactor(k: u32, l1: u32, l2: u32, pa: f64, pb: f64) -> Result<f64, Error> {
    check_k(k, l1, l2)?;
    let mut f = 0.0;
    for i in 0..=l1 {
        for j in 0..=l2 {
            if i + j == k {
                f += binomial(l1, i) * powi(pa, l1 - i) * binomial(l2, j) * powi(pb, l2 - j);
            }
        }
    }
    Ok(f)
}

/// The same coefficient as [`binomial_prefactor`] written as a single sum
/// over `q` with `2i = k + q`, `2j = k - q`, `q` stepping by two.
pub fn binomial_prefactor_single_sum(k: u32, l1: u32, l2: u32, pa: f64, pb: f64) -> Result<f64, Error> {
    check_k(k, l1, l2)?;
    Ok(f_k(k, l1, l2, pa, pb))
}

/// Unchecked single-sum `f_k` used on the hot paths.
#[inline]
pub(crate) fn f_k(k: u32, l1: u32, l2: u32, pa: f64, pb: f64) -> f64 {
    let (k, l1, l2) = (k as i32, l1 as i32, l2 as i32);
    let lo = (-k).max(k - 2 * l2);
    let hi = k.min(2 * l1 - k);
    // smallest q >= lo with k + q even
    let mut q = if (k + lo).rem_euclid(2) == 0 { lo } else { lo + 1 };
    let mut f = 0.0;
    while q <= hi {
        let i = ((k + q) / 2) as u32;
        let j = ((k - q) / 2) as u32;
        f += binomial(l1 as u32, i) * binomial(l2 as u32, j) * powi(pa, l1 as u32 - i) * powi(pb, l2 as u32 - j);
        q += 2;
    }
    f
}

/// Product of two primitives evaluated through the expanded form
/// `K * prod_d sum_k f_k x_P^k * exp(-gamma r_P^2)`.
pub fn expanded_product(
    pair: &GaussianPair,
    n1: crate::basis::AngularIndex,
    n2: crate::basis::AngularIndex,
    r: &Vec3,
) -> f64 {
    let rp = sub(r, &pair.center);
    let mut value = pair.prefactor * exp(-pair.gamma * norm2(&rp));
    for d in 0..3 {
        let (l1, l2) = (n1.as_array()[d], n2.as_array()[d]);
        let poly: f64 = (0..=l1 + l2).map(|k| f_k(k, l1, l2, pair.pa[d], pair.pb[d]) * powi(rp[d], k)).sum();
        value *= poly;
    }
    value
}

/// Upper bound on the absolute overlap of two primitives with the given
/// angular momenta, `K (pi/gamma)^{3/2}` times a polynomial-moment factor.
pub fn overlap_bound(pair: &GaussianPair, l1: u32, l2: u32) -> f64 {
    let base = pair.prefactor * crate::num::pow(core::f64::consts::PI / pair.gamma, 1.5);
    base * moment_factor(pair, l1, l2)
}

/// `(|PA| + s)^l1 (|PB| + s)^l2` with `s = sqrt((l1 + l2) / (2 gamma))`,
/// a bound on the polynomial part measured in units of the Gaussian width.
pub fn moment_factor(pair: &GaussianPair, l1: u32, l2: u32) -> f64 {
    if l1 + l2 == 0 {
        return 1.0;
    }
    let s = crate::num::sqrt((l1 + l2) as f64 / (2.0 * pair.gamma));
    let pa = crate::num::sqrt(norm2(&pair.pa));
    let pb = crate::num::sqrt(norm2(&pair.pb));
    powi(abs(pa) + s, l1) * powi(abs(pb) + s, l2)
}
