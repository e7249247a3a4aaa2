//! Rys quadrature: Gauss rules for the weight `exp(-T t^2)` on `[0, 1]`.
//!
//! With `u = t^2` the weight becomes a measure on `[0, 1]` whose moments
//! are exactly the Boys values, `int u^k dmu = F_k(T)`. The rule is built
//! from those moments with the Chebyshev algorithm (recurrence
//! coefficients of the orthonormal polynomials), the Jacobi matrix is
//! diagonalized, and nodes are mapped back by `t_i = sqrt(u_i)`. An
//! `n`-point rule integrates `u^m` exactly for `m <= 2n - 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::boys::Boys;
use crate::eri::QuartetGeometry;
use crate::linalg::tridiagonal_eigen;
use crate::num::sqrt;
use crate::Error;

/// Largest supported number of points.
pub const MAX_POINTS: usize = 10;

/// Nodes and weights of an `n`-point Rys rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RysRule {
    t: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RysRule {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// The Boys argument `T`.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Nodes `t_i` in `(0, 1)`, increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_i W_i t_i^{2m}`, which equals `F_m(T)` for `m <= 2n - 1`.
    pub fn moment(&self, m: u32) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * crate::num::powi(t * t, m)).sum()
    }
}

/// `n`-point rule at `T` with default Boys settings.
pub fn rys_rule(n: usize, t: f64) -> Result<RysRule, Error> {
    rys_rule_with(n, t, &Boys::default())
}

pub fn rys_rule_with(n: usize, t: f64, boys: &Boys) -> Result<RysRule, Error> {
    if !(1..=MAX_POINTS).contains(&n) {
        return Err(Error::OutOfRange { what: "Rys point count", value: n as i64, min: 1, max: MAX_POINTS as i64 });
    }
    let moments = boys.table(2 * n - 1, t)?;
    let (alpha, beta) = chebyshev(moments.values(), n);
    let off: Vec<f64> = beta[1..].iter().map(|&b| sqrt(b)).collect();
    let (u, first) = tridiagonal_eigen(&alpha, &off);
    let nodes = u.iter().map(|&x| sqrt(x)).collect();
    let weights = first.iter().map(|&z| beta[0] * z * z).collect();
    Ok(RysRule { t, nodes, weights })
}

/// Recurrence coefficients `alpha_0..alpha_{n-1}`, `beta_0..beta_{n-1}`
/// (`beta_0` = total mass) from the first `2n` ordinary moments.
fn chebyshev(moments: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let len = 2 * n;
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    let mut prev = vec![0.0; len];
    let mut cur = moments[..len].to_vec();
    alpha[0] = moments[1] / moments[0];
    beta[0] = moments[0];
    for k in 1..n {
        let mut next = vec![0.0; len];
        for l in k..len - k {
            next[l] = cur[l + 1] - alpha[k - 1] * cur[l] - beta[k - 1] * prev[l];
        }
        alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
        beta[k] = next[k] / cur[k - 1];
        prev = cur;
        cur = next;
    }
    (alpha, beta)
}

/// `(ss|ss)` by one-point Rys quadrature: the polynomial factor is the
/// constant `C0`, so the integral is `C0 W_1`.
pub fn eri_ssss_via_rys(geom: &QuartetGeometry, boys: &Boys) -> f64 {
    let rule = rys_rule_with(1, geom.t, boys).expect("one-point rule at a valid argument");
    geom.prefactor() * rule.weights().iter().sum::<f64>()
}
