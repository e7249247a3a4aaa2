//! The Boys function `F_m(T) = int_0^1 t^{2m} exp(-T t^2) dt`.
//!
//! Small and moderate `T` use the convergent series for the highest order
//! followed by downward recursion
//! `F_m = (2T F_{m+1} + e^{-T}) / (2m+1)`. Large `T` (at least
//! `t_switch` and at least `2 m_max`) start from the error-function closed
//! form of `F_0` and recurse upward, which is stable there because every
//! step multiplies the error by `(2m+1)/(2T) < 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::num::{erf, exp, sqrt};
use crate::Error;

/// Default switch point between the series and the large-`T` branch.
pub const DEFAULT_T_SWITCH: f64 = 30.0;
/// Default relative size of the last series term kept.
pub const DEFAULT_SERIES_TOLERANCE: f64 = 1e-17;
/// Largest `t_switch` accepted; the series overflows well beyond it.
pub const MAX_T_SWITCH: f64 = 200.0;

/// Evaluation settings for the Boys function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boys {
    t_switch: f64,
    tolerance: f64,
}

impl Default for Boys {
    fn default() -> Self {
        Boys { t_switch: DEFAULT_T_SWITCH, tolerance: DEFAULT_SERIES_TOLERANCE }
    }
}

impl Boys {
    /// Custom settings. `t_switch` must lie in `[0, MAX_T_SWITCH]` and
    /// `tolerance` in `(0, 1e-12]`.
    pub fn new(t_switch: f64, tolerance: f64) -> Result<Self, Error> {
        if !(0.0..=MAX_T_SWITCH).contains(&t_switch) {
            return Err(Error::InvalidConfig("Boys t_switch outside [0, 200]"));
        }
        if !(tolerance > 0.0 && tolerance <= 1e-12) {
            return Err(Error::InvalidConfig("Boys series tolerance outside (0, 1e-12]"));
        }
        Ok(Boys { t_switch, tolerance })
    }

    pub fn with_t_switch(t_switch: f64) -> Result<Self, Error> {
        Self::new(t_switch, DEFAULT_SERIES_TOLERANCE)
    }

    pub fn t_switch(&self) -> f64 {
        self.t_switch
    }

    /// `F_0(T) .. F_{m_max}(T)`.
    pub fn table(&self, m_max: usize, t: f64) -> Result<BoysTable, Error> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::BoysDomain(t));
        }
        let mut values = vec![0.0; m_max + 1];
        self.fill(t, &mut values);
        Ok(BoysTable { t, values })
    }

    /// Writes `F_0(T) .. F_{len-1}(T)` into `out`. `t` must be finite and
    /// non-negative; `out` must not be empty.
    pub fn fill(&self, t: f64, out: &mut [f64]) {
        debug_assert!(t.is_finite() && t >= 0.0);
        let m_max = out.len() - 1;
        if t == 0.0 {
            for (m, v) in out.iter_mut().enumerate() {
                *v = 1.0 / (2 * m + 1) as f64;
            }
            return;
        }
        let e = exp(-t);
        if t >= self.t_switch && t >= 2.0 * m_max as f64 && t >= 1.0 {
            let st = sqrt(t);
            out[0] = 0.5 * sqrt(PI) / st * erf(st);
            for m in 0..m_max {
                out[m + 1] = ((2 * m + 1) as f64 * out[m] - e) / (2.0 * t);
            }
        } else {
            out[m_max] = self.series(m_max, t) * e;
            for m in (0..m_max).rev() {
                out[m] = (2.0 * t * out[m + 1] + e) / (2 * m + 1) as f64;
            }
        }
    }

    /// `sum_k (2T)^k / ((2m+1)(2m+3)...(2m+2k+1))`.
    fn series(&self, m: usize, t: f64) -> f64 {
        let mut term = 1.0 / (2 * m + 1) as f64;
        let mut sum = term;
        let mut k = 0usize;
        loop {
            k += 1;
            term *= 2.0 * t / (2 * m + 2 * k + 1) as f64;
            sum += term;
            // terms decrease once 2m+2k+1 > 2T
            if term < self.tolerance * sum && (2 * m + 2 * k + 1) as f64 > 2.0 * t {
                break;
            }
        }
        sum
    }
}

/// `F_0(T) .. F_{m_max}(T)` with the default settings.
pub fn boys(m_max: usize, t: f64) -> Result<BoysTable, Error> {
    Boys::default().table(m_max, t)
}

/// Boys function values `F_0(T)..F_{m_max}(T)` at one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BoysTable {
    t: f64,
    values: Vec<f64>,
}

impl BoysTable {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, m: usize) -> f64 {
        self.values[m]
    }

    pub fn m_max(&self) -> usize {
        self.values.len() - 1
    }
}
