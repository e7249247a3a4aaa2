//! Molecular integrals over contracted Cartesian Gaussian basis functions.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! engines. File formats, threading and the command-line front end live in
//! the `gaussint` companion crate.
//!
//! ## Modules
//!
//! - [`basis`]: angular-momentum indices, shells, molecules, normalization
//! - [`gpt`]: Gaussian product theorem data for primitive pairs
//! - [`boys`]: the Boys function `F_m(T)`
//! - [`one_electron`]: overlap, kinetic and nuclear-attraction integrals
//! - [`eri`]: electron-repulsion integrals (Obara-Saika and Head-Gordon-Pople)
//! - [`rys`]: Rys quadrature nodes and weights
//! - [`oracle`]: slow reference engines used for validation
//!
//! All lengths are in bohr and all energies in hartree.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basis;
pub mod boys;
pub mod elements;
pub mod eri;
mod error;
pub mod gpt;
mod hrr;
pub mod linalg;
mod num;
pub mod one_electron;
pub mod oracle;
pub mod rys;

pub use error::Error;

/// Highest angular momentum (g functions) supported by every engine.
pub const L_MAX: u32 = 4;

/// A point or displacement in bohr.
pub type Vec3 = [f64; 3];

#[inline]
pub(crate) fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub(crate) fn norm2(a: &Vec3) -> f64 {
    a[0] * a[0] + a[1] * a[1] + a[2] * a[2]
}
