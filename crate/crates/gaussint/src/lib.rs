//! File formats, parallel driver and self-test harness around
//! [`gaussint_core`].
//!
//! - [`basis_file`]: Gaussian94 basis-set files and the bundled STO-3G set
//! - [`molecule_file`]: XYZ-style molecule input
//! - [`output`]: matrix and ERI output formats (text and binary)
//! - [`driver`]: batch runs over a molecule
//! - [`selftest`]: the built-in invariant suites

pub mod basis_file;
pub mod driver;
mod error;
pub mod molecule_file;
pub mod output;
pub mod selftest;

pub use error::Error;
pub use gaussint_core as core;
