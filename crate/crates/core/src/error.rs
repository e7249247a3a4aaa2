use alloc::string::String;
use core::fmt;

/// Errors raised by the integral engines and their input types.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `k!!` requested for `k < -1`.
    DoubleFactorialDomain(i64),
    /// `k!!` does not fit in 64 bits.
    DoubleFactorialOverflow(i64),
    /// An angular-momentum component would become negative.
    NegativeIndex,
    /// Exponents must be finite and strictly positive.
    NonPositiveExponent(f64),
    /// A contraction has no primitives.
    EmptyContraction,
    /// Every contraction coefficient is zero.
    DegenerateContraction,
    /// Angular momentum beyond what the engines support.
    UnsupportedAngularMomentum(u32),
    /// A coordinate or coefficient is NaN or infinite.
    NonFinite(&'static str),
    /// A molecule must contain at least one atom.
    EmptyMolecule,
    /// Nuclear charges are positive integers.
    InvalidCharge(u32),
    /// The element symbol is not in the periodic table used here.
    UnknownElement(String),
    /// The basis-set library has no entry for the element.
    MissingBasis(String),
    /// An index or order is outside the documented range.
    OutOfRange { what: &'static str, value: i64, min: i64, max: i64 },
    /// The Boys function argument must be finite and non-negative.
    BoysDomain(f64),
    /// A configuration constant is outside its validated range.
    InvalidConfig(&'static str),
    /// The backend cannot evaluate the requested class.
    BackendUnsupported(&'static str),
    /// Numerical quadrature did not reach the requested tolerance.
    QuadratureNotConverged { estimate: f64, difference: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DoubleFactorialDomain(k) => write!(f, "double factorial undefined for {k}"),
            Error::DoubleFactorialOverflow(k) => write!(f, "{k}!! overflows 64 bits"),
            Error::NegativeIndex => f.write_str("angular momentum component below zero"),
            Error::NonPositiveExponent(a) => write!(f, "exponent {a} is not positive"),
            Error::EmptyContraction => f.write_str("contraction has no primitives"),
            Error::DegenerateContraction => f.write_str("all contraction coefficients are zero"),
            Error::UnsupportedAngularMomentum(l) => {
                write!(f, "angular momentum {l} exceeds the supported maximum {}", crate::L_MAX)
            }
            Error::NonFinite(what) => write!(f, "non-finite {what}"),
            Error::EmptyMolecule => f.write_str("molecule has no atoms"),
            Error::InvalidCharge(z) => write!(f, "invalid nuclear charge {z}"),
            Error::UnknownElement(s) => write!(f, "unknown element symbol '{s}'"),
            Error::MissingBasis(s) => write!(f, "no basis functions for element '{s}'"),
            Error::OutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside [{min}, {max}]")
            }
            Error::BoysDomain(t) => write!(f, "Boys function argument {t} must be finite and >= 0"),
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
            Error::BackendUnsupported(what) => write!(f, "backend cannot evaluate {what}"),
            Error::QuadratureNotConverged { estimate, difference } => {
                write!(f, "quadrature did not converge (estimate {estimate:e}, last change {difference:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
