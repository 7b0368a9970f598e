//! Median of the gamma distribution: exact solver, tight closed-form bounds,
//! and interpolated approximations.
//!
//! The unit-scale gamma distribution with shape `k` has PDF
//! `x^(k-1) e^(-x) / Γ(k)`. Its median `ν(k)` has no closed form, but it is
//! bracketed remarkably tightly by members of the family `2^(-1/k)·(A + B·k)`.
//! This crate provides:
//!
//! - [`special`] — log-gamma, the regularized lower incomplete gamma function
//!   (with a log-argument entry point for shapes where the median underflows
//!   f64), and the exponential integral.
//! - [`median`] — a bracketed root-finder for `ν(k)` accurate to near machine
//!   precision over `k ∈ [1e-4, 1e6]`, finite-difference slopes, and the
//!   Laurent-series approximant.
//! - [`bounds`] — the catalog of named affine bounds (`ν_U`, `ν_L∞`, `ν_L0`,
//!   `ν_L1`, …), the non-affine Berg and `Γ(k+1)^(1/k)` bounds, margin and
//!   percentile evaluation, and the A–B locus data.
//! - [`interp`] — the ideal interpolator `g(k)` between `ν_U` and `ν_L∞`, its
//!   slope/value properties, and the rational and arctan interpolator families.
//! - [`search`] — independent re-derivation of every numerically-specified
//!   parameter: tight-bound coefficients, tangency points, minimax parameters.
//! - [`claims`] — the verification suite run by `gamma-median verify`.
//!
//! All numerics are generic over the scalar type via [`Real`] (implemented
//! for `f32` and `f64`); the solver and verification tolerances quoted in the
//! documentation are the `f64` ones.
//!
//! # Example
//!
//! ```
//! use gamma_median::median::median;
//!
//! let sol = median(1.0_f64).unwrap();
//! assert!((sol.value.natural() - std::f64::consts::LN_2).abs() < 1e-13);
//! ```

#![allow(clippy::excessive_precision)] // reference constants keep full oracle digits

use std::fmt;

pub mod bounds;
pub mod claims;
pub mod cli;
pub mod consts;
pub mod interp;
pub mod median;
mod real;
pub mod search;
pub mod special;
pub mod table;
pub mod value;

pub use real::Real;
pub use special::EvalOptions;
pub use value::ScaledValue;

/// `ScaledValue` at the default precision.
pub type ScaledValue64 = value::ScaledValue<f64>;
/// `MedianSolution` at the default precision.
pub type MedianSolution64 = median::MedianSolution<f64>;
/// `AffineBound` at the default precision.
pub type AffineBound64 = bounds::AffineBound<f64>;
/// `Interpolator` at the default precision.
pub type Interpolator64 = interp::Interpolator<f64>;

/// Errors reported by the solvers, searches, and evaluators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside a function's domain.
    Domain(String),
    /// A series, continued fraction, or root bracket failed to converge
    /// within its iteration budget.
    Convergence(&'static str),
    /// A parameter search could not certify its result.
    Search(String),
    /// An interpolator parameterization was rejected at construction.
    Construction(String),
    /// An unknown table row or claim id was requested.
    UnknownRow(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(msg) => write!(f, "domain error: {msg}"),
            Self::Convergence(what) => write!(f, "failed to converge: {what}"),
            Self::Search(msg) => write!(f, "search failure: {msg}"),
            Self::Construction(msg) => write!(f, "invalid construction: {msg}"),
            Self::UnknownRow(msg) => write!(f, "unknown row: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
