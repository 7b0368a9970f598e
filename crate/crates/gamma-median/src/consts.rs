//! Shared mathematical constants.
//!
//! Constants with closed forms (`e^(-γ)`, `ln 2 - 1/3`, `e^(-γ)π²/12`) are
//! computed at runtime from γ and π rather than hard-coded as decimals, so
//! a closed form and its numeric value can never drift apart.

use crate::real::{r, Real};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// γ in the working scalar type.
#[inline]
pub fn euler_gamma<T: Real>() -> T {
    r(EULER_GAMMA)
}

/// `e^(-γ)` — the low-k limit of the scaled median `2^(1/k)·ν(k)`, and the
/// `A` coefficient shared by `ν_U`, `ν_0`, `ν_1`, and `ν_L0`.
#[inline]
pub fn exp_neg_gamma<T: Real>() -> T {
    (-euler_gamma::<T>()).exp()
}

/// `ln 2 - 1/3` — the `A` coefficient of `ν_L∞`, the lower bound tight at
/// high k.
#[inline]
pub fn ln2_minus_third<T: Real>() -> T {
    T::LN_2() - third::<T>()
}

/// `e^(-γ)·π²/12` — the `B` coefficient of the improved low-k asymptote
/// `ν_1`, from the Taylor series of `Γ(k+1)^(1/k)`.
#[inline]
pub fn nu1_slope<T: Real>() -> T {
    exp_neg_gamma::<T>() * T::PI() * T::PI() / r(12.0)
}

/// `e^(-γ) - ln 2 + 1/3` — the k-independent scaled gap between the upper
/// bound `ν_U` and the lower bound `ν_L∞`; every interpolated median blends
/// across exactly this gap.
#[inline]
pub fn bound_gap<T: Real>() -> T {
    exp_neg_gamma::<T>() - ln2_minus_third::<T>()
}

#[inline]
pub(crate) fn third<T: Real>() -> T {
    T::one() / r(3.0)
}
