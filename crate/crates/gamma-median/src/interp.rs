//! Interpolators between the tight bounds `ν_U` and `ν_L∞`.
//!
//! Writing the median as `ν = g(k)·ν_L∞ + (1 - g(k))·ν_U` defines the ideal
//! interpolator `g(k) = (ν_U - ν)/(ν_U - ν_L∞)`, a sigmoid running from 0 at
//! low `k` to 1 at high `k` (in `log k`). Approximating `g` by a one-parameter
//! sigmoid `g̃` gives closed-form bounds and approximations of the median;
//! upper bounds of `g` make lower bounds of `ν` and vice versa.

use crate::consts;
use crate::median::median;
use crate::real::{r, Real};
use crate::search::{self, SearchConfig};
use crate::value::ScaledValue;
use crate::Error;

/// A one-parameter sigmoid or a general rational interpolator.
#[derive(Debug, Clone, PartialEq)]
pub enum Interpolator<T> {
    /// `g̃(k) = k/(b₀ + k)` — logistic in `log k`.
    Rational1 { b0: T },
    /// `g̃(k) = (Σ_{i=1}^{N-1} aᵢkⁱ + k^N) / (Σ_{i=0}^{N-1} bᵢkⁱ + k^N)`.
    RationalN { a: Vec<T>, b: Vec<T> },
    /// `g̃(k) = (2/π)·atan(k/b)` — Gudermannian in `log k`.
    Arctan { b: T },
}

impl<T: Real> Interpolator<T> {
    pub fn rational1(b0: T) -> Result<Self, Error> {
        if !b0.is_finite() || b0 <= T::zero() {
            return Err(Error::Construction(format!(
                "rational interpolator needs b0 > 0, got {b0}"
            )));
        }
        Ok(Self::Rational1 { b0 })
    }

    pub fn arctan(b: T) -> Result<Self, Error> {
        if !b.is_finite() || b <= T::zero() {
            return Err(Error::Construction(format!(
                "arctan interpolator needs b > 0, got {b}"
            )));
        }
        Ok(Self::Arctan { b })
    }

    /// General rational form with numerator coefficients `a₁…a_{N-1}` and
    /// denominator coefficients `b₀…b_{N-1}` (both monic of degree N).
    ///
    /// Rejected if the denominator takes a non-positive value anywhere on
    /// `k > 0` (sign scan over a dense geometric grid plus the endpoints'
    /// asymptotics), since a pole would make the blend meaningless.
    pub fn rational_n(a: Vec<T>, b: Vec<T>) -> Result<Self, Error> {
        if b.is_empty() || a.len() + 1 != b.len() {
            return Err(Error::Construction(format!(
                "rational interpolator of degree N needs N-1 numerator and N \
                 denominator coefficients, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if b[0] <= T::zero() {
            return Err(Error::Construction(
                "rational interpolator denominator must be positive at k = 0".into(),
            ));
        }
        let denom = |k: T| {
            let mut acc = T::one();
            for c in b.iter().rev() {
                acc = acc * k + *c;
            }
            acc
        };
        let mut k = r::<T>(1e-9);
        let limit = r::<T>(1e9);
        let step = r::<T>(1.047); // 50 points per decade
        while k <= limit {
            if denom(k) <= T::zero() {
                return Err(Error::Construction(format!(
                    "rational interpolator denominator vanishes near k = {k}"
                )));
            }
            k = k * step;
        }
        Ok(Self::RationalN { a, b })
    }

    /// Midpoint parameter for the log-symmetric one-parameter families.
    pub fn midpoint(&self) -> Option<T> {
        match self {
            Self::Rational1 { b0 } => Some(*b0),
            Self::Arctan { b } => Some(*b),
            Self::RationalN { .. } => None,
        }
    }
}

/// Evaluate an interpolator at `k > 0`.
pub fn eval_interpolator<T: Real>(interp: &Interpolator<T>, k: T) -> Result<T, Error> {
    if !k.is_finite() || k <= T::zero() {
        return Err(Error::Domain(format!("shape must be positive, got {k}")));
    }
    Ok(match interp {
        Interpolator::Rational1 { b0 } => k / (*b0 + k),
        Interpolator::Arctan { b } => r::<T>(2.0) / T::PI() * (k / *b).atan(),
        Interpolator::RationalN { a, b } => {
            let mut num = T::one();
            for c in a.iter().rev() {
                num = num * k + *c;
            }
            num = num * k; // lowest numerator power is k¹
            let mut den = T::one();
            for c in b.iter().rev() {
                den = den * k + *c;
            }
            num / den
        }
    })
}

/// The interpolated median in scaled space:
/// `m̃ = e^(-γ) - g̃(k)·(e^(-γ) - ln 2 + 1/3) + k`.
pub fn interpolated_median<T: Real>(
    interp: &Interpolator<T>,
    k: T,
) -> Result<ScaledValue<T>, Error> {
    let g = eval_interpolator(interp, k)?;
    let scaled = consts::exp_neg_gamma::<T>() - g * consts::bound_gap::<T>() + k;
    ScaledValue::from_scaled(k, scaled)
}

/// The ideal interpolator `g(k) = (m_U(k) - m(k)) / (e^(-γ) - ln 2 + 1/3)`,
/// computed from the solved median.
pub fn ideal_g<T: Real>(k: T) -> Result<T, Error> {
    let m = median(k)?.value.scaled;
    let m_u = consts::exp_neg_gamma::<T>() + k;
    Ok((m_u - m) / consts::bound_gap::<T>())
}

/// `A(k) = m(k) - k`: the exact `A` that solves `ν = 2^(-1/k)(A(k) + k)`.
/// Runs from `e^(-γ)` at `k → 0` to `ln 2 - 1/3` at `k → ∞`.
pub fn a_of_k<T: Real>(k: T) -> Result<T, Error> {
    Ok(median(k)?.value.scaled - k)
}

/// `B(k) = (m(k) - e^(-γ))/k`: the exact `B` that solves
/// `ν = 2^(-1/k)(e^(-γ) + B(k)·k)`. Runs between `e^(-γ)π²/12` and 1, dipping
/// below its low-k limit before rising.
pub fn b_of_k<T: Real>(k: T) -> Result<T, Error> {
    Ok((median(k)?.value.scaled - consts::exp_neg_gamma::<T>()) / k)
}

/// Slope and value properties of the ideal interpolator.
///
/// `P₀` is the low-k slope `dg/dk`, `P∞` the high-k slope `-dg/d(1/k)`, and
/// `P₁ = g(1)`; all three have closed forms in γ, π, and ln 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolatorProperties<T> {
    pub p0: T,
    pub p_inf: T,
    pub p1: T,
}

impl<T: Real> InterpolatorProperties<T> {
    pub fn closed_form() -> Self {
        let gap = consts::bound_gap::<T>();
        let ln2 = T::LN_2();
        let p0 = (T::one() - consts::nu1_slope::<T>()) / gap;
        let p_inf = (r::<T>(8.0) / r(405.0) + consts::exp_neg_gamma::<T>() * ln2
            - ln2 * ln2 / r(2.0))
            / gap
            - ln2;
        let p1 = (T::one() + consts::exp_neg_gamma::<T>() - r::<T>(2.0) * ln2) / gap;
        Self { p0, p_inf, p1 }
    }
}

/// Table-2 row selectors: the interpolator family…
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Rational1,
    Arctan,
}

/// …and the criterion its parameter optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Match the ideal low-k slope (gives an upper bound of ν).
    BestLowK,
    /// Pass through ν(1) = ln 2 exactly (not a bound).
    ExactAtOne,
    /// Match the ideal high-k slope (bound for rational1, not for arctan).
    BestHighK,
    /// Minimize the maximum relative median error (numeric only).
    MinimaxRelative,
    /// Minimize the maximum absolute median error (numeric only).
    MinimaxAbsolute,
    /// Largest parameter still giving a lower bound of ν (numeric only).
    TangentLower,
}

/// The one-parameter value for a Table-2 row.
///
/// Closed-form rows are computed from [`InterpolatorProperties`]:
/// rational `b₀ ∈ {1/P₀, 1/P₁ - 1, P∞}` and arctan
/// `b ∈ {(2/π)/P₀, (π/2)·P∞, cot((π/2)·P₁)}`. The numeric rows (both
/// minimax criteria and the tangent lower bound, arctan family only) are
/// served by the corresponding parameter search at the default
/// configuration.
pub fn table2_parameter<T: Real>(family: Family, criterion: Criterion) -> Result<T, Error> {
    let props = InterpolatorProperties::<T>::closed_form();
    match (family, criterion) {
        (Family::Rational1, Criterion::BestLowK) => Ok(T::one() / props.p0),
        (Family::Rational1, Criterion::ExactAtOne) => Ok(T::one() / props.p1 - T::one()),
        (Family::Rational1, Criterion::BestHighK) => Ok(props.p_inf),
        (Family::Arctan, Criterion::BestLowK) => {
            Ok(r::<T>(2.0) / T::PI() / props.p0)
        }
        (Family::Arctan, Criterion::BestHighK) => Ok(T::PI() / r::<T>(2.0) * props.p_inf),
        (Family::Arctan, Criterion::ExactAtOne) => {
            let half_pi_p1 = T::PI() / r::<T>(2.0) * props.p1;
            Ok(half_pi_p1.cos() / half_pi_p1.sin())
        }
        (Family::Arctan, Criterion::MinimaxRelative) => {
            search::minimax_b(&SearchConfig::default(), search::MinimaxErrorKind::Relative)
        }
        (Family::Arctan, Criterion::MinimaxAbsolute) => {
            search::minimax_b(&SearchConfig::default(), search::MinimaxErrorKind::Absolute)
        }
        (Family::Arctan, Criterion::TangentLower) => {
            Ok(search::find_tight_arctan_lower(&SearchConfig::default())?.parameter)
        }
        (Family::Rational1, _) => Err(Error::UnknownRow(format!(
            "no rational1 row for {criterion:?}"
        ))),
    }
}

/// The degree-2 rational interpolator pinned by all three ideal properties:
/// `a₁/b₀ = P₀`, `b₁ - a₁ = P∞`, `(a₁+1)/(b₀+b₁+1) = P₁`.
///
/// Solving the linear system gives
/// `b₀ = (P₁(1+P∞) - 1)/(P₀(1-P₁) - P₁)`, `a₁ = P₀·b₀`, `b₁ = a₁ + P∞`.
/// The result is exact at `k = 1` and matches the median to `O(k⁻²)` at high
/// `k`, but crosses the median — an approximation, not a bound.
pub fn constrained_rational2<T: Real>() -> Result<Interpolator<T>, Error> {
    let props = InterpolatorProperties::<T>::closed_form();
    let b0 = (props.p1 * (T::one() + props.p_inf) - T::one())
        / (props.p0 * (T::one() - props.p1) - props.p1);
    let a1 = props.p0 * b0;
    let b1 = a1 + props.p_inf;
    Interpolator::rational_n(vec![a1], vec![b0, b1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::bound_gap;

    #[test]
    fn properties_match_reference_decimals() {
        let p = InterpolatorProperties::<f64>::closed_form();
        assert!((p.p0 - 2.66913).abs() < 1e-5);
        assert!((p.p_inf - 0.143472).abs() < 1e-5);
        assert!((p.p1 - 0.868678).abs() < 1e-5);
        // mpmath, 25 digits
        assert!((p.p0 - 2.669128347784707).abs() < 1e-14);
        assert!((p.p_inf - 0.14347215103323950).abs() < 1e-15);
        assert!((p.p1 - 0.86867797204104493).abs() < 1e-14);
    }

    #[test]
    fn table2_closed_forms_match_printed_values() {
        let cases: [(Family, Criterion, f64); 6] = [
            (Family::Rational1, Criterion::BestLowK, 0.374654),
            (Family::Rational1, Criterion::ExactAtOne, 0.151175),
            (Family::Rational1, Criterion::BestHighK, 0.143472),
            (Family::Arctan, Criterion::BestLowK, 0.238512),
            (Family::Arctan, Criterion::BestHighK, 0.225366),
            (Family::Arctan, Criterion::ExactAtOne, 0.209257),
        ];
        for (family, criterion, printed) in cases {
            let value: f64 = table2_parameter(family, criterion).unwrap();
            assert!(
                (value - printed).abs() < 1e-6,
                "{family:?}/{criterion:?}: {value} vs printed {printed}"
            );
        }
        assert!(matches!(
            table2_parameter::<f64>(Family::Rational1, Criterion::TangentLower),
            Err(Error::UnknownRow(_))
        ));
    }

    #[test]
    fn sigmoids_hit_half_at_their_midpoint() {
        for b in [0.1f64, 0.2093, 0.375] {
            let rat = Interpolator::rational1(b).unwrap();
            assert!((eval_interpolator(&rat, b).unwrap() - 0.5).abs() < 1e-15);
            let atn = Interpolator::arctan(b).unwrap();
            assert!((eval_interpolator(&atn, b).unwrap() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn arctan_tail_expansion() {
        // g̃(k) = 1 - (2/π)(b/k) + O(k⁻³)
        let b = 0.2f64;
        let interp = Interpolator::arctan(b).unwrap();
        let k = 1e4;
        let g = eval_interpolator(&interp, k).unwrap();
        let recovered = (1.0 - g) * k * std::f64::consts::PI / 2.0;
        assert!((recovered - b).abs() < 1e-9);
    }

    #[test]
    fn construction_guards() {
        assert!(Interpolator::rational1(0.0f64).is_err());
        assert!(Interpolator::arctan(-0.1f64).is_err());
        assert!(Interpolator::rational_n(vec![1.0f64], vec![1.0]).is_err());
        // denominator with a positive real root: b₀ + b₁k + k² with b₁ = -3, b₀ = 1
        assert!(Interpolator::rational_n(vec![1.0f64], vec![1.0, -3.0]).is_err());
        assert!(Interpolator::rational_n(vec![1.0f64], vec![-1.0, 1.0]).is_err());
        assert!(Interpolator::rational_n(vec![0.5f64], vec![0.2, 0.9]).is_ok());
    }

    #[test]
    fn ideal_interpolator_properties() {
        let p = InterpolatorProperties::<f64>::closed_form();
        // value at 1
        assert!((ideal_g(1.0f64).unwrap() - p.p1).abs() < 1e-9);
        // low-k slope from the definition g(k)/k
        let slope0 = ideal_g(1e-4f64).unwrap() / 1e-4;
        assert!(((slope0 - p.p0) / p.p0).abs() < 1e-3, "slope {slope0}");
        // high-k slope from (1 - g)·k
        let slope_inf = (1.0 - ideal_g(1e4f64).unwrap()) * 1e4;
        assert!(
            ((slope_inf - p.p_inf) / p.p_inf).abs() < 1e-3,
            "slope {slope_inf}"
        );
        // tail value at k = 1000
        let g = ideal_g(1e3f64).unwrap();
        assert!((g - (1.0 - p.p_inf / 1e3)).abs() < 1e-5);
    }

    #[test]
    fn a_and_b_reparameterizations() {
        // limits of A(k)
        assert!((a_of_k(1e-4f64).unwrap() - crate::consts::exp_neg_gamma::<f64>()).abs() < 1e-4);
        assert!((a_of_k(1e6f64).unwrap() - crate::consts::ln2_minus_third::<f64>()).abs() < 1e-4);
        // limits of B(k)
        assert!((b_of_k(1e-4f64).unwrap() - crate::consts::nu1_slope::<f64>()).abs() < 1e-4);
        assert!((b_of_k(1e6f64).unwrap() - 1.0).abs() < 1e-4);
        // B dips below its low-k limit before rising
        assert!(b_of_k(0.05f64).unwrap() < crate::consts::nu1_slope::<f64>());
        assert!(b_of_k(0.5f64).unwrap() > crate::consts::nu1_slope::<f64>());
    }

    #[test]
    fn low_k_slopes_of_the_tight_rows_match_p0() {
        // both best-at-low-k rows are built to take the ideal slope P0
        let p = InterpolatorProperties::<f64>::closed_form();
        let rational = Interpolator::rational1(
            table2_parameter::<f64>(Family::Rational1, Criterion::BestLowK).unwrap(),
        )
        .unwrap();
        let arctan = Interpolator::arctan(
            table2_parameter::<f64>(Family::Arctan, Criterion::BestLowK).unwrap(),
        )
        .unwrap();
        for interp in [rational, arctan] {
            let slope = eval_interpolator(&interp, 1e-6).unwrap() / 1e-6;
            assert!(
                ((slope - p.p0) / p.p0).abs() < 1e-4,
                "finite-difference slope {slope}"
            );
        }
    }

    #[test]
    fn orientation_upper_g_means_lower_median() {
        // g̃(k) >= g(k) exactly when the interpolated median sits below ν(k)
        let interp = Interpolator::arctan(0.21).unwrap();
        for k in [0.01f64, 0.1, 0.4184, 1.0, 10.0, 300.0] {
            let g = ideal_g(k).unwrap();
            let g_tilde = eval_interpolator(&interp, k).unwrap();
            let m = crate::median::median(k).unwrap().value.scaled;
            let m_tilde = interpolated_median(&interp, k).unwrap().scaled;
            if (g_tilde - g).abs() > 1e-12 {
                assert_eq!(g_tilde > g, m_tilde < m, "orientation flipped at k = {k}");
            }
        }
    }

    #[test]
    fn interpolated_median_reproduces_the_ideal() {
        // plugging the ideal g value back in recovers m(k) identically
        for k in [0.01f64, 1.0, 300.0] {
            let g = ideal_g(k).unwrap();
            let m = crate::median::median(k).unwrap().value.scaled;
            let blended = crate::consts::exp_neg_gamma::<f64>() - g * bound_gap::<f64>() + k;
            assert!((blended - m).abs() < 1e-12 * (1.0 + m));
        }
    }

    #[test]
    fn exact_at_one_rows_hit_ln_two() {
        let b = table2_parameter::<f64>(Family::Arctan, Criterion::ExactAtOne).unwrap();
        let interp = Interpolator::arctan(b).unwrap();
        let v = interpolated_median(&interp, 1.0).unwrap();
        assert!((v.natural() - std::f64::consts::LN_2).abs() < 1e-6);
        let b0 = table2_parameter::<f64>(Family::Rational1, Criterion::ExactAtOne).unwrap();
        let interp = Interpolator::rational1(b0).unwrap();
        let v = interpolated_median(&interp, 1.0).unwrap();
        assert!((v.natural() - std::f64::consts::LN_2).abs() < 1e-6);
    }

    #[test]
    fn constrained_rational2_satisfies_its_constraints() {
        let interp = constrained_rational2::<f64>().unwrap();
        let p = InterpolatorProperties::<f64>::closed_form();
        let Interpolator::RationalN { a, b } = &interp else {
            panic!("expected rational N = 2");
        };
        // mpmath solution of the 3×3 system
        assert!((b[0] - 0.012912800804841844).abs() < 1e-14);
        assert!((a[0] - 0.034465922677500550).abs() < 1e-14);
        assert!((b[1] - 0.177938073710740046).abs() < 1e-14);
        // constraints hold algebraically
        assert!((a[0] / b[0] - p.p0).abs() < 1e-12);
        assert!((b[1] - a[0] - p.p_inf).abs() < 1e-15);
        let g1 = eval_interpolator(&interp, 1.0).unwrap();
        assert!((g1 - p.p1).abs() < 1e-12);
        // low-k slope by Richardson extrapolation of g(h)/h
        let s = |h: f64| eval_interpolator(&interp, h).unwrap() / h;
        let slope = 2.0 * s(5e-7) - s(1e-6);
        assert!((slope - p.p0).abs() < 1e-9, "slope {slope}");
        // exact at k = 1 on the median scale too
        let v = interpolated_median(&interp, 1.0).unwrap();
        assert!((v.natural() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Both one-parameter families are symmetric about their
            /// midpoint on a log-k axis: g̃(c²/k) = 1 - g̃(k).
            #[test]
            fn log_symmetry(
                log_k in -6.0f64..6.0,
                c in 0.05f64..0.5,
            ) {
                let k = 10f64.powf(log_k);
                for interp in [
                    Interpolator::rational1(c).unwrap(),
                    Interpolator::arctan(c).unwrap(),
                ] {
                    let g = eval_interpolator(&interp, k).unwrap();
                    let mirrored = eval_interpolator(&interp, c * c / k).unwrap();
                    prop_assert!((mirrored - (1.0 - g)).abs() < 1e-12);
                }
            }

            /// Any interpolator with range ⊆ [0, 1] lands between the bounds.
            #[test]
            fn sandwich(
                log_k in -6.0f64..6.0,
                b in 0.05f64..0.5,
            ) {
                let k = 10f64.powf(log_k);
                let interp = Interpolator::arctan(b).unwrap();
                let m = interpolated_median(&interp, k).unwrap().scaled;
                let m_lo = crate::consts::ln2_minus_third::<f64>() + k;
                let m_hi = crate::consts::exp_neg_gamma::<f64>() + k;
                prop_assert!(m_lo <= m && m <= m_hi);
            }

            /// Interpolators stay inside [0, 1] and increase in k.
            #[test]
            fn range_and_monotonicity(
                log_k in -6.0f64..6.0,
                db in 0.0f64..2.0,
                b in 0.05f64..0.5,
            ) {
                let k = 10f64.powf(log_k);
                for interp in [
                    Interpolator::rational1(b).unwrap(),
                    Interpolator::arctan(b).unwrap(),
                ] {
                    let g = eval_interpolator(&interp, k).unwrap();
                    let g2 = eval_interpolator(&interp, k * (1.0 + db)).unwrap();
                    prop_assert!((0.0..=1.0).contains(&g));
                    prop_assert!(g2 >= g);
                }
            }
        }
    }
}
