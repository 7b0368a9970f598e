//! The catalog of median bounds and asymptotes, margin evaluation, and the
//! A–B locus.
//!
//! The central family is `ν̃ = 2^(-1/k)·(A + B·k)`; in scaled space a member
//! is simply the line `m̃ = A + B·k`. The catalog collects the named members
//! plus the two non-affine bounds (`e^(-1/(3k))·k` above, `2^(-1/k)·Γ(k+1)^(1/k)`
//! below).

use crate::consts;
use crate::median::median;
use crate::real::{r, Real};
use crate::special::{log_gamma, reg_lower_gamma_log_x_with, EvalOptions};
use crate::value::ScaledValue;
use crate::Error;

/// Which side of the median a bound is claimed to sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// A member `2^(-1/k)·(A + B·k)` of the affine bound family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineBound<T> {
    pub a: T,
    pub b: T,
    pub name: &'static str,
}

impl<T: Real> AffineBound<T> {
    pub fn new(a: T, b: T, name: &'static str) -> Result<Self, Error> {
        if a < T::zero() || b < T::zero() || (a == T::zero() && b == T::zero()) {
            return Err(Error::Domain(format!(
                "affine bound needs A, B >= 0 and (A, B) != (0, 0), got ({a}, {b})"
            )));
        }
        Ok(Self { a, b, name })
    }
}

/// `B` coefficient of `ν_L0` as printed in the catalog (seven decimals).
pub const NU_L0_B: f64 = 0.459_650_7;
/// `A` coefficient of `ν_L1` as printed in the catalog.
pub const NU_L1_A: f64 = 0.411_110_7;
/// `B` coefficient of `ν_L1` as printed in the catalog.
pub const NU_L1_B: f64 = 0.975_183_6;

/// Half-ulp of the seven-decimal catalog constants above.
///
/// The tight coefficients are irrational; printed to seven decimals they can
/// sit up to 5e-8 on the wrong side of the true tight value, which moves a
/// graze-point margin by up to `5e-8·(1 + k)` in scaled space. Boundhood
/// checks of the two numerically-printed catalog members must allow for
/// exactly that much.
pub const CATALOG_DECIMAL_QUANTUM: f64 = 5e-8;

/// The named bounds of the affine family.
#[derive(Debug, Clone)]
pub struct BoundCatalog<T> {
    /// `2^(-1/k)·k` — lower bound (Berg–Pedersen).
    pub berg_lower: AffineBound<T>,
    /// `ν₀ = 2^(-1/k)·e^(-γ)` — low-k asymptote and lower bound.
    pub nu0: AffineBound<T>,
    /// `ν₁` — improved low-k asymptote; crosses the median, not a bound.
    pub nu1: AffineBound<T>,
    /// `ν_L0` — tight lower bound, best at low k (numeric `B`).
    pub nu_l0: AffineBound<T>,
    /// `ν_L1` — tight lower bound, tangent at `k = 1` (numeric `A`, `B`).
    pub nu_l1: AffineBound<T>,
    /// `ν_L∞` — tight lower bound, best at high k.
    pub nu_l_inf: AffineBound<T>,
    /// `ν_U` — the uniquely tight upper bound.
    pub nu_u: AffineBound<T>,
}

impl<T: Real> BoundCatalog<T> {
    pub fn new() -> Self {
        let eg = consts::exp_neg_gamma::<T>();
        Self {
            berg_lower: AffineBound {
                a: T::zero(),
                b: T::one(),
                name: "berg_lower",
            },
            nu0: AffineBound {
                a: eg,
                b: T::zero(),
                name: "nu0",
            },
            nu1: AffineBound {
                a: eg,
                b: consts::nu1_slope(),
                name: "nu1",
            },
            nu_l0: AffineBound {
                a: eg,
                b: r(NU_L0_B),
                name: "nuL0",
            },
            nu_l1: AffineBound {
                a: r(NU_L1_A),
                b: r(NU_L1_B),
                name: "nuL1",
            },
            nu_l_inf: AffineBound {
                a: consts::ln2_minus_third(),
                b: T::one(),
                name: "nuLinf",
            },
            nu_u: AffineBound {
                a: eg,
                b: T::one(),
                name: "nuU",
            },
        }
    }

    /// Every affine member with its claimed side (`None` for ν₁, which is
    /// not a bound) and whether its printed coefficients carry the decimal
    /// quantum of [`CATALOG_DECIMAL_QUANTUM`].
    pub fn entries(&self) -> [(&AffineBound<T>, Option<BoundSide>, bool); 7] {
        [
            (&self.berg_lower, Some(BoundSide::Lower), false),
            (&self.nu0, Some(BoundSide::Lower), false),
            (&self.nu1, None, false),
            (&self.nu_l0, Some(BoundSide::Lower), true),
            (&self.nu_l1, Some(BoundSide::Lower), true),
            (&self.nu_l_inf, Some(BoundSide::Lower), false),
            (&self.nu_u, Some(BoundSide::Upper), false),
        ]
    }
}

impl<T: Real> Default for BoundCatalog<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluate an affine family member at `k`: scaled magnitude `A + B·k`.
pub fn eval_affine<T: Real>(bound: &AffineBound<T>, k: T) -> Result<ScaledValue<T>, Error> {
    if !k.is_finite() || k <= T::zero() {
        return Err(Error::Domain(format!("shape must be positive, got {k}")));
    }
    let scaled = bound.a + bound.b * k;
    if scaled <= T::zero() {
        return Err(Error::Domain(format!(
            "affine bound {} is nonpositive at k = {k}",
            bound.name
        )));
    }
    ScaledValue::from_scaled(k, scaled)
}

/// The lower bound `2^(-1/k)·Γ(k+1)^(1/k)`: scaled magnitude
/// `Γ(k+1)^(1/k) = exp(ln Γ(k+1) / k)`.
///
/// Tight as `k → 0` (it converges to the median to within a relative
/// `O(ν)`, which at `k = 0.01` is ~1e-31), looser than linear at high `k`.
pub fn eval_gamma_power_bound<T: Real>(k: T) -> Result<ScaledValue<T>, Error> {
    let k64 = k.to_f64().unwrap_or(f64::NAN);
    if !(crate::median::K_MIN..=crate::median::K_MAX).contains(&k64) {
        return Err(Error::Domain(format!(
            "gamma power bound evaluated for k in [1e-4, 1e6], got {k}"
        )));
    }
    let scaled = (log_gamma(k + T::one())? / k).exp();
    ScaledValue::from_scaled(k, scaled)
}

/// Berg's upper bound `e^(-1/(3k))·k`, an asymptote sitting just above
/// `k - 1/3` at high `k`. Built from its log since the scaled form
/// `2^(1/k)·e^(-1/(3k))·k` grows enormous at small `k`.
pub fn eval_berg_upper<T: Real>(k: T) -> Result<ScaledValue<T>, Error> {
    if !k.is_finite() || k <= T::zero() {
        return Err(Error::Domain(format!("shape must be positive, got {k}")));
    }
    let third = T::one() / r::<T>(3.0);
    ScaledValue::from_log_natural(k, k.ln() - third / k)
}

/// Percentile achieved by a value: `100·P(k, x)`, evaluated through the
/// log-argument CDF so deep-underflow values at small `k` still work.
pub fn percentile_of<T: Real>(value: &ScaledValue<T>) -> Result<T, Error> {
    let opts = EvalOptions::for_shape(value.k.to_f64().unwrap_or(1.0));
    Ok(r::<T>(100.0) * reg_lower_gamma_log_x_with(value.k, value.log_natural, &opts)?)
}

/// One row of a margin/percentile curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginPoint<T> {
    pub k: T,
    /// `2^(1/k)·(ν̃ - ν) = m̃ - m`, the scaled margin.
    pub scaled_margin: T,
    /// `100·P(k, ν̃)`.
    pub percentile: T,
}

/// Evaluate a bound's scaled margin and achieved percentile along a grid.
///
/// The grid must be strictly increasing and within the solver domain.
pub fn margin_curve<T, F>(eval: F, k_grid: &[T]) -> Result<Vec<MarginPoint<T>>, Error>
where
    T: Real,
    F: Fn(T) -> Result<ScaledValue<T>, Error>,
{
    if k_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("k grid must be strictly increasing".into()));
    }
    k_grid
        .iter()
        .map(|&k| {
            let value = eval(k)?;
            let m = median(k)?.value.scaled;
            Ok(MarginPoint {
                k,
                scaled_margin: value.scaled - m,
                percentile: percentile_of(&value)?,
            })
        })
        .collect()
}

/// The constraint line in the A–B plane carved out by the median at `k`:
/// `A + B·k = m(k)`, returned as `(intercept, slope)` of `A = m(k) - B·k`.
pub fn ab_locus<T: Real>(k: T) -> Result<(T, T), Error> {
    let m = median(k)?.value.scaled;
    Ok((m, -k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{exp_neg_gamma, ln2_minus_third, nu1_slope};

    #[test]
    fn affine_values_at_one() {
        let catalog = BoundCatalog::<f64>::new();
        // ν_U(1) = (e^(-γ) + 1)/2
        let v = eval_affine(&catalog.nu_u, 1.0f64).unwrap();
        assert!((v.natural() - 0.7807297417834426).abs() < 1e-15);
        // ν_L∞(1) = (ln 2 - 1/3 + 1)/2, which is below ln 2
        let v = eval_affine(&catalog.nu_l_inf, 1.0).unwrap();
        assert!((v.natural() - 0.6799069236133060).abs() < 1e-15);
        assert!(v.natural() < std::f64::consts::LN_2);
        // ν_L1(1) = ln 2 to catalog precision
        let v = eval_affine(&catalog.nu_l1, 1.0).unwrap();
        assert!((v.natural() - std::f64::consts::LN_2).abs() < 1e-7);
    }

    #[test]
    fn catalog_identities() {
        let catalog = BoundCatalog::<f64>::new();
        // A + B = 2 ln 2 and B = 2·(ν'(1) - ln²2) for ν_L1, to print precision
        let two_ln2 = 2.0 * std::f64::consts::LN_2;
        assert!((catalog.nu_l1.a + catalog.nu_l1.b - two_ln2).abs() < 1e-6);
        let slope_b = 2.0 * (0.9680448 - std::f64::consts::LN_2.powi(2));
        assert!((catalog.nu_l1.b - slope_b).abs() < 1e-6);
        assert!((catalog.nu_u.a - exp_neg_gamma::<f64>()).abs() < 1e-16);
        assert!((catalog.nu_l_inf.a - ln2_minus_third::<f64>()).abs() < 1e-16);
        assert!((catalog.nu1.b - nu1_slope::<f64>()).abs() < 1e-16);
    }

    #[test]
    fn affine_bound_construction_guards() {
        assert!(AffineBound::new(0.0f64, 0.0, "zero").is_err());
        assert!(AffineBound::new(-0.1f64, 1.0, "neg").is_err());
        assert!(AffineBound::new(0.0f64, 1.0, "ok").is_ok());
        // evaluation still guards a hand-built bound that goes nonpositive
        let rogue = AffineBound {
            a: -1.0f64,
            b: 0.1,
            name: "rogue",
        };
        assert!(matches!(eval_affine(&rogue, 1.0), Err(Error::Domain(_))));
        assert!(matches!(
            eval_affine(&BoundCatalog::new().nu_u, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gamma_power_bound_values() {
        // Γ(2) = 1 so m = 1, natural 1/2
        let v = eval_gamma_power_bound(1.0f64).unwrap();
        assert!((v.scaled - 1.0).abs() < 1e-14);
        assert!((v.natural() - 0.5).abs() < 1e-14);
        // Γ(3) = 2 so m = √2
        let v = eval_gamma_power_bound(2.0f64).unwrap();
        assert!((v.scaled - std::f64::consts::SQRT_2).abs() < 1e-14);
        // Taylor head at small k: e^(-γ) + e^(-γ)π²/12·k, within 0.5%
        let v = eval_gamma_power_bound(0.01f64).unwrap();
        let head = exp_neg_gamma::<f64>() + nu1_slope::<f64>() * 0.01;
        assert!(((v.scaled - head) / head).abs() < 0.005);
        assert!((v.scaled - 0.5660738147061881).abs() < 1e-14);
        assert!(eval_gamma_power_bound(1e-5f64).is_err());
    }

    #[test]
    fn gamma_power_taylor_quadratic_residual() {
        // The k² coefficient of Γ(k+1)^(1/k) is ≈ -0.035 (true value
        // e^(-γ)(ζ(2)²/8 - ζ(3)/3) = -0.0350685…); the residual at small k
        // recovers it within 15%.
        let k = 1e-3f64;
        let m = eval_gamma_power_bound(k).unwrap().scaled;
        let residual = (m - exp_neg_gamma::<f64>() - nu1_slope::<f64>() * k) / (k * k);
        assert!(
            (residual - (-0.035)).abs() < 0.15 * 0.035,
            "quadratic residual {residual}"
        );
    }

    #[test]
    fn berg_upper_values() {
        let v = eval_berg_upper(1.0f64).unwrap();
        assert!((v.natural() - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
        // exceeds the median at k = 10
        let v = eval_berg_upper(10.0f64).unwrap();
        assert!((v.natural() - 9.672161004820058).abs() < 1e-12);
        assert!(v.natural() > median(10.0).unwrap().value.natural());
        // approaches k - 1/3 from above
        for k in [100.0f64, 1000.0] {
            let n = eval_berg_upper(k).unwrap().natural();
            assert!(n > k - 1.0 / 3.0);
            assert!(n - (k - 1.0 / 3.0) < 1.0 / (15.0 * k));
        }
    }

    #[test]
    fn percentile_of_median_is_fifty() {
        for k in [1e-3f64, 0.05, 1.0, 42.0, 1e3] {
            let sol = median(k).unwrap();
            let pct = percentile_of(&sol.value).unwrap();
            assert!((pct - 50.0).abs() < 1e-9, "percentile {pct} at k = {k}");
        }
    }

    #[test]
    fn margin_curve_of_nu_u() {
        let catalog = BoundCatalog::<f64>::new();
        let grid = [1e-3f64, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e3];
        let points =
            margin_curve(|k| eval_affine(&catalog.nu_u, k), &grid).unwrap();
        for p in &points {
            assert!(p.scaled_margin > 0.0);
            assert!(p.percentile > 50.0 && p.percentile < 55.0);
        }
        // the scaled margin settles near e^(-γ) - ln 2 + 1/3 ≈ 0.2016 at high k
        let last = points.last().unwrap();
        assert!((last.scaled_margin - 0.2016).abs() < 2e-3);
        // rejects a non-increasing grid
        assert!(margin_curve(|k| eval_affine(&catalog.nu_u, k), &[1.0f64, 1.0]).is_err());
    }

    #[test]
    fn nu1_margin_changes_sign() {
        let catalog = BoundCatalog::<f64>::new();
        let margin = |k: f64| {
            eval_affine(&catalog.nu1, k).unwrap().scaled - median(k).unwrap().value.scaled
        };
        let (mut lo, mut hi) = (0.05f64, 0.2f64);
        assert!(margin(lo) > 0.0 && margin(hi) < 0.0);
        // locate the crossing: the error of nu1 vanishes near k = 0.1003
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if margin(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let zero = 0.5 * (lo + hi);
        assert!((zero - 0.1003).abs() < 1e-3, "nu1 zero at {zero}");
    }

    #[test]
    fn nu_l0_margin_grazes_zero_without_a_real_crossing() {
        // the printed B = 0.4596507 rides 2.4e-8 above the true tight value,
        // so the margin at the graze point k ≈ 0.0708 is within the decimal
        // print quantum of zero rather than exactly tangent
        let catalog = BoundCatalog::<f64>::new();
        let graze = 0.0708117f64;
        let margin =
            eval_affine(&catalog.nu_l0, graze).unwrap().scaled - median(graze).unwrap().value.scaled;
        assert!(
            margin.abs() <= CATALOG_DECIMAL_QUANTUM * (1.0 + graze),
            "margin {margin:e}"
        );
        // well away from the graze the bound is strictly below the median
        for k in [0.005f64, 0.02, 0.3, 3.0] {
            let m = eval_affine(&catalog.nu_l0, k).unwrap().scaled
                - median(k).unwrap().value.scaled;
            assert!(m < 0.0, "margin {m:e} at k = {k}");
        }
    }

    #[test]
    fn ab_locus_line_at_one() {
        let (intercept, slope) = ab_locus(1.0f64).unwrap();
        // A + B = 2 ln 2
        assert!((intercept - 2.0 * std::f64::consts::LN_2).abs() < 1e-13);
        assert!((slope + 1.0).abs() < 1e-15);
        // (m(k), 0) lies on the line; ν_U lies strictly above it
        for k in [0.01f64, 1.0, 25.0] {
            let (a0, s) = ab_locus(k).unwrap();
            let m = median(k).unwrap().value.scaled;
            assert!((a0 + s * 0.0 - m).abs() < 1e-12 * (1.0 + m));
            assert!(exp_neg_gamma::<f64>() + k > m, "ν_U line test at k = {k}");
        }
    }
}
