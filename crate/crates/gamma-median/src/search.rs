//! Independent re-derivation of every numerically-specified parameter:
//! tight-bound coefficients, tangency abscissas, and minimax interpolator
//! parameters.
//!
//! All searches run against the solved median on a geometric grid with
//! local refinement around the extremal points, so a graze that falls
//! between base grid points cannot certify an infeasible parameter.

use std::collections::BTreeMap;

use crate::bounds::{eval_affine, percentile_of, AffineBound, BoundSide, MarginPoint};
use crate::consts;
use crate::interp::{interpolated_median, Interpolator};
use crate::median::{median, median_with};
use crate::real::{r, Real};
use crate::special::EvalOptions;
use crate::value::ScaledValue;
use crate::Error;

/// Grid and tolerance configuration shared by the searches and the
/// verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Lower end of the geometric k grid (must reach down to 1e-3).
    pub k_min: f64,
    /// Upper end of the geometric k grid (must reach up to 1e3).
    pub k_max: f64,
    /// Grid density.
    pub points_per_decade: usize,
    /// Resolution of the searched parameter.
    pub param_tolerance: f64,
    /// Normalized margin `(m̃ - m)/(1 + m)` treated as a graze rather than a
    /// violation.
    pub margin_tolerance: f64,
    /// Levels of 10× local refinement around extremal grid points.
    pub max_refinements: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            k_min: 1e-3,
            k_max: 1e3,
            points_per_decade: 100,
            param_tolerance: 1e-7,
            margin_tolerance: 1e-12,
            max_refinements: 6,
        }
    }
}

impl SearchConfig {
    /// Default configuration at a different grid density.
    pub fn with_points_per_decade(points_per_decade: usize) -> Self {
        Self {
            points_per_decade,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.k_min <= 0.0 || self.k_max <= self.k_min || !self.k_min.is_finite() || !self.k_max.is_finite() {
            return Err(Error::Domain("k grid must satisfy 0 < k_min < k_max".into()));
        }
        if self.k_min > 1e-3 || self.k_max < 1e3 {
            return Err(Error::Domain(
                "k grid must cover at least [1e-3, 1e3]".into(),
            ));
        }
        if self.points_per_decade == 0 {
            return Err(Error::Domain("points_per_decade must be at least 1".into()));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.param_tolerance) || !positive(self.margin_tolerance) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// The geometric base grid, endpoints included.
    pub fn k_grid<T: Real>(&self) -> Vec<T> {
        let lg_min = self.k_min.log10();
        let lg_max = self.k_max.log10();
        let steps = ((lg_max - lg_min) * self.points_per_decade as f64).round() as usize;
        let mut grid: Vec<T> = (0..=steps)
            .map(|i| r(10f64.powf(lg_min + i as f64 / self.points_per_decade as f64)))
            .collect();
        if let Some(last) = grid.last_mut() {
            *last = r(self.k_max);
        }
        grid
    }
}

/// Outcome of a tight-bound search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightBoundResult<T> {
    /// The tight parameter (largest value keeping the bound on its side).
    pub parameter: T,
    /// Abscissa where the margin grazes zero.
    pub graze_k: T,
    /// Scaled margin at the graze point for the returned parameter
    /// (within parameter resolution of zero, on the feasible side).
    pub min_margin: T,
    /// Which side of the median the bound sits on.
    pub side: BoundSide,
}

/// Median values memoized per shape, so refinement points accumulated
/// during a search are solved once.
struct MedianCache<T> {
    map: BTreeMap<u64, T>,
}

impl<T: Real> MedianCache<T> {
    fn new() -> Self {
        Self {
            map: BTreeMap::new(),
        }
    }

    fn m(&mut self, k: T) -> Result<T, Error> {
        let bits = k.to_f64().unwrap_or(f64::NAN).to_bits();
        if let Some(&m) = self.map.get(&bits) {
            return Ok(m);
        }
        let opts = EvalOptions::for_shape(k.to_f64().unwrap_or(1.0));
        let m = median_with(k, &opts)?.value.scaled;
        self.map.insert(bits, m);
        Ok(m)
    }
}

/// Normalized violation of a claimed side at one point:
/// positive means the bound crosses the median.
fn violation<T: Real>(m_bound: T, m_median: T, side: BoundSide) -> T {
    let raw = match side {
        BoundSide::Lower => m_bound - m_median,
        BoundSide::Upper => m_median - m_bound,
    };
    raw / (T::one() + m_median)
}

/// Maximum normalized violation over the base grid with local 10×
/// refinement around the largest candidates. Returns `(violation, k_at)`.
///
/// Several separated near-graze points can compete (an interior tangency
/// versus an asymptotically tight grid end), so refinement drills around the
/// five largest well-separated base-grid violations: a single-argmax drill
/// can chase the wrong one and certify an infeasible parameter.
fn max_violation_refined<T, F>(
    eval: &F,
    side: BoundSide,
    config: &SearchConfig,
    base: &[T],
    cache: &mut MedianCache<T>,
) -> Result<(T, T), Error>
where
    T: Real,
    F: Fn(T) -> Result<ScaledValue<T>, Error>,
{
    let mut values = Vec::with_capacity(base.len());
    for &k in base.iter() {
        values.push(violation(eval(k)?.scaled, cache.m(k)?, side));
    }
    // candidate graze locations: interior local maxima plus both endpoints
    // (a slowly decaying tail would otherwise flood a plain top-N of values
    // and starve an interior bump whose true peak lies between grid points)
    let last = base.len() - 1;
    let mut candidates: Vec<usize> = vec![0, last];
    for i in 1..last {
        if values[i] >= values[i - 1] && values[i] >= values[i + 1] {
            candidates.push(i);
        }
    }
    candidates.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap());
    let seeds: Vec<usize> = candidates.into_iter().take(5).collect();

    let mut worst = (values[seeds[0]], base[seeds[0]]);
    for &seed in &seeds {
        let mut local = (values[seed], base[seed]);
        let mut lo = base[seed.saturating_sub(1)];
        let mut hi = base[(seed + 1).min(base.len() - 1)];
        for _ in 0..config.max_refinements {
            if hi <= lo {
                break;
            }
            let ratio = (hi / lo).ln() / r(20.0);
            let mut best_j = 0usize;
            for j in 0..=20usize {
                let k = lo * (ratio * r(j as f64)).exp();
                let v = violation(eval(k)?.scaled, cache.m(k)?, side);
                if v > local.0 {
                    local = (v, k);
                    best_j = j;
                }
            }
            let step = ratio.exp();
            lo = if best_j == 0 { lo } else { local.1 / step };
            hi = if best_j == 20 { hi } else { local.1 * step };
        }
        if local.0 > worst.0 {
            worst = local;
        }
    }
    Ok((worst.0, worst.1))
}

/// Bisect a one-parameter family for the largest parameter whose bound stays
/// on its side everywhere on the refined grid.
fn bisect_tight_parameter<T, F>(
    make_eval: F,
    side: BoundSide,
    seed: f64,
    config: &SearchConfig,
    what: &str,
) -> Result<TightBoundResult<T>, Error>
where
    T: Real,
    F: Fn(T) -> Box<dyn Fn(T) -> Result<ScaledValue<T>, Error>>,
{
    config.validate()?;
    let base = config.k_grid::<T>();
    let mut cache = MedianCache::new();
    let tol = r::<T>(config.margin_tolerance);
    let feasible = |p: T, cache: &mut MedianCache<T>| -> Result<(bool, T), Error> {
        let eval = make_eval(p);
        let (v, k_at) = max_violation_refined(&eval, side, config, &base, cache)?;
        Ok((v <= tol, k_at))
    };

    let (mut lo, mut hi) = (r::<T>(0.9 * seed), r::<T>(1.1 * seed));
    let (lo_ok, _) = feasible(lo, &mut cache)?;
    let (hi_ok, _) = feasible(hi, &mut cache)?;
    if !lo_ok || hi_ok {
        return Err(Error::Search(format!(
            "{what}: bracket [{lo}, {hi}] does not straddle the tight parameter"
        )));
    }
    while (hi - lo) > r(config.param_tolerance) {
        let mid = (lo + hi) * r(0.5);
        let (ok, _) = feasible(mid, &mut cache)?;
        if ok {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo <= r::<T>(0.9 * seed) || lo >= r::<T>(1.1 * seed) {
        return Err(Error::Search(format!(
            "{what}: result sits on the bracket edge"
        )));
    }
    // The graze abscissa is read off the infeasible side of the bracket:
    // there the tangency point is the unique violating location, whereas on
    // the feasible side an asymptotically-tight grid end can out-rank it.
    let eval_hi = make_eval(hi);
    let (_, graze) = max_violation_refined(&eval_hi, side, config, &base, &mut cache)?;
    let eval = make_eval(lo);
    let margin = eval(graze)?.scaled - cache.m(graze)?;
    Ok(TightBoundResult {
        parameter: lo,
        graze_k: graze,
        min_margin: margin,
        side,
    })
}

/// Largest `B` such that `2^(-1/k)(e^(-γ) + B·k)` stays below the median
/// everywhere — the tight ν_L0 coefficient (printed as 0.4596507) — plus the
/// graze abscissa near k ≈ 0.0708.
pub fn find_tight_b_for_l0<T: Real>(config: &SearchConfig) -> Result<TightBoundResult<T>, Error> {
    let eg = consts::exp_neg_gamma::<T>();
    bisect_tight_parameter(
        move |b: T| {
            Box::new(move |k: T| {
                eval_affine(
                    &AffineBound {
                        a: eg,
                        b,
                        name: "candidate",
                    },
                    k,
                )
            })
        },
        BoundSide::Lower,
        crate::bounds::NU_L0_B,
        config,
        "tight B for nuL0",
    )
}

/// The ν_L1 coefficients from the measured slope at `k = 1`:
/// `B = 2(ν'(1) - ln²2)`, `A = 2 ln 2 - B`, with `ν'(1)` from
/// Richardson-extrapolated central differences (steps 1e-4 and 5e-5).
///
/// Returns `(A, B)` after verifying tangency: the scaled margin at
/// `k = 1 ± 1e-3` stays on the lower side and shrinks quadratically.
pub fn derive_l1_coefficients<T: Real>() -> Result<(T, T), Error> {
    let slope = {
        let central = |h: f64| -> Result<T, Error> {
            let above = median(r::<T>(1.0 + h))?.value.natural();
            let below = median(r::<T>(1.0 - h))?.value.natural();
            Ok((above - below) / r(2.0 * h))
        };
        let coarse = central(1e-4)?;
        let fine = central(5e-5)?;
        (r::<T>(4.0) * fine - coarse) / r(3.0)
    };
    let ln2 = T::LN_2();
    let b = r::<T>(2.0) * (slope - ln2 * ln2);
    let a = r::<T>(2.0) * ln2 - b;
    // tangency: margins just off k = 1 are lower-side and O(Δk²)
    for k in [r::<T>(1.0 - 1e-3), r(1.0 + 1e-3)] {
        let margin = (a + b * k) - median(k)?.value.scaled;
        if margin > r(1e-9) || margin < r(-1e-4) {
            return Err(Error::Search(format!(
                "nuL1 tangency check failed: margin {margin} at k = {k}"
            )));
        }
    }
    Ok((a, b))
}

/// Table-2 numeric constant: the arctan parameter printed for the tight
/// lower bound.
pub const ARCTAN_TIGHT_LOWER_B: f64 = 0.205_282;

/// Largest `b` such that `(2/π)·atan(k/b)` stays above the ideal
/// interpolator everywhere, i.e. the interpolated median stays below ν —
/// the tight arctan lower bound (printed as 0.205282, tangent near
/// k ≈ 0.4184).
pub fn find_tight_arctan_lower<T: Real>(
    config: &SearchConfig,
) -> Result<TightBoundResult<T>, Error> {
    bisect_tight_parameter(
        |b: T| {
            Box::new(move |k: T| {
                interpolated_median(&Interpolator::Arctan { b }, k)
            })
        },
        BoundSide::Lower,
        ARCTAN_TIGHT_LOWER_B,
        config,
        "tight arctan lower bound",
    )
}

/// Which error the minimax search minimizes, as named in the comparison
/// table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimaxErrorKind {
    /// `max |ν - ν̃| / ν` (scale-free, identical in scaled space).
    Relative,
    /// `max |ν - ν̃|`; see [`ErrorMeasure`] for the scale question.
    Absolute,
}

/// The absolute-error scale is genuinely ambiguous: the comparison-table
/// formula reads `max |ν - ν̃|`, but every plot premultiplies by `2^(1/k)`.
/// Both are implemented; the natural scale is the one that reproduces the
/// printed 0.21008 (the scaled space gives 0.21504).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMeasure {
    /// `|m - m̃| / m` — same as natural-scale relative error.
    Relative,
    /// `|m - m̃|` — absolute error premultiplied by `2^(1/k)`.
    AbsoluteScaled,
    /// `2^(-1/k)·|m - m̃|` — absolute error on the natural scale.
    AbsoluteNatural,
}

/// A minimax optimum: parameter, achieved worst error, and where.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimaxResult<T> {
    pub b: T,
    pub max_error: T,
    pub argmax_k: T,
}

/// Golden-section minimax search over the arctan parameter `b ∈ [0.15, 0.3]`.
///
/// `Absolute` is evaluated in scaled space here; use
/// [`minimax_b_measure`] to pick the scale explicitly.
pub fn minimax_b<T: Real>(config: &SearchConfig, kind: MinimaxErrorKind) -> Result<T, Error> {
    let measure = match kind {
        MinimaxErrorKind::Relative => ErrorMeasure::Relative,
        MinimaxErrorKind::Absolute => ErrorMeasure::AbsoluteScaled,
    };
    Ok(minimax_b_measure(config, measure)?.b)
}

/// Minimax search with an explicit error measure.
pub fn minimax_b_measure<T: Real>(
    config: &SearchConfig,
    measure: ErrorMeasure,
) -> Result<MinimaxResult<T>, Error> {
    config.validate()?;
    let base = config.k_grid::<T>();
    let mut cache = MedianCache::new();
    for &k in &base {
        cache.m(k)?;
    }

    let point_error = |b: T, k: T, m: T| -> T {
        let g = r::<T>(2.0) / T::PI() * (k / b).atan();
        let m_tilde = consts::exp_neg_gamma::<T>() - g * consts::bound_gap::<T>() + k;
        let diff = (m_tilde - m).abs();
        match measure {
            ErrorMeasure::Relative => diff / m,
            ErrorMeasure::AbsoluteScaled => diff,
            ErrorMeasure::AbsoluteNatural => diff * (-T::LN_2() / k).exp(),
        }
    };

    let objective = |b: T, cache: &mut MedianCache<T>| -> Result<(T, T), Error> {
        let mut worst = (T::neg_infinity(), base[0]);
        let mut worst_idx = 0usize;
        for (i, &k) in base.iter().enumerate() {
            let e = point_error(b, k, cache.m(k)?);
            if e > worst.0 {
                worst = (e, k);
                worst_idx = i;
            }
        }
        // refine around the running argmax
        let mut lo = base[worst_idx.saturating_sub(1)];
        let mut hi = base[(worst_idx + 1).min(base.len() - 1)];
        for _ in 0..config.max_refinements {
            if hi <= lo {
                break;
            }
            let ratio = (hi / lo).ln() / r(20.0);
            let mut local = worst;
            let mut best_j = 0usize;
            for j in 0..=20usize {
                let k = lo * (ratio * r(j as f64)).exp();
                let e = point_error(b, k, cache.m(k)?);
                if e > local.0 {
                    local = (e, k);
                    best_j = j;
                }
            }
            worst = local;
            let step = ratio.exp();
            lo = if best_j == 0 { lo } else { local.1 / step };
            hi = if best_j == 20 { hi } else { local.1 * step };
        }
        Ok(worst)
    };

    // unimodality scan before descending
    let (scan_lo, scan_hi) = (0.15f64, 0.30f64);
    let scan_steps = 60usize;
    let mut values = Vec::with_capacity(scan_steps + 1);
    for i in 0..=scan_steps {
        let b = r::<T>(scan_lo + (scan_hi - scan_lo) * i as f64 / scan_steps as f64);
        values.push((b, objective(b, &mut cache)?.0));
    }
    let mut minima = Vec::new();
    for i in 1..scan_steps {
        if values[i].1 < values[i - 1].1 && values[i].1 < values[i + 1].1 {
            minima.push(values[i].0);
        }
    }
    if minima.len() != 1 {
        return Err(Error::Search(format!(
            "minimax objective is not unimodal on [{scan_lo}, {scan_hi}]; local minima at {minima:?}"
        )));
    }

    let step = r::<T>((scan_hi - scan_lo) / scan_steps as f64);
    let mut lo = minima[0] - step;
    let mut hi = minima[0] + step;
    let inv_phi = r::<T>(0.618_033_988_749_894_9);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = objective(c, &mut cache)?.0;
    let mut fd = objective(d, &mut cache)?.0;
    while (hi - lo) > r(config.param_tolerance) {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c, &mut cache)?.0;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d, &mut cache)?.0;
        }
    }
    let b = (lo + hi) * r(0.5);
    let (max_error, argmax_k) = objective(b, &mut cache)?;
    Ok(MinimaxResult {
        b,
        max_error,
        argmax_k,
    })
}

/// Margin/percentile sweep of a claimed bound over the refined grid.
#[derive(Debug, Clone)]
pub struct VerificationReport<T> {
    /// Claimed side.
    pub side: BoundSide,
    /// Per-point data, sorted by k (base grid plus refinement points).
    pub points: Vec<MarginPoint<T>>,
    pub min_percentile: T,
    pub max_percentile: T,
    /// The margin closest to (or beyond) the wrong side, and where.
    pub worst_margin: T,
    pub worst_margin_k: T,
    /// Whether the claimed side holds everywhere within tolerance.
    pub holds: bool,
}

/// Check a bound claim over the grid.
///
/// `parameter_quantum` is the decimal-print allowance for bounds whose
/// coefficients are catalog decimals ([`crate::bounds::CATALOG_DECIMAL_QUANTUM`]
/// for ν_L0/ν_L1, `0.0` for closed-form bounds): a coefficient printed to
/// seven decimals may sit up to 5e-8 beyond the true tight value, shifting
/// the graze margin by up to `quantum·(1 + k)`.
pub fn verify_bound_claim<T, F>(
    eval: F,
    side: BoundSide,
    config: &SearchConfig,
    parameter_quantum: f64,
) -> Result<VerificationReport<T>, Error>
where
    T: Real,
    F: Fn(T) -> Result<ScaledValue<T>, Error>,
{
    config.validate()?;
    let base = config.k_grid::<T>();
    let mut cache = MedianCache::new();
    let (_, graze_k) = max_violation_refined(&eval, side, config, &base, &mut cache)?;

    // assemble the report over base grid + the refined graze neighborhood
    let mut ks: Vec<T> = base.clone();
    let extra = 10usize;
    for j in 1..extra {
        let f = r::<T>(j as f64 / extra as f64);
        ks.push(graze_k * (T::one() + (f - r(0.5)) * r(0.02)));
    }
    ks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ks.dedup();

    let mut points = Vec::with_capacity(ks.len());
    let mut min_pct = T::infinity();
    let mut max_pct = T::neg_infinity();
    let mut worst = (T::neg_infinity(), ks[0]);
    let mut holds = true;
    for &k in &ks {
        let value = eval(k)?;
        let m = cache.m(k)?;
        let margin = value.scaled - m;
        let pct = percentile_of(&value)?;
        min_pct = min_pct.min(pct);
        max_pct = max_pct.max(pct);
        let v = violation(value.scaled, m, side);
        if v > worst.0 {
            worst = (v, k);
        }
        let allowed =
            r::<T>(config.margin_tolerance) * (T::one() + m) + r::<T>(parameter_quantum) * (T::one() + k);
        match side {
            BoundSide::Lower if margin > allowed => holds = false,
            BoundSide::Upper if margin < -allowed => holds = false,
            _ => {}
        }
        points.push(MarginPoint {
            k,
            scaled_margin: margin,
            percentile: pct,
        });
    }
    let worst_margin_k = worst.1;
    let worst_value = eval(worst_margin_k)?.scaled - cache.m(worst_margin_k)?;
    Ok(VerificationReport {
        side,
        points,
        min_percentile: min_pct,
        max_percentile: max_pct,
        worst_margin: worst_value,
        worst_margin_k,
        holds,
    })
}

/// Locate a genuine sign change of the margin `m̃(k) - m(k)` on the grid:
/// returns `(k_negative, k_positive)` where the margin clears the graze
/// tolerance on both sides, or `None` if the margin is one-signed.
pub fn find_sign_change<T, F>(
    eval: F,
    config: &SearchConfig,
) -> Result<Option<(T, T)>, Error>
where
    T: Real,
    F: Fn(T) -> Result<ScaledValue<T>, Error>,
{
    config.validate()?;
    let mut cache = MedianCache::new();
    let mut k_neg = None;
    let mut k_pos = None;
    for k in config.k_grid::<T>() {
        let m = cache.m(k)?;
        let margin = eval(k)?.scaled - m;
        let tol = r::<T>(config.margin_tolerance) * (T::one() + m);
        if margin < -tol && k_neg.is_none() {
            k_neg = Some(k);
        }
        if margin > tol && k_pos.is_none() {
            k_pos = Some(k);
        }
        if let (Some(n), Some(p)) = (k_neg, k_pos) {
            return Ok(Some((n, p)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundCatalog, NU_L1_A, NU_L1_B};

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        let c = SearchConfig {
            k_min: 0.01, // does not cover 1e-3
            ..SearchConfig::default()
        };
        assert!(c.validate().is_err());
        let c = SearchConfig {
            param_tolerance: 0.0,
            ..SearchConfig::default()
        };
        assert!(c.validate().is_err());
        let grid = SearchConfig::default().k_grid::<f64>();
        assert_eq!(grid.len(), 601);
        assert!((grid[0] - 1e-3).abs() < 1e-18);
        assert!((grid[600] - 1e3).abs() < 1e-12);
    }

    #[test]
    fn tight_b_for_l0_matches_reference() {
        let result = find_tight_b_for_l0::<f64>(&SearchConfig::default()).unwrap();
        // printed value 0.4596507; mpmath tight value 0.45965067617…
        assert!(
            (result.parameter - 0.4596507).abs() < 1e-5,
            "B = {}",
            result.parameter
        );
        assert!((result.parameter - 0.45965067617).abs() < 1e-6);
        assert!((result.graze_k - 0.0708).abs() < 1e-3, "graze {}", result.graze_k);
        assert_eq!(result.side, BoundSide::Lower);
        assert!(result.min_margin <= 0.0);
        assert!(result.min_margin.abs() <= 10.0 * 1e-7 * (1.0 + result.graze_k));
    }

    #[test]
    fn nu1_slope_is_not_a_feasible_b() {
        // B = e^(-γ)π²/12 crosses the median, so the sign-change detector
        // fires for ν₁ while the tight-B predicate stays below it.
        let catalog = BoundCatalog::<f64>::new();
        let config = SearchConfig::default();
        let crossing = find_sign_change(
            |k| eval_affine(&catalog.nu1, k),
            &config,
        )
        .unwrap();
        assert!(crossing.is_some());
        let tight = find_tight_b_for_l0::<f64>(&config).unwrap().parameter;
        assert!(tight < crate::consts::nu1_slope::<f64>());
    }

    #[test]
    fn l1_coefficients_from_the_slope() {
        let (a, b) = derive_l1_coefficients::<f64>().unwrap();
        assert!((b - NU_L1_B).abs() < 1e-5, "B = {b}");
        assert!((a - NU_L1_A).abs() < 1e-5, "A = {a}");
        // A + B = 2 ln 2 exactly by construction
        assert_eq!(a + b, 2.0 * std::f64::consts::LN_2);
        // against the high-precision slope 0.9680448304420445
        assert!((b - 0.9751836330476861).abs() < 1e-7);
    }

    #[test]
    fn tight_arctan_lower_matches_reference() {
        let result = find_tight_arctan_lower::<f64>(&SearchConfig::default()).unwrap();
        assert!(
            (result.parameter - 0.205282).abs() < 1e-5,
            "b = {}",
            result.parameter
        );
        // mpmath tight value 0.205282366768611
        assert!((result.parameter - 0.205282366768611).abs() < 5e-7);
        assert!((result.graze_k - 0.4184).abs() < 1e-2, "graze {}", result.graze_k);
        assert_eq!(result.side, BoundSide::Lower);
        assert!(result.min_margin <= 0.0, "margin {:e}", result.min_margin);
    }

    #[test]
    fn tightness_is_maximal() {
        let config = SearchConfig::default();
        let result = find_tight_arctan_lower::<f64>(&config).unwrap();
        let base = config.k_grid::<f64>();
        let mut cache = MedianCache::new();
        // raising b lowers g̃ and raises the interpolated median: infeasible
        let infeasible = result.parameter + 10.0 * config.param_tolerance;
        let eval = |b: f64| {
            move |k: f64| interpolated_median(&Interpolator::Arctan { b }, k)
        };
        let (v, _) =
            max_violation_refined(&eval(infeasible), BoundSide::Lower, &config, &base, &mut cache)
                .unwrap();
        assert!(v > config.margin_tolerance, "violation {v:e}");
        // nudged the other way: strictly one-sided margin
        let feasible = result.parameter - 10.0 * config.param_tolerance;
        let (v, _) =
            max_violation_refined(&eval(feasible), BoundSide::Lower, &config, &base, &mut cache)
                .unwrap();
        assert!(v < -config.margin_tolerance, "margin {v:e}");
    }

    #[test]
    fn searches_are_deterministic() {
        let config = SearchConfig::with_points_per_decade(50);
        let a = find_tight_b_for_l0::<f64>(&config).unwrap();
        let b = find_tight_b_for_l0::<f64>(&config).unwrap();
        assert_eq!(a.parameter.to_bits(), b.parameter.to_bits());
        assert_eq!(a.graze_k.to_bits(), b.graze_k.to_bits());
    }

    #[test]
    fn minimax_parameters_match_reference() {
        let config = SearchConfig::default();
        let rel = minimax_b_measure::<f64>(&config, ErrorMeasure::Relative).unwrap();
        assert!((rel.b - 0.21639).abs() < 2e-4, "relative b = {}", rel.b);
        assert!(rel.max_error < 0.01, "max rel error {}", rel.max_error);
        // the printed absolute value 0.21008 is reproduced on the natural
        // scale; scaled space lands near 0.21504
        let natural = minimax_b_measure::<f64>(&config, ErrorMeasure::AbsoluteNatural).unwrap();
        assert!((natural.b - 0.21008).abs() < 2e-4, "natural b = {}", natural.b);
        let scaled = minimax_b_measure::<f64>(&config, ErrorMeasure::AbsoluteScaled).unwrap();
        assert!((scaled.b - 0.21504).abs() < 1e-3, "scaled b = {}", scaled.b);
        // the two-kind surface defaults Absolute to scaled space
        let via_kind = minimax_b::<f64>(&config, MinimaxErrorKind::Absolute).unwrap();
        assert!((via_kind - scaled.b).abs() < 1e-12);
    }

    #[test]
    fn verify_bound_claim_passes_and_fails_correctly() {
        let catalog = BoundCatalog::<f64>::new();
        let config = SearchConfig::with_points_per_decade(25);
        let report = verify_bound_claim(
            |k| eval_affine(&catalog.nu_l_inf, k),
            BoundSide::Lower,
            &config,
            0.0,
        )
        .unwrap();
        assert!(report.holds);
        assert!(report.min_percentile > 48.0);
        assert!(report.max_percentile < 50.0 + 1e-9);
        // ν₁ claimed as a lower bound must fail
        let report = verify_bound_claim(
            |k| eval_affine(&catalog.nu1, k),
            BoundSide::Lower,
            &config,
            0.0,
        )
        .unwrap();
        assert!(!report.holds);
        assert!(report.worst_margin > 0.0);
        // the three closed-form interpolated bound rows hold on their sides
        let props = crate::interp::InterpolatorProperties::<f64>::closed_form();
        let rows: [(Interpolator<f64>, BoundSide); 3] = [
            (Interpolator::Rational1 { b0: 1.0 / props.p0 }, BoundSide::Upper),
            (Interpolator::Rational1 { b0: props.p_inf }, BoundSide::Lower),
            (
                Interpolator::Arctan {
                    b: 2.0 / std::f64::consts::PI / props.p0,
                },
                BoundSide::Upper,
            ),
        ];
        for (interp, side) in rows {
            let report = verify_bound_claim(
                |k| interpolated_median(&interp, k),
                side,
                &config,
                0.0,
            )
            .unwrap();
            assert!(report.holds, "{interp:?} fails as {side:?}");
        }
    }
}
