//! The quantitative verification suite.
//!
//! Every claim the library stakes out — median exactness, boundhood of the
//! catalog, percentile bands, re-derived parameters, asymptotic constants —
//! is mechanized here as a named claim with a measured extremum and a
//! pass/fail verdict. `gamma-median verify` runs them; the acceptance test
//! suite asserts them.

use std::cell::OnceCell;

use crate::bounds::{
    eval_affine, eval_berg_upper, eval_gamma_power_bound, percentile_of, BoundCatalog, BoundSide,
    CATALOG_DECIMAL_QUANTUM,
};
use crate::consts;
use crate::interp::{
    constrained_rational2, ideal_g, interpolated_median, table2_parameter, Criterion, Family,
    Interpolator, InterpolatorProperties,
};
use crate::median::{laurent_median, median, median_derivative};
use crate::search::{
    derive_l1_coefficients, find_sign_change, find_tight_arctan_lower, find_tight_b_for_l0,
    minimax_b_measure, verify_bound_claim, ErrorMeasure, MinimaxResult, SearchConfig,
    TightBoundResult, VerificationReport,
};
use crate::value::ScaledValue;
use crate::Error;

/// Shared state for one verification run: the configuration plus lazily
/// computed search results reused across claims.
pub struct ClaimContext {
    pub config: SearchConfig,
    catalog: BoundCatalog<f64>,
    l0: OnceCell<Result<TightBoundResult<f64>, Error>>,
    l1: OnceCell<Result<(f64, f64), Error>>,
    arctan_lower: OnceCell<Result<TightBoundResult<f64>, Error>>,
    minimax_rel: OnceCell<Result<MinimaxResult<f64>, Error>>,
    minimax_abs_scaled: OnceCell<Result<MinimaxResult<f64>, Error>>,
    minimax_abs_natural: OnceCell<Result<MinimaxResult<f64>, Error>>,
}

impl ClaimContext {
    pub fn new(config: SearchConfig) -> Result<Self, Error> {
        config.validate()?;
        Ok(Self {
            config,
            catalog: BoundCatalog::new(),
            l0: OnceCell::new(),
            l1: OnceCell::new(),
            arctan_lower: OnceCell::new(),
            minimax_rel: OnceCell::new(),
            minimax_abs_scaled: OnceCell::new(),
            minimax_abs_natural: OnceCell::new(),
        })
    }

    pub fn l0(&self) -> Result<TightBoundResult<f64>, Error> {
        self.l0
            .get_or_init(|| find_tight_b_for_l0(&self.config))
            .clone()
    }

    pub fn l1(&self) -> Result<(f64, f64), Error> {
        self.l1.get_or_init(derive_l1_coefficients).clone()
    }

    pub fn arctan_lower(&self) -> Result<TightBoundResult<f64>, Error> {
        self.arctan_lower
            .get_or_init(|| find_tight_arctan_lower(&self.config))
            .clone()
    }

    pub fn minimax(&self, measure: ErrorMeasure) -> Result<MinimaxResult<f64>, Error> {
        let cell = match measure {
            ErrorMeasure::Relative => &self.minimax_rel,
            ErrorMeasure::AbsoluteScaled => &self.minimax_abs_scaled,
            ErrorMeasure::AbsoluteNatural => &self.minimax_abs_natural,
        };
        cell.get_or_init(|| minimax_b_measure(&self.config, measure))
            .clone()
    }

    fn band(
        &self,
        eval: impl Fn(f64) -> Result<ScaledValue<f64>, Error>,
        side: BoundSide,
        quantum: f64,
    ) -> Result<VerificationReport<f64>, Error> {
        verify_bound_claim(eval, side, &self.config, quantum)
    }
}

/// Outcome of one claim.
#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: &'static str,
    /// Acceptance criterion the claim belongs to (1–13).
    pub criterion: u8,
    pub description: &'static str,
    pub measured: String,
    pub threshold: String,
    pub pass: bool,
}

type ClaimFn = fn(&ClaimContext) -> Result<(String, String, bool), Error>;

/// A named verifiable claim.
pub struct Claim {
    pub id: &'static str,
    pub criterion: u8,
    pub description: &'static str,
    run: ClaimFn,
}

/// Percentile-band edges get ±0.01 percentile points of slack.
const BAND_EDGE_TOL: f64 = 0.01;

fn fmt_range(lo: f64, hi: f64) -> String {
    format!("[{lo:.6}, {hi:.6}]")
}

// --- criterion 1: median exactness ---

fn median_percentile(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let mut worst = 0.0f64;
    for k in ctx.config.k_grid::<f64>() {
        let sol = median(k)?;
        let dev = (percentile_of(&sol.value)? - 50.0).abs();
        worst = worst.max(dev);
    }
    Ok((
        format!("max |percentile - 50| = {worst:.3e}"),
        "<= 1e-9".into(),
        worst <= 1e-9,
    ))
}

fn median_at_one(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    let nu = median(1.0)?.value.natural();
    let dev = (nu - std::f64::consts::LN_2).abs();
    Ok((
        format!("|nu(1) - ln 2| = {dev:.3e}"),
        "<= 1e-13".into(),
        dev <= 1e-13,
    ))
}

// --- criterion 2: Chen–Rubin bracket ---

fn chen_rubin(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let mut min_upper = f64::INFINITY;
    let mut min_lower = f64::INFINITY;
    for k in ctx.config.k_grid::<f64>() {
        let m = median(k)?.value.scaled;
        let pow = (std::f64::consts::LN_2 / k).exp();
        min_upper = min_upper.min(pow * k - m);
        min_lower = min_lower.min(m - pow * (k - 1.0 / 3.0));
    }
    Ok((
        format!("min scaled gaps: above k-1/3 {min_lower:.3e}, below k {min_upper:.3e}"),
        "both > 0".into(),
        min_lower > 0.0 && min_upper > 0.0,
    ))
}

// --- criterion 3: boundhood of the catalog ---

fn catalog_boundhood(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let catalog = &ctx.catalog;
    let mut all_hold = true;
    let mut worst: (f64, &str) = (f64::NEG_INFINITY, "");
    let mut check = |name: &'static str, report: VerificationReport<f64>| {
        if !report.holds {
            all_hold = false;
        }
        let toward_wrong_side = match report.side {
            BoundSide::Lower => report.worst_margin,
            BoundSide::Upper => -report.worst_margin,
        };
        if toward_wrong_side > worst.0 {
            worst = (toward_wrong_side, name);
        }
    };
    for (bound, side, printed) in catalog.entries() {
        let Some(side) = side else { continue };
        let quantum = if printed { CATALOG_DECIMAL_QUANTUM } else { 0.0 };
        check(bound.name, ctx.band(|k| eval_affine(bound, k), side, quantum)?);
    }
    check(
        "gamma_power",
        ctx.band(eval_gamma_power_bound, BoundSide::Lower, 0.0)?,
    );
    check("berg_upper", ctx.band(eval_berg_upper, BoundSide::Upper, 0.0)?);
    Ok((
        format!("worst margin toward wrong side {:.3e} ({})", worst.0, worst.1),
        "all 8 catalog bounds hold within tolerance".into(),
        all_hold,
    ))
}

// --- criterion 4: percentile bands ---

fn band_claim(
    report: &VerificationReport<f64>,
    lo: Option<f64>,
    hi: Option<f64>,
) -> (String, String, bool) {
    let measured = fmt_range(report.min_percentile, report.max_percentile);
    let mut pass = true;
    let mut threshold = String::new();
    if let Some(lo) = lo {
        threshold.push_str(&format!("min > {lo}"));
        pass &= report.min_percentile > lo - BAND_EDGE_TOL;
    }
    if let Some(hi) = hi {
        if !threshold.is_empty() {
            threshold.push_str(", ");
        }
        threshold.push_str(&format!("max < {hi}"));
        pass &= report.max_percentile < hi + BAND_EDGE_TOL;
    }
    (measured, threshold, pass)
}

fn nu_l_inf_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let report = ctx.band(
        |k| eval_affine(&ctx.catalog.nu_l_inf, k),
        BoundSide::Lower,
        0.0,
    )?;
    Ok(band_claim(&report, Some(48.0), Some(50.0)))
}

fn nu_u_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let report = ctx.band(|k| eval_affine(&ctx.catalog.nu_u, k), BoundSide::Upper, 0.0)?;
    Ok(band_claim(&report, Some(50.0), Some(55.0)))
}

fn rational_pair_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let props = InterpolatorProperties::<f64>::closed_form();
    let upper = Interpolator::rational1(1.0 / props.p0)?;
    let lower = Interpolator::rational1(props.p_inf)?;
    let up = ctx.band(|k| interpolated_median(&upper, k), BoundSide::Upper, 0.0)?;
    let low = ctx.band(|k| interpolated_median(&lower, k), BoundSide::Lower, 0.0)?;
    let min = up.min_percentile.min(low.min_percentile);
    let max = up.max_percentile.max(low.max_percentile);
    Ok((
        fmt_range(min, max),
        "within (49.69, 50.85)".into(),
        min > 49.69 - BAND_EDGE_TOL && max < 50.85 + BAND_EDGE_TOL,
    ))
}

fn arctan_low_k_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let b = table2_parameter::<f64>(Family::Arctan, Criterion::BestLowK)?;
    let interp = Interpolator::arctan(b)?;
    let report = ctx.band(|k| interpolated_median(&interp, k), BoundSide::Upper, 0.0)?;
    Ok(band_claim(&report, None, Some(50.18)))
}

fn arctan_tight_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let interp = Interpolator::arctan(crate::search::ARCTAN_TIGHT_LOWER_B)?;
    let report = ctx.band(
        |k| interpolated_median(&interp, k),
        BoundSide::Lower,
        CATALOG_DECIMAL_QUANTUM,
    )?;
    Ok(band_claim(&report, Some(49.96), None))
}

fn arctan_exact1_band(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let b = table2_parameter::<f64>(Family::Arctan, Criterion::ExactAtOne)?;
    let interp = Interpolator::arctan(b)?;
    let report = ctx.band(|k| interpolated_median(&interp, k), BoundSide::Lower, 0.0)?;
    Ok(band_claim(&report, Some(49.97), Some(50.03)))
}

// --- criterion 5: slope at k = 1 ---

fn slope_at_one(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    let d = median_derivative(1.0f64)?;
    let dev = (d - 0.9680448).abs();
    Ok((
        format!("nu'(1) = {d:.9}"),
        "0.9680448 +/- 1e-6".into(),
        dev <= 1e-6,
    ))
}

// --- criterion 6: re-derived parameters ---

fn l0_parameter(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let result = ctx.l0()?;
    let dev = (result.parameter - 0.4596507).abs();
    Ok((
        format!(
            "B = {:.9}, graze k = {:.5}",
            result.parameter, result.graze_k
        ),
        "B = 0.4596507 +/- 1e-5".into(),
        dev <= 1e-5,
    ))
}

fn l1_parameters(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let (a, b) = ctx.l1()?;
    let dev_a = (a - 0.4111107).abs();
    let dev_b = (b - 0.9751836).abs();
    Ok((
        format!("A = {a:.9}, B = {b:.9}"),
        "(0.4111107, 0.9751836) +/- 1e-5".into(),
        dev_a <= 1e-5 && dev_b <= 1e-5,
    ))
}

fn arctan_lower_parameter(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let result = ctx.arctan_lower()?;
    let dev_b = (result.parameter - 0.205282).abs();
    let dev_k = (result.graze_k - 0.4184).abs();
    Ok((
        format!(
            "b = {:.9}, tangency k = {:.5}",
            result.parameter, result.graze_k
        ),
        "b = 0.205282 +/- 1e-5, tangency 0.4184 +/- 1e-2".into(),
        dev_b <= 1e-5 && dev_k <= 1e-2,
    ))
}

fn minimax_relative(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let result = ctx.minimax(ErrorMeasure::Relative)?;
    let dev = (result.b - 0.21639).abs();
    Ok((
        format!("b = {:.7}", result.b),
        "0.21639 +/- 2e-4".into(),
        dev <= 2e-4,
    ))
}

fn minimax_absolute(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let scaled = ctx.minimax(ErrorMeasure::AbsoluteScaled)?;
    let natural = ctx.minimax(ErrorMeasure::AbsoluteNatural)?;
    let dev_scaled = (scaled.b - 0.21008).abs();
    let dev_natural = (natural.b - 0.21008).abs();
    let which = if dev_natural <= 2e-4 {
        "natural matches"
    } else if dev_scaled <= 2e-4 {
        "scaled matches"
    } else {
        "neither matches"
    };
    Ok((
        format!(
            "scaled b = {:.7}, natural b = {:.7} ({which})",
            scaled.b, natural.b
        ),
        "one scale = 0.21008 +/- 2e-4 (both reported)".into(),
        dev_scaled <= 2e-4 || dev_natural <= 2e-4,
    ))
}

// --- criterion 7: interpolator properties ---

fn interpolator_properties(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    let p = InterpolatorProperties::<f64>::closed_form();
    let dev0 = (p.p0 - 2.66913).abs();
    let dev_inf = (p.p_inf - 0.143472).abs();
    let dev1 = (p.p1 - 0.868678).abs();
    Ok((
        format!("P0 = {:.7}, Pinf = {:.7}, P1 = {:.7}", p.p0, p.p_inf, p.p1),
        "2.66913 / 0.143472 / 0.868678, each +/- 1e-5".into(),
        dev0 <= 1e-5 && dev_inf <= 1e-5 && dev1 <= 1e-5,
    ))
}

fn ideal_g_slopes(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    let p = InterpolatorProperties::<f64>::closed_form();
    let low = ideal_g(1e-4)? / 1e-4;
    let high = (1.0 - ideal_g(1e4)?) * 1e4;
    let rel_low = ((low - p.p0) / p.p0).abs();
    let rel_high = ((high - p.p_inf) / p.p_inf).abs();
    Ok((
        format!("g/k at 1e-4: {low:.6}; (1-g)k at 1e4: {high:.7}"),
        "match P0 and Pinf within 1e-3 relative".into(),
        rel_low <= 1e-3 && rel_high <= 1e-3,
    ))
}

// --- criterion 8: table 2 closed forms ---

fn table2_closed_forms(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    let rows: [(Family, Criterion, f64); 6] = [
        (Family::Rational1, Criterion::BestLowK, 0.374654),
        (Family::Rational1, Criterion::ExactAtOne, 0.151175),
        (Family::Rational1, Criterion::BestHighK, 0.143472),
        (Family::Arctan, Criterion::BestLowK, 0.238512),
        (Family::Arctan, Criterion::BestHighK, 0.225366),
        (Family::Arctan, Criterion::ExactAtOne, 0.209257),
    ];
    let mut worst = 0.0f64;
    for (family, criterion, printed) in rows {
        let value = table2_parameter::<f64>(family, criterion)?;
        worst = worst.max((value - printed).abs());
    }
    Ok((
        format!("worst |closed form - printed| = {worst:.3e}"),
        "<= 1e-6 over all six rows".into(),
        worst <= 1e-6,
    ))
}

// --- criterion 9: non-bound detection ---

fn sign_change_claim(
    ctx: &ClaimContext,
    eval: impl Fn(f64) -> Result<ScaledValue<f64>, Error>,
) -> Result<(String, String, bool), Error> {
    let change = find_sign_change(eval, &ctx.config)?;
    Ok(match change {
        Some((neg, pos)) => (
            format!("margin < 0 at k = {neg:.4}, > 0 at k = {pos:.4}"),
            "sign change exists".into(),
            true,
        ),
        None => (
            "margin is one-signed on the grid".into(),
            "sign change exists".into(),
            false,
        ),
    })
}

fn nu1_not_a_bound(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    sign_change_claim(ctx, |k| eval_affine(&ctx.catalog.nu1, k))
}

fn arctan_high_k_not_a_bound(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let b = table2_parameter::<f64>(Family::Arctan, Criterion::BestHighK)?;
    let interp = Interpolator::arctan(b)?;
    sign_change_claim(ctx, |k| interpolated_median(&interp, k))
}

fn rational_exact1_not_a_bound(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let b0 = table2_parameter::<f64>(Family::Rational1, Criterion::ExactAtOne)?;
    let interp = Interpolator::rational1(b0)?;
    sign_change_claim(ctx, |k| interpolated_median(&interp, k))
}

fn rational2_not_a_bound(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let interp = constrained_rational2::<f64>()?;
    sign_change_claim(ctx, |k| interpolated_median(&interp, k))
}

// --- criterion 10: asymptotic margin constants ---

fn nu_l_inf_high_k_asymptote(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let k = ctx.config.k_max;
    let sol = median(k)?;
    let bound = eval_affine(&ctx.catalog.nu_l_inf, k)?;
    let measured = k * (sol.value.natural() - bound.natural());
    let limit = 8.0 / 405.0 - std::f64::consts::LN_2 / 3.0 + std::f64::consts::LN_2.powi(2) / 2.0;
    let rel = ((measured - limit) / limit).abs();
    Ok((
        format!("k (nu - nu_Linf) = {measured:.6} at k = {k}"),
        format!("{limit:.6} within 2%"),
        rel <= 0.02,
    ))
}

fn nu_u_low_k_asymptote(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let k = ctx.config.k_min;
    let m = median(k)?.value.scaled;
    let m_u = consts::exp_neg_gamma::<f64>() + k;
    let measured = (m_u - m) / k;
    let limit = 1.0 - consts::nu1_slope::<f64>();
    let rel = ((measured - limit) / limit).abs();
    Ok((
        format!("(m_U - m)/k = {measured:.6} at k = {k}"),
        format!("{limit:.6} within 2%"),
        rel <= 0.02,
    ))
}

fn nu_u_high_k_margin(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let k = ctx.config.k_max;
    let sol = median(k)?;
    let bound = eval_affine(&ctx.catalog.nu_u, k)?;
    let measured = bound.natural() - sol.value.natural();
    Ok((
        format!("nu_U - nu = {measured:.6} at k = {k}"),
        "0.2016 +/- 0.002".into(),
        (measured - 0.2016).abs() <= 0.002,
    ))
}

// --- criterion 11: crossover with k - 1/3 ---

fn crossover(_: &ClaimContext) -> Result<(String, String, bool), Error> {
    // root of m_Linf(k) - 2^(1/k)(k - 1/3): above it nu_Linf is the looser
    // lower bound
    let h = |k: f64| {
        (consts::ln2_minus_third::<f64>() + k)
            - (std::f64::consts::LN_2 / k).exp() * (k - 1.0 / 3.0)
    };
    let (mut lo, mut hi) = (2.5f64, 3.5f64);
    if !(h(lo) > 0.0 && h(hi) < 0.0) {
        return Err(Error::Search("crossover not bracketed in [2.5, 3.5]".into()));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k_star = 0.5 * (lo + hi);
    Ok((
        format!("sign flip at k = {k_star:.5}"),
        "3.021 +/- 0.01".into(),
        (k_star - 3.021).abs() <= 0.01,
    ))
}

// --- criterion 12: Laurent boundhood ---

fn laurent_boundhood(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let mut worst_upper = f64::INFINITY;
    let mut worst_lower = f64::INFINITY;
    let mut pass = true;
    for k in ctx.config.k_grid::<f64>() {
        if k < 2.0 {
            continue;
        }
        let nu = median(k)?.value.natural();
        let slack = ctx.config.margin_tolerance * (1.0 + nu);
        let upper_gap = laurent_median(k, 3)? - nu;
        let lower_gap = nu - laurent_median(k, 5)?;
        worst_upper = worst_upper.min(upper_gap);
        worst_lower = worst_lower.min(lower_gap);
        pass &= upper_gap >= -slack && lower_gap >= -slack;
    }
    Ok((
        format!("min gaps: j<=3 above nu {worst_upper:.3e}, j<=5 below nu {worst_lower:.3e}"),
        "one-sided within margin tolerance on [2, 1e3]".into(),
        pass,
    ))
}

// --- criterion 13: minimax relative error under 1% ---

fn minimax_relative_error(ctx: &ClaimContext) -> Result<(String, String, bool), Error> {
    let result = ctx.minimax(ErrorMeasure::Relative)?;
    Ok((
        format!(
            "max |nu - nu~|/nu = {:.5e} at k = {:.4}",
            result.max_error, result.argmax_k
        ),
        "< 1%".into(),
        result.max_error < 0.01,
    ))
}

/// The full registry, ordered by acceptance criterion.
pub fn claims() -> &'static [Claim] {
    &[
        Claim { id: "median-percentile", criterion: 1, description: "solved medians sit at the 50th percentile across the grid", run: median_percentile },
        Claim { id: "median-at-one", criterion: 1, description: "nu(1) equals ln 2", run: median_at_one },
        Claim { id: "chen-rubin", criterion: 2, description: "k - 1/3 < nu < k on the grid (scaled comparison)", run: chen_rubin },
        Claim { id: "catalog-boundhood", criterion: 3, description: "all catalog bounds sit on their claimed side", run: catalog_boundhood },
        Claim { id: "nuLinf-percentile-band", criterion: 4, description: "nu_Linf percentile stays in (48, 50)", run: nu_l_inf_band },
        Claim { id: "nuU-percentile-band", criterion: 4, description: "nu_U percentile stays in (50, 55)", run: nu_u_band },
        Claim { id: "rational-pair-band", criterion: 4, description: "tight rational pair stays in (49.69, 50.85)", run: rational_pair_band },
        Claim { id: "arctan-lowk-band", criterion: 4, description: "arctan low-k upper bound stays below 50.18", run: arctan_low_k_band },
        Claim { id: "arctan-tight-band", criterion: 4, description: "arctan tight lower bound stays above 49.96", run: arctan_tight_band },
        Claim { id: "arctan-exact1-band", criterion: 4, description: "arctan exact-at-1 stays in (49.97, 50.03)", run: arctan_exact1_band },
        Claim { id: "slope-at-one", criterion: 5, description: "median slope at k = 1 is 0.9680448", run: slope_at_one },
        Claim { id: "L0-parameter", criterion: 6, description: "tight nu_L0 coefficient re-derived", run: l0_parameter },
        Claim { id: "L1-parameters", criterion: 6, description: "nu_L1 coefficients re-derived from the slope", run: l1_parameters },
        Claim { id: "arctan-lower-parameter", criterion: 6, description: "tight arctan lower parameter and tangency re-derived", run: arctan_lower_parameter },
        Claim { id: "minimax-relative", criterion: 6, description: "minimax relative-error parameter re-derived", run: minimax_relative },
        Claim { id: "minimax-absolute", criterion: 6, description: "minimax absolute-error parameter re-derived (both scales)", run: minimax_absolute },
        Claim { id: "interpolator-properties", criterion: 7, description: "P0, Pinf, P1 match their closed forms", run: interpolator_properties },
        Claim { id: "ideal-g-slopes", criterion: 7, description: "ideal interpolator slopes match P0 and Pinf", run: ideal_g_slopes },
        Claim { id: "table2-closed-forms", criterion: 8, description: "six closed-form parameters match printed values", run: table2_closed_forms },
        Claim { id: "nu1-not-a-bound", criterion: 9, description: "nu1 margin changes sign", run: nu1_not_a_bound },
        Claim { id: "arctan-highk-not-a-bound", criterion: 9, description: "arctan best-at-high-k margin changes sign", run: arctan_high_k_not_a_bound },
        Claim { id: "rational-exact1-not-a-bound", criterion: 9, description: "rational exact-at-1 margin changes sign", run: rational_exact1_not_a_bound },
        Claim { id: "rational2-not-a-bound", criterion: 9, description: "constrained rational2 margin changes sign", run: rational2_not_a_bound },
        Claim { id: "nuLinf-highk-asymptote", criterion: 10, description: "high-k margin constant of nu_Linf", run: nu_l_inf_high_k_asymptote },
        Claim { id: "nuU-lowk-asymptote", criterion: 10, description: "low-k margin slope of nu_U", run: nu_u_low_k_asymptote },
        Claim { id: "nuU-highk-margin", criterion: 10, description: "high-k margin of nu_U near 0.2016", run: nu_u_high_k_margin },
        Claim { id: "crossover", criterion: 11, description: "nu_Linf crosses k - 1/3 at 3.021", run: crossover },
        Claim { id: "laurent-boundhood", criterion: 12, description: "Laurent j<=3 / j<=5 sums bound nu on [2, 1e3]", run: laurent_boundhood },
        Claim { id: "minimax-max-relative-error", criterion: 13, description: "minimax arctan stays under 1% relative error", run: minimax_relative_error },
    ]
}

/// All claim ids, in registry order.
pub fn claim_ids() -> Vec<&'static str> {
    claims().iter().map(|c| c.id).collect()
}

/// Run a single claim by id.
pub fn run_claim(ctx: &ClaimContext, id: &str) -> Result<ClaimResult, Error> {
    let claim = claims()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownRow(format!("unknown claim id '{id}'")))?;
    let (measured, threshold, pass) = (claim.run)(ctx)?;
    Ok(ClaimResult {
        id: claim.id,
        criterion: claim.criterion,
        description: claim.description,
        measured,
        threshold,
        pass,
    })
}

/// Run every claim in registry order.
pub fn run_all(ctx: &ClaimContext) -> Result<Vec<ClaimResult>, Error> {
    claims().iter().map(|c| run_claim(ctx, c.id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_all_thirteen_criteria() {
        let mut seen = [false; 14];
        for claim in claims() {
            assert!((1..=13).contains(&claim.criterion));
            seen[claim.criterion as usize] = true;
        }
        assert!(seen[1..].iter().all(|&s| s), "criterion without a claim");
        let mut ids = claim_ids();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), claims().len());
    }

    #[test]
    fn unknown_claim_is_rejected() {
        let ctx = ClaimContext::new(SearchConfig::default()).unwrap();
        assert!(matches!(
            run_claim(&ctx, "no-such-claim"),
            Err(Error::UnknownRow(_))
        ));
    }

    #[test]
    fn cheap_claims_pass_on_a_coarse_grid() {
        let ctx = ClaimContext::new(SearchConfig::with_points_per_decade(10)).unwrap();
        for id in [
            "median-at-one",
            "chen-rubin",
            "nuU-percentile-band",
            "interpolator-properties",
            "crossover",
            "nu1-not-a-bound",
        ] {
            let result = run_claim(&ctx, id).unwrap();
            assert!(result.pass, "{id} failed: {}", result.measured);
        }
    }
}
