//! Implementations behind the `gamma-median` subcommands: median evaluation,
//! the two catalog tables, figure-data CSV export, claim verification, and
//! parameter searches, plus the plain-text search cache.

use std::fs;
use std::path::PathBuf;

use crate::bounds::{
    ab_locus, eval_affine, eval_berg_upper, percentile_of, BoundCatalog,
};
use crate::claims::{claim_ids, run_claim, ClaimContext, ClaimResult};
use crate::consts;
use crate::interp::{
    a_of_k, b_of_k, ideal_g, interpolated_median, table2_parameter, Criterion, Family,
    Interpolator, InterpolatorProperties,
};
use crate::median::{median, K_MAX, K_MIN};
use crate::search::{
    find_tight_arctan_lower, find_tight_b_for_l0, minimax_b_measure, ErrorMeasure, SearchConfig,
};
use crate::table::{Cell, OutputTable};
use crate::value::ScaledValue;
use crate::Error;

/// Environment variable overriding the search-cache directory.
pub const CACHE_DIR_ENV: &str = "GAMMA_MEDIAN_CACHE_DIR";

/// Natural-scale medians are omitted from CSV output beyond this |ln x|.
const NATURAL_PRINT_LIMIT: f64 = 700.0;

fn median_row(k: f64) -> Result<Vec<Cell>, Error> {
    let sol = median(k)?;
    let natural = if sol.value.log_natural.abs() > NATURAL_PRINT_LIMIT {
        Cell::Empty
    } else {
        Cell::Num(sol.value.natural())
    };
    Ok(vec![
        Cell::Num(k),
        Cell::Num(sol.value.scaled),
        Cell::Num(sol.value.log_natural),
        natural,
        Cell::Num(sol.cdf_residual),
    ])
}

fn median_table() -> OutputTable {
    OutputTable::new(&[
        "k",
        "scaled_median",
        "log_natural_median",
        "natural_median",
        "cdf_residual",
    ])
}

/// `median --k <value>`.
pub fn cmd_median_single(k: f64) -> Result<OutputTable, Error> {
    let mut table = median_table();
    table.push(median_row(k)?)?;
    Ok(table)
}

/// `median --k-min --k-max --per-decade`.
pub fn cmd_median_range(k_min: f64, k_max: f64, per_decade: usize) -> Result<OutputTable, Error> {
    if !(k_min >= K_MIN && k_max <= K_MAX && k_min < k_max) {
        return Err(Error::Domain(format!(
            "median range must satisfy {K_MIN:e} <= k_min < k_max <= {K_MAX:e}, \
             got [{k_min}, {k_max}]"
        )));
    }
    if per_decade == 0 {
        return Err(Error::Domain("per-decade must be at least 1".into()));
    }
    let mut table = median_table();
    table.meta(format!(
        "grid: geometric [{k_min:e}, {k_max:e}] at {per_decade} points per decade"
    ));
    let decades = (k_max / k_min).log10();
    let steps = (decades * per_decade as f64).round().max(1.0) as usize;
    for i in 0..=steps {
        let k = if i == steps {
            k_max
        } else {
            k_min * 10f64.powf(i as f64 / per_decade as f64)
        };
        table.push(median_row(k)?)?;
    }
    Ok(table)
}

/// Results of all numeric searches at one configuration, as cached on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CachedSearches {
    pub l0_b: f64,
    pub l0_graze: f64,
    pub l1_a: f64,
    pub l1_b: f64,
    pub arctan_lower_b: f64,
    pub arctan_lower_graze: f64,
    pub minimax_rel_b: f64,
    pub minimax_rel_err: f64,
    pub minimax_abs_scaled_b: f64,
    pub minimax_abs_natural_b: f64,
}

impl CachedSearches {
    fn compute(config: &SearchConfig) -> Result<Self, Error> {
        let l0 = find_tight_b_for_l0::<f64>(config)?;
        let (l1_a, l1_b) = crate::search::derive_l1_coefficients::<f64>()?;
        let arctan = find_tight_arctan_lower::<f64>(config)?;
        let rel = minimax_b_measure::<f64>(config, ErrorMeasure::Relative)?;
        let abs_scaled = minimax_b_measure::<f64>(config, ErrorMeasure::AbsoluteScaled)?;
        let abs_natural = minimax_b_measure::<f64>(config, ErrorMeasure::AbsoluteNatural)?;
        Ok(Self {
            l0_b: l0.parameter,
            l0_graze: l0.graze_k,
            l1_a,
            l1_b,
            arctan_lower_b: arctan.parameter,
            arctan_lower_graze: arctan.graze_k,
            minimax_rel_b: rel.b,
            minimax_rel_err: rel.max_error,
            minimax_abs_scaled_b: abs_scaled.b,
            minimax_abs_natural_b: abs_natural.b,
        })
    }

    fn fields(&self) -> [(&'static str, f64); 10] {
        [
            ("l0_b", self.l0_b),
            ("l0_graze", self.l0_graze),
            ("l1_a", self.l1_a),
            ("l1_b", self.l1_b),
            ("arctan_lower_b", self.arctan_lower_b),
            ("arctan_lower_graze", self.arctan_lower_graze),
            ("minimax_rel_b", self.minimax_rel_b),
            ("minimax_rel_err", self.minimax_rel_err),
            ("minimax_abs_scaled_b", self.minimax_abs_scaled_b),
            ("minimax_abs_natural_b", self.minimax_abs_natural_b),
        ]
    }
}

/// Plain-text cache for the numeric search results, keyed by a hash of the
/// search configuration. Location: `$GAMMA_MEDIAN_CACHE_DIR`, defaulting to
/// `<system temp>/gamma-median-cache`.
pub struct SearchCache {
    path: PathBuf,
}

impl SearchCache {
    pub fn for_config(config: &SearchConfig) -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("gamma-median-cache"));
        let key = fnv1a(format!(
            "{:e}|{:e}|{}|{:e}|{:e}|{}",
            config.k_min,
            config.k_max,
            config.points_per_decade,
            config.param_tolerance,
            config.margin_tolerance,
            config.max_refinements
        )
        .as_bytes());
        Self {
            path: dir.join(format!("search-{key:016x}.txt")),
        }
    }

    fn load(&self) -> Option<CachedSearches> {
        let text = fs::read_to_string(&self.path).ok()?;
        let mut values = std::collections::HashMap::new();
        for line in text.lines() {
            let mut parts = line.split_whitespace();
            let name = parts.next()?;
            let value: f64 = parts.next()?.parse().ok()?;
            values.insert(name.to_string(), value);
        }
        let get = |name: &str| values.get(name).copied();
        Some(CachedSearches {
            l0_b: get("l0_b")?,
            l0_graze: get("l0_graze")?,
            l1_a: get("l1_a")?,
            l1_b: get("l1_b")?,
            arctan_lower_b: get("arctan_lower_b")?,
            arctan_lower_graze: get("arctan_lower_graze")?,
            minimax_rel_b: get("minimax_rel_b")?,
            minimax_rel_err: get("minimax_rel_err")?,
            minimax_abs_scaled_b: get("minimax_abs_scaled_b")?,
            minimax_abs_natural_b: get("minimax_abs_natural_b")?,
        })
    }

    fn store(&self, results: &CachedSearches) {
        // best effort: a read-only cache dir just means recomputing next time
        if let Some(parent) = self.path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let mut text = String::new();
        for (name, value) in results.fields() {
            text.push_str(&format!("{name} {value:.16e}\n"));
        }
        let _ = fs::write(&self.path, text);
    }

    /// Load the cached results or run the searches and cache them.
    pub fn get_or_compute(&self, config: &SearchConfig) -> Result<CachedSearches, Error> {
        if let Some(cached) = self.load() {
            return Ok(cached);
        }
        let results = CachedSearches::compute(config)?;
        self.store(&results);
        Ok(results)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Which catalog table to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// The affine bound catalog and non-affine bounds.
    Table1,
    /// The one-parameter interpolated bounds and approximations.
    Table2,
}

/// `table --which table1|table2`.
pub fn cmd_table(kind: TableKind, config: &SearchConfig) -> Result<OutputTable, Error> {
    match kind {
        TableKind::Table1 => table1(),
        TableKind::Table2 => table2(config),
    }
}

fn table1() -> Result<OutputTable, Error> {
    let catalog = BoundCatalog::<f64>::new();
    let mut table = OutputTable::new(&["name", "A", "B", "formula", "side"]);
    table.meta("median bounds and asymptotes; affine rows are 2^(-1/k)(A + B k)");
    table.push(vec![
        Cell::text("median"),
        Cell::Empty,
        Cell::Empty,
        Cell::text("nu(k): true median of the gamma distribution"),
        Cell::Empty,
    ])?;
    table.push(vec![
        Cell::text("berg_upper"),
        Cell::Empty,
        Cell::Empty,
        Cell::text("exp(-1/(3k)) k"),
        Cell::text("U"),
    ])?;
    table.push(vec![
        Cell::text("gamma_power"),
        Cell::Empty,
        Cell::Empty,
        Cell::text("2^(-1/k) Gamma(k+1)^(1/k)"),
        Cell::text("L"),
    ])?;
    let formulas: [(&str, &str, &str); 7] = [
        ("berg_lower", "A = 0; B = 1", "L"),
        ("nu0", "A = e^(-gamma); B = 0", "L"),
        ("nu1", "A = e^(-gamma); B = e^(-gamma) pi^2 / 12", "-"),
        ("nuL0", "A = e^(-gamma); B numeric (tight at low k)", "L"),
        ("nuL1", "A and B numeric (tangent at k = 1)", "L"),
        ("nuLinf", "A = ln 2 - 1/3; B = 1", "L"),
        ("nuU", "A = e^(-gamma); B = 1", "U"),
    ];
    for ((bound, _, _), (name, formula, side)) in catalog.entries().iter().zip(formulas) {
        debug_assert_eq!(bound.name, name);
        table.push(vec![
            Cell::text(name),
            Cell::Num(bound.a),
            Cell::Num(bound.b),
            Cell::text(formula),
            Cell::text(side),
        ])?;
    }
    Ok(table)
}

fn table2(config: &SearchConfig) -> Result<OutputTable, Error> {
    let cache = SearchCache::for_config(config);
    let searched = cache.get_or_compute(config)?;
    let mut table = OutputTable::new(&["family", "criterion", "formula", "parameter", "side"]);
    table.meta("one-parameter interpolated bounds g~(k) nu_Linf + (1 - g~(k)) nu_U");
    let closed: [(Family, Criterion, &str, &str, &str, &str); 6] = [
        (Family::Rational1, Criterion::BestLowK, "rational1", "best-low-k", "b0 = 1/P0", "U"),
        (Family::Rational1, Criterion::ExactAtOne, "rational1", "exact-at-1", "b0 = 1/P1 - 1", "-"),
        (Family::Rational1, Criterion::BestHighK, "rational1", "best-high-k", "b0 = Pinf", "L"),
        (Family::Arctan, Criterion::BestLowK, "arctan", "best-low-k", "b = (2/pi)/P0", "U"),
        (Family::Arctan, Criterion::BestHighK, "arctan", "best-high-k", "b = (pi/2) Pinf", "-"),
        (Family::Arctan, Criterion::ExactAtOne, "arctan", "exact-at-1", "b = cot((pi/2) P1)", "-"),
    ];
    for (family, criterion, fam_name, crit_name, formula, side) in closed {
        table.push(vec![
            Cell::text(fam_name),
            Cell::text(crit_name),
            Cell::text(formula),
            Cell::Num(table2_parameter::<f64>(family, criterion)?),
            Cell::text(side),
        ])?;
    }
    table.push(vec![
        Cell::text("arctan"),
        Cell::text("minimax-relative"),
        Cell::text("argmin_b max |nu - nu~| / nu"),
        Cell::Num(searched.minimax_rel_b),
        Cell::text("-"),
    ])?;
    table.push(vec![
        Cell::text("arctan"),
        Cell::text("minimax-absolute"),
        Cell::text("argmin_b max |nu - nu~| (natural scale; scaled variant differs)"),
        Cell::Num(searched.minimax_abs_natural_b),
        Cell::text("-"),
    ])?;
    table.push(vec![
        Cell::text("arctan"),
        Cell::text("tangent-lower"),
        Cell::text(format!(
            "largest b keeping a lower bound; tangent near k = {:.4}",
            searched.arctan_lower_graze
        )),
        Cell::Num(searched.arctan_lower_b),
        Cell::text("L"),
    ])?;
    Ok(table)
}

/// `figure --fig N`: the CSV data underlying each plot.
pub fn cmd_figure(fig: u8, config: &SearchConfig) -> Result<OutputTable, Error> {
    match fig {
        1 => figure_prior_bounds(config),
        2 => figure_ab_locus(false),
        3 => figure_ab_locus(true),
        4 => figure_new_bounds(config),
        5 => figure_percentiles(config),
        6 => figure_a_b_functions(config),
        7 => figure_interpolators(config),
        8 => figure_relative_errors(config),
        _ => Err(Error::Domain(format!("figure id must be 1..=8, got {fig}"))),
    }
}

fn figure_prior_bounds(config: &SearchConfig) -> Result<OutputTable, Error> {
    let mut table = OutputTable::new(&[
        "k",
        "median_scaled",
        "chen_upper_scaled",
        "chen_upper_margin",
        "chen_lower_scaled",
        "chen_lower_margin",
        "berg_upper_scaled",
        "berg_upper_margin",
        "berg_lower_scaled",
        "berg_lower_margin",
        "nu0_scaled",
        "nu0_margin",
    ]);
    table.meta("previously published bounds, scaled by 2^(1/k); margins are value - median");
    for k in config.k_grid::<f64>() {
        let m = median(k)?.value.scaled;
        let pow = (std::f64::consts::LN_2 / k).exp();
        let chen_upper = pow * k;
        let chen_lower = pow * (k - 1.0 / 3.0);
        let berg_upper = eval_berg_upper(k)?.scaled;
        let berg_lower = k; // 2^(1/k) · 2^(-1/k) k
        let nu0 = consts::exp_neg_gamma::<f64>();
        table.push(vec![
            Cell::Num(k),
            Cell::Num(m),
            Cell::Num(chen_upper),
            Cell::Num(chen_upper - m),
            Cell::Num(chen_lower),
            Cell::Num(chen_lower - m),
            Cell::Num(berg_upper),
            Cell::Num(berg_upper - m),
            Cell::Num(berg_lower),
            Cell::Num(berg_lower - m),
            Cell::Num(nu0),
            Cell::Num(nu0 - m),
        ])?;
    }
    Ok(table)
}

fn figure_ab_locus(zoom: bool) -> Result<OutputTable, Error> {
    let catalog = BoundCatalog::<f64>::new();
    let mut table = OutputTable::new(&["k", "intercept", "slope"]);
    table.meta("median constraint lines A = intercept + slope * B in the A-B plane");
    for (bound, _, _) in catalog.entries() {
        table.meta(format!("point {}: A = {:.10} B = {:.10}", bound.name, bound.a, bound.b));
    }
    let (lo, hi, per_decade) = if zoom {
        (0.02f64, 0.5f64, 50usize)
    } else {
        (1e-3, 1e3, 5)
    };
    let steps = ((hi / lo).log10() * per_decade as f64).round() as usize;
    for i in 0..=steps {
        let k = lo * 10f64.powf(i as f64 / per_decade as f64);
        let (intercept, slope) = ab_locus(k.min(hi))?;
        table.push(vec![Cell::Num(k.min(hi)), Cell::Num(intercept), Cell::Num(slope)])?;
    }
    Ok(table)
}

fn figure_new_bounds(config: &SearchConfig) -> Result<OutputTable, Error> {
    let catalog = BoundCatalog::<f64>::new();
    let members = [
        &catalog.nu_l0,
        &catalog.nu_l1,
        &catalog.nu_l_inf,
        &catalog.nu_u,
        &catalog.nu1,
    ];
    let mut header = vec!["k".to_string(), "median_scaled".to_string()];
    for bound in members {
        header.push(format!("{}_scaled", bound.name));
        header.push(format!("{}_margin", bound.name));
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut table = OutputTable::new(&header_refs);
    table.meta("the new affine bounds and the nu1 asymptote, scaled by 2^(1/k)");
    for k in config.k_grid::<f64>() {
        let m = median(k)?.value.scaled;
        let mut row = vec![Cell::Num(k), Cell::Num(m)];
        for bound in members {
            let value = eval_affine(bound, k)?.scaled;
            row.push(Cell::Num(value));
            row.push(Cell::Num(value - m));
        }
        table.push(row)?;
    }
    Ok(table)
}

fn figure_percentiles(config: &SearchConfig) -> Result<OutputTable, Error> {
    let catalog = BoundCatalog::<f64>::new();
    let props = InterpolatorProperties::<f64>::closed_form();
    let rat_upper = Interpolator::rational1(1.0 / props.p0)?;
    let rat_lower = Interpolator::rational1(props.p_inf)?;
    let mut table = OutputTable::new(&[
        "k",
        "chen_upper",
        "chen_lower",
        "berg_upper",
        "berg_lower",
        "nuL0",
        "nuL1",
        "nuLinf",
        "nuU",
        "rational_upper",
        "rational_lower",
    ]);
    table.meta("percentiles 100 P(k, bound) achieved by ten median bounds");
    for k in config.k_grid::<f64>() {
        let pct = |v: &ScaledValue<f64>| percentile_of(v);
        let chen_lower = if k > 1.0 / 3.0 {
            Cell::Num(pct(&ScaledValue::from_log_natural(k, (k - 1.0 / 3.0).ln())?)?)
        } else {
            // the bound is nonpositive there: zero mass below it
            Cell::Num(0.0)
        };
        table.push(vec![
            Cell::Num(k),
            Cell::Num(pct(&ScaledValue::from_log_natural(k, k.ln())?)?),
            chen_lower,
            Cell::Num(pct(&eval_berg_upper(k)?)?),
            Cell::Num(pct(&eval_affine(&catalog.berg_lower, k)?)?),
            Cell::Num(pct(&eval_affine(&catalog.nu_l0, k)?)?),
            Cell::Num(pct(&eval_affine(&catalog.nu_l1, k)?)?),
            Cell::Num(pct(&eval_affine(&catalog.nu_l_inf, k)?)?),
            Cell::Num(pct(&eval_affine(&catalog.nu_u, k)?)?),
            Cell::Num(pct(&interpolated_median(&rat_upper, k)?)?),
            Cell::Num(pct(&interpolated_median(&rat_lower, k)?)?),
        ])?;
    }
    Ok(table)
}

fn figure_a_b_functions(config: &SearchConfig) -> Result<OutputTable, Error> {
    let mut table = OutputTable::new(&["k", "A_of_k", "B_of_k"]);
    table.meta("exact A(k) = m(k) - k and B(k) = (m(k) - e^(-gamma))/k");
    table.meta(format!(
        "A limits: {:.10} (k -> 0) and {:.10} (k -> inf)",
        consts::exp_neg_gamma::<f64>(),
        consts::ln2_minus_third::<f64>()
    ));
    table.meta(format!(
        "B limits: {:.10} (k -> 0) and 1 (k -> inf)",
        consts::nu1_slope::<f64>()
    ));
    for k in config.k_grid::<f64>() {
        table.push(vec![
            Cell::Num(k),
            Cell::Num(a_of_k(k)?),
            Cell::Num(b_of_k(k)?),
        ])?;
    }
    Ok(table)
}

fn figure_interpolators(config: &SearchConfig) -> Result<OutputTable, Error> {
    let cache = SearchCache::for_config(config);
    let searched = cache.get_or_compute(config)?;
    let props = InterpolatorProperties::<f64>::closed_form();
    let variants: [(&str, Interpolator<f64>); 4] = [
        ("rational_lowk", Interpolator::rational1(1.0 / props.p0)?),
        ("rational_highk", Interpolator::rational1(props.p_inf)?),
        (
            "arctan_lowk",
            Interpolator::arctan(table2_parameter::<f64>(Family::Arctan, Criterion::BestLowK)?)?,
        ),
        ("arctan_tight", Interpolator::arctan(searched.arctan_lower_b)?),
    ];
    let mut header = vec!["k".to_string(), "g_ideal".to_string()];
    for (name, _) in &variants {
        header.push(format!("{name}_g"));
        header.push(format!("{name}_margin"));
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut table = OutputTable::new(&header_refs);
    table.meta("ideal interpolator g(k) and four tight bounding interpolators; margins are g~ - g");
    for k in config.k_grid::<f64>() {
        let g = ideal_g(k)?;
        let mut row = vec![Cell::Num(k), Cell::Num(g)];
        for (_, interp) in &variants {
            let gt = crate::interp::eval_interpolator(interp, k)?;
            row.push(Cell::Num(gt));
            row.push(Cell::Num(gt - g));
        }
        table.push(row)?;
    }
    Ok(table)
}

fn figure_relative_errors(config: &SearchConfig) -> Result<OutputTable, Error> {
    let cache = SearchCache::for_config(config);
    let searched = cache.get_or_compute(config)?;
    let variants: [(&str, f64); 6] = [
        (
            "arctan_lowk",
            table2_parameter::<f64>(Family::Arctan, Criterion::BestLowK)?,
        ),
        (
            "arctan_highk",
            table2_parameter::<f64>(Family::Arctan, Criterion::BestHighK)?,
        ),
        ("arctan_minimax_rel", searched.minimax_rel_b),
        ("arctan_minimax_abs", searched.minimax_abs_natural_b),
        (
            "arctan_exact1",
            table2_parameter::<f64>(Family::Arctan, Criterion::ExactAtOne)?,
        ),
        ("arctan_tight", searched.arctan_lower_b),
    ];
    let mut header = vec!["k".to_string()];
    for (name, _) in &variants {
        header.push(name.to_string());
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut table = OutputTable::new(&header_refs);
    table.meta("signed relative error (nu~ - nu)/nu of arctan-interpolated medians");
    for (name, b) in &variants {
        table.meta(format!("{name}: b = {b:.9}"));
    }
    for k in config.k_grid::<f64>() {
        let m = median(k)?.value.scaled;
        let mut row = vec![Cell::Num(k)];
        for (_, b) in &variants {
            let interp = Interpolator::Arctan { b: *b };
            let mt = interpolated_median(&interp, k)?.scaled;
            row.push(Cell::Num((mt - m) / m));
        }
        table.push(row)?;
    }
    Ok(table)
}

/// `verify --claims all|id,id,… --per-decade N`: run the selected claims.
pub fn cmd_verify(selection: &str, per_decade: usize) -> Result<Vec<ClaimResult>, Error> {
    let ids: Vec<&str> = if selection == "all" {
        claim_ids()
    } else {
        selection.split(',').map(str::trim).collect()
    };
    let known = claim_ids();
    for id in &ids {
        if !known.contains(id) {
            return Err(Error::UnknownRow(format!("unknown claim id '{id}'")));
        }
    }
    let ctx = ClaimContext::new(SearchConfig::with_points_per_decade(per_decade))?;
    ids.iter().map(|id| run_claim(&ctx, id)).collect()
}

/// Search targets accepted by `search --target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchTarget {
    L0,
    L1,
    ArctanLower,
    MinimaxRel,
    MinimaxAbs,
}

impl SearchTarget {
    pub fn parse(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "L0" => Self::L0,
            "L1" => Self::L1,
            "arctan-lower" => Self::ArctanLower,
            "minimax-rel" => Self::MinimaxRel,
            "minimax-abs" => Self::MinimaxAbs,
            other => {
                return Err(Error::UnknownRow(format!(
                    "unknown search target '{other}' \
                     (expected L0 | L1 | arctan-lower | minimax-rel | minimax-abs)"
                )))
            }
        })
    }
}

/// `search --target …`: run one search and emit its result row(s).
pub fn cmd_search(target: SearchTarget, config: &SearchConfig) -> Result<OutputTable, Error> {
    let mut table = OutputTable::new(&["target", "parameter", "abscissa_k", "extremum"]);
    table.meta(format!(
        "grid: geometric [{:e}, {:e}] at {} points per decade; parameter tolerance {:e}",
        config.k_min, config.k_max, config.points_per_decade, config.param_tolerance
    ));
    match target {
        SearchTarget::L0 => {
            let result = find_tight_b_for_l0::<f64>(config)?;
            table.meta("extremum: scaled margin at the graze abscissa");
            table.push(vec![
                Cell::text("L0"),
                Cell::Num(result.parameter),
                Cell::Num(result.graze_k),
                Cell::Num(result.min_margin),
            ])?;
        }
        SearchTarget::L1 => {
            let (a, b) = crate::search::derive_l1_coefficients::<f64>()?;
            table.meta("tangency at k = 1; extremum: A + B - 2 ln 2");
            table.push(vec![
                Cell::text("L1-A"),
                Cell::Num(a),
                Cell::Num(1.0),
                Cell::Num(a + b - 2.0 * std::f64::consts::LN_2),
            ])?;
            table.push(vec![
                Cell::text("L1-B"),
                Cell::Num(b),
                Cell::Num(1.0),
                Cell::Num(a + b - 2.0 * std::f64::consts::LN_2),
            ])?;
        }
        SearchTarget::ArctanLower => {
            let result = find_tight_arctan_lower::<f64>(config)?;
            table.meta("extremum: scaled margin at the tangency abscissa");
            table.push(vec![
                Cell::text("arctan-lower"),
                Cell::Num(result.parameter),
                Cell::Num(result.graze_k),
                Cell::Num(result.min_margin),
            ])?;
        }
        SearchTarget::MinimaxRel => {
            let result = minimax_b_measure::<f64>(config, ErrorMeasure::Relative)?;
            table.meta("extremum: achieved maximum relative error");
            table.push(vec![
                Cell::text("minimax-rel"),
                Cell::Num(result.b),
                Cell::Num(result.argmax_k),
                Cell::Num(result.max_error),
            ])?;
        }
        SearchTarget::MinimaxAbs => {
            let scaled = minimax_b_measure::<f64>(config, ErrorMeasure::AbsoluteScaled)?;
            let natural = minimax_b_measure::<f64>(config, ErrorMeasure::AbsoluteNatural)?;
            table.meta("both absolute-error scales; the natural scale reproduces 0.21008");
            table.push(vec![
                Cell::text("minimax-abs-scaled"),
                Cell::Num(scaled.b),
                Cell::Num(scaled.argmax_k),
                Cell::Num(scaled.max_error),
            ])?;
            table.push(vec![
                Cell::text("minimax-abs-natural"),
                Cell::Num(natural.b),
                Cell::Num(natural.argmax_k),
                Cell::Num(natural.max_error),
            ])?;
        }
    }
    Ok(table)
}

/// Verify the figure id early so argument errors exit with the right code.
pub fn validate_figure_id(fig: u8) -> Result<(), Error> {
    if (1..=8).contains(&fig) {
        Ok(())
    } else {
        Err(Error::Domain(format!("figure id must be 1..=8, got {fig}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_command_rows() {
        let table = cmd_median_single(1.0).unwrap();
        assert_eq!(table.rows.len(), 1);
        let Cell::Num(natural) = table.rows[0][3] else {
            panic!("expected a natural median at k = 1");
        };
        assert!((natural - std::f64::consts::LN_2).abs() < 1e-13);
        // deep shapes leave the natural column empty
        let table = cmd_median_single(1e-4).unwrap();
        assert_eq!(table.rows[0][3], Cell::Empty);
        let Cell::Num(log_natural) = table.rows[0][2] else {
            panic!("expected a log natural median");
        };
        assert!((log_natural + 6932.0489).abs() < 1e-3);
    }

    #[test]
    fn median_range_spans_and_validates() {
        let table = cmd_median_range(0.1, 10.0, 5).unwrap();
        assert_eq!(table.rows.len(), 11);
        assert!(cmd_median_range(10.0, 0.1, 5).is_err());
        assert!(cmd_median_range(1e-7, 1.0, 5).is_err());
        assert!(cmd_median_range(0.1, 1.0, 0).is_err());
    }

    #[test]
    fn table1_layout() {
        let table = table1().unwrap();
        assert_eq!(table.rows.len(), 10);
        // the nuU row carries A = e^(-gamma) rounded to 0.5614594836 and B = 1
        let row = table
            .rows
            .iter()
            .find(|r| r[0] == Cell::text("nuU"))
            .unwrap();
        let Cell::Num(a) = row[1] else { panic!() };
        let Cell::Num(b) = row[2] else { panic!() };
        assert!((a - 0.5614594836).abs() < 1e-10);
        assert_eq!(b, 1.0);
        assert_eq!(row[4], Cell::text("U"));
    }

    #[test]
    fn search_target_parsing() {
        assert_eq!(SearchTarget::parse("L0").unwrap(), SearchTarget::L0);
        assert_eq!(
            SearchTarget::parse("minimax-rel").unwrap(),
            SearchTarget::MinimaxRel
        );
        assert!(SearchTarget::parse("bogus").is_err());
    }

    #[test]
    fn verify_rejects_unknown_ids() {
        assert!(matches!(
            cmd_verify("definitely-not-a-claim", 10),
            Err(Error::UnknownRow(_))
        ));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!(
            "gamma-median-cache-test-{}",
            std::process::id()
        ));
        std::env::set_var(CACHE_DIR_ENV, &dir);
        let config = SearchConfig::default();
        let cache = SearchCache::for_config(&config);
        let results = CachedSearches {
            l0_b: 0.4596506761705812,
            l0_graze: 0.0708117,
            l1_a: 0.4111107280722045,
            l1_b: 0.9751836330476861,
            arctan_lower_b: 0.205282366768611,
            arctan_lower_graze: 0.4183929,
            minimax_rel_b: 0.216390942,
            minimax_rel_err: 0.003957977,
            minimax_abs_scaled_b: 0.21504146,
            minimax_abs_natural_b: 0.21008477,
        };
        cache.store(&results);
        assert_eq!(cache.load().unwrap(), results);
        std::env::remove_var(CACHE_DIR_ENV);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
