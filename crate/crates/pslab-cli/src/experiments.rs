//! Experiment orchestration: figure sweeps over (α, N) grids, the α = 2
//! probe, and deterministic CSV/SVG emission.
//!
//! Grid exponents are generated and carried as decimal *strings* (integer
//! hundredths — never float stepping) and parsed exactly; emitted rows echo
//! those strings verbatim. Counting work is distributed over a worker pool,
//! but every count is an exact integer and rows are sorted before emission,
//! so output bytes are independent of the worker count.

use anyhow::{bail, Context, Result};
use pslab::asymptotics::{conjecture_rhs, ConjectureKind};
use pslab::counting::{count_N12_N3, count_NAP, count_N3};
use pslab::exactfloor::{parse_alpha, RationalExponent};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// One figure point: the exact count at `(α, N)` against the predicted
/// main-term constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    /// The exponent exactly as it appeared in the grid (e.g. `"1.95"`).
    pub alpha: String,
    /// The counting parameter.
    pub n: u64,
    /// The exact count.
    pub count: u64,
    /// The α-dependent predicted constant `c(α)`.
    pub rhs: f64,
    /// `count / (rhs · N^{3−α})`.
    pub ratio: f64,
}

/// Which of the two per-figure series a sweep emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure1Panel {
    /// Triples with the two summand indices bounded: count against
    /// `(c3(α) + I(α))·N^{3−α}`.
    N12,
    /// Triples with the landing index bounded: count against `c3(α)·N^{3−α}`.
    N3,
}

/// Figure-2 grid choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure2Panel {
    /// α ∈ {1.90, 1.91, …, 2.10}, N ∈ {1000, 3000, 5000}.
    NearTwo,
    /// α ∈ {1.10, 1.15, …, 2.50}, N ∈ {1000, 3000, 5000, 10000}.
    Wide,
}

/// Exponent grid 1.90 … 2.10 in steps of 0.01, as exact decimal strings.
pub fn near_two_alpha_grid() -> Vec<String> {
    (190..=210).map(|h| format!("{}.{:02}", h / 100, h % 100)).collect()
}

/// Exponent grid 1.10 … 2.50 in steps of 0.05, as exact decimal strings.
pub fn wide_alpha_grid() -> Vec<String> {
    (0..=28).map(|i| 110 + 5 * i).map(|h| format!("{}.{:02}", h / 100, h % 100)).collect()
}

/// Default parameter list for the near-2 sweeps.
pub const NEAR_TWO_N_LIST: [u64; 3] = [1000, 3000, 5000];
/// Default parameter list for the wide progression sweep.
pub const WIDE_N_LIST: [u64; 4] = [1000, 3000, 5000, 10_000];

/// Parses every grid exponent once, pairing the exact rational with the
/// analytic constant for `kind`.
fn grid_constants(
    alphas: &[String],
    kind: ConjectureKind,
) -> Result<BTreeMap<String, (RationalExponent, f64)>> {
    let mut out = BTreeMap::new();
    for text in alphas {
        let rat = parse_alpha(text).with_context(|| format!("grid exponent {text:?}"))?;
        let constant = conjecture_rhs(kind, rat.as_f64())
            .with_context(|| format!("predicted constant at alpha = {text}"))?;
        out.insert(text.clone(), (rat, constant));
    }
    Ok(out)
}

fn validate_grids(alphas: &[String], ns: &[u64]) -> Result<()> {
    if alphas.is_empty() || ns.is_empty() {
        bail!("experiment grids must be nonempty");
    }
    Ok(())
}

fn make_row(alpha: &str, rat: RationalExponent, n: u64, count: u64, rhs: f64) -> ExperimentRow {
    let ratio = count as f64 / (rhs * (n as f64).powf(3.0 - rat.as_f64()));
    ExperimentRow { alpha: alpha.to_owned(), n, count, rhs, ratio }
}

fn sort_rows(rows: &mut [ExperimentRow]) {
    rows.sort_by(|a, b| a.alpha.cmp(&b.alpha).then(a.n.cmp(&b.n)));
}

/// Counts both bounded-summand and bounded-landing triples over the grid and
/// reports the series `panel` selects. Rows come back sorted by `(α, N)`.
pub fn figure1_rows(
    panel: Figure1Panel,
    alphas: &[String],
    ns: &[u64],
) -> Result<Vec<ExperimentRow>> {
    validate_grids(alphas, ns)?;
    let kind = match panel {
        Figure1Panel::N12 => ConjectureKind::N12,
        Figure1Panel::N3 => ConjectureKind::N3,
    };
    let constants = grid_constants(alphas, kind)?;
    let points: Vec<(&String, u64)> =
        constants.keys().flat_map(|a| ns.iter().map(move |&n| (a, n))).collect();
    let mut rows: Vec<ExperimentRow> = points
        .par_iter()
        .map(|&(alpha, n)| {
            let (rat, rhs) = constants[alpha];
            let (r12, r3) = count_N12_N3(n, rat);
            let count = match panel {
                Figure1Panel::N12 => r12.count,
                Figure1Panel::N3 => r3.count,
            };
            make_row(alpha, rat, n, count, rhs)
        })
        .collect();
    sort_rows(&mut rows);
    Ok(rows)
}

/// Counts three-term progressions inside the attained-value sequence over
/// the given grids. Rows come back sorted by `(α, N)`.
pub fn figure2_rows(alphas: &[String], ns: &[u64]) -> Result<Vec<ExperimentRow>> {
    validate_grids(alphas, ns)?;
    let constants = grid_constants(alphas, ConjectureKind::Ap)?;
    let points: Vec<(&String, u64)> =
        constants.keys().flat_map(|a| ns.iter().map(move |&n| (a, n))).collect();
    let mut rows: Vec<ExperimentRow> = points
        .par_iter()
        .map(|&(alpha, n)| {
            let (rat, rhs) = constants[alpha];
            make_row(alpha, rat, n, count_NAP(n, rat).count, rhs)
        })
        .collect();
    sort_rows(&mut rows);
    Ok(rows)
}

/// Default grids for a figure-2 panel.
pub fn figure2_default_grids(panel: Figure2Panel) -> (Vec<String>, Vec<u64>) {
    match panel {
        Figure2Panel::NearTwo => (near_two_alpha_grid(), NEAR_TWO_N_LIST.to_vec()),
        Figure2Panel::Wide => (wide_alpha_grid(), WIDE_N_LIST.to_vec()),
    }
}

/// Twelve significant digits, stable across platforms.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders rows as CSV: header `alpha,N,count,rhs,ratio`, 12 significant
/// digits, LF line endings, rows sorted by `(alpha, N)`. Errors on empty
/// input.
pub fn emit_csv(rows: &[ExperimentRow]) -> Result<String> {
    if rows.is_empty() {
        bail!("refusing to emit an empty experiment table");
    }
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    let mut out = String::from("alpha,N,count,rhs,ratio\n");
    for r in &sorted {
        writeln!(out, "{},{},{},{},{}", r.alpha, r.n, r.count, sig12(r.rhs), sig12(r.ratio))
            .expect("string writes cannot fail");
    }
    Ok(out)
}

/// Writes [`emit_csv`] output to `path`; on error no file is created.
pub fn write_csv(rows: &[ExperimentRow], path: &Path) -> Result<()> {
    let text = emit_csv(rows)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Fixed series palette, indexed by the row's position in the sorted list
/// of distinct N values.
const SERIES_COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Renders rows as a self-contained SVG scatter plot — one colored series
/// per N, labeled axes, no external assets. Errors on empty input.
pub fn emit_svg(rows: &[ExperimentRow], y_label: &str) -> Result<String> {
    if rows.is_empty() {
        bail!("refusing to plot an empty experiment table");
    }
    let (width, height) = (800.0, 520.0);
    let (ml, mr, mt, mb) = (80.0, 25.0, 25.0, 65.0);
    let (pw, ph) = (width - ml - mr, height - mt - mb);

    let xs: Vec<f64> = rows
        .iter()
        .map(|r| r.alpha.parse::<f64>().with_context(|| format!("exponent {:?}", r.alpha)))
        .collect::<Result<_>>()?;
    let pad_span = |lo: f64, hi: f64| {
        let span = hi - lo;
        if span <= 0.0 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo - 0.04 * span, hi + 0.04 * span)
        }
    };
    let (x_lo, x_hi) = pad_span(
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (y_lo, y_hi) = pad_span(
        rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min),
        rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max),
    );
    let px = |x: f64| ml + (x - x_lo) / (x_hi - x_lo) * pw;
    let py = |y: f64| mt + ph - (y - y_lo) / (y_hi - y_lo) * ph;

    let mut series: Vec<u64> = rows.iter().map(|r| r.n).collect();
    series.sort_unstable();
    series.dedup();

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"13\">"
    )?;
    writeln!(svg, "  <rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>")?;

    // Gridlines and ticks: six divisions each way.
    for i in 0..=6 {
        let t = f64::from(i) / 6.0;
        let gx = ml + t * pw;
        let gy = mt + t * ph;
        writeln!(
            svg,
            "  <line x1=\"{gx:.2}\" y1=\"{mt}\" x2=\"{gx:.2}\" y2=\"{:.2}\" \
             stroke=\"#dddddd\"/>",
            mt + ph
        )?;
        writeln!(
            svg,
            "  <line x1=\"{ml}\" y1=\"{gy:.2}\" x2=\"{:.2}\" y2=\"{gy:.2}\" \
             stroke=\"#dddddd\"/>",
            ml + pw
        )?;
        let xv = x_lo + t * (x_hi - x_lo);
        let yv = y_hi - t * (y_hi - y_lo);
        writeln!(
            svg,
            "  <text x=\"{gx:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{xv:.3}</text>",
            mt + ph + 20.0
        )?;
        writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{yv:.3}</text>",
            ml - 8.0,
            gy + 4.0
        )?;
    }
    // Axes on top of the grid.
    writeln!(
        svg,
        "  <rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" \
         stroke=\"#333333\"/>"
    )?;
    writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">alpha</text>",
        ml + pw / 2.0,
        height - 18.0
    )?;
    writeln!(
        svg,
        "  <text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 20 {:.2})\">{y_label}</text>",
        mt + ph / 2.0,
        mt + ph / 2.0
    )?;

    for (si, &n) in series.iter().enumerate() {
        let color = SERIES_COLORS[si % SERIES_COLORS.len()];
        for (r, &x) in rows.iter().zip(&xs).filter(|(r, _)| r.n == n) {
            writeln!(
                svg,
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{color}\" \
                 fill-opacity=\"0.85\"/>",
                px(x),
                py(r.ratio)
            )?;
        }
        let ly = mt + 16.0 + 18.0 * si as f64;
        writeln!(
            svg,
            "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"11\" height=\"11\" fill=\"{color}\"/>",
            ml + pw - 110.0,
            ly - 10.0
        )?;
        writeln!(svg, "  <text x=\"{:.2}\" y=\"{ly:.2}\">N = {n}</text>", ml + pw - 94.0)?;
    }
    writeln!(svg, "</svg>")?;
    Ok(svg)
}

/// Writes [`emit_svg`] output to `path`; on error no file is created.
pub fn write_svg(rows: &[ExperimentRow], y_label: &str, path: &Path) -> Result<()> {
    let text = emit_svg(rows, y_label)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// One comparison of an exact α = 2 count against its analytic prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    /// Which count: `"pythagorean-triples"` (square + square = square) or
    /// `"three-square-progressions"` (3-term progressions of squares).
    pub quantity: &'static str,
    /// The requested bound parameter.
    pub x: u64,
    /// The exact count (at `x − 1` in strict-upper mode).
    pub count: u64,
    /// The predicted dominant term at `x`.
    pub prediction: f64,
    /// `count / prediction`.
    pub ratio: f64,
    /// `(count − prediction) / x` — the size of the linear-order remainder.
    pub implied_linear: f64,
}

/// The α = 2 sanity probe: exact square-sum and square-progression counts
/// at `x` against `(1/π)·x·ln x` and `(√2·ln(1+√2)/π²)·x·ln x`. The known
/// predictions carry an unknown `B·x` correction, reported as
/// `implied_linear`. With `strict_upper` the counts use the bound `n < x`
/// (evaluated as the count at `x − 1`) while predictions stay at `x`.
pub fn pythagoras_probe(x: u64, strict_upper: bool) -> Vec<ProbeRow> {
    assert!(x >= 3, "probe needs x ≥ 3, got {x}");
    let two = RationalExponent::new(2, 1).expect("2 is a valid exponent");
    let x_eval = if strict_upper { x - 1 } else { x };
    let xf = x as f64;
    let make = |quantity: &'static str, count: u64, prediction: f64| ProbeRow {
        quantity,
        x,
        count,
        prediction,
        ratio: count as f64 / prediction,
        implied_linear: (count as f64 - prediction) / xf,
    };
    let triples = count_N3(x_eval, two).count;
    let progressions = count_NAP(x_eval, two).count;
    vec![
        make("pythagorean-triples", triples, xf * xf.ln() / std::f64::consts::PI),
        make(
            "three-square-progressions",
            progressions,
            2f64.sqrt() * (1.0 + 2f64.sqrt()).ln() / (std::f64::consts::PI.powi(2)) * xf * xf.ln(),
        ),
    ]
}

/// CSV for probe rows: `quantity,x,count,prediction,ratio,implied_linear`,
/// 12 significant digits, LF endings.
pub fn emit_probe_csv(rows: &[ProbeRow]) -> Result<String> {
    if rows.is_empty() {
        bail!("refusing to emit an empty probe table");
    }
    let mut out = String::from("quantity,x,count,prediction,ratio,implied_linear\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.quantity,
            r.x,
            r.count,
            sig12(r.prediction),
            sig12(r.ratio),
            sig12(r.implied_linear)
        )
        .expect("string writes cannot fail");
    }
    Ok(out)
}
