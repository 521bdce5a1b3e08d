//! `pslab` — counts, constants, representation search, bound checks, and
//! figure sweeps for floor-power additive representation experiments.
//!
//! Exit codes: 0 on success, 1 on domain/hypothesis errors (a valid
//! invocation whose mathematics rejects), 2 on usage errors (bad flags or
//! malformed values).

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pslab::asymptotics::{conjecture_rhs, leading_constant_R, standard_bundles, ConjectureKind};
use pslab::counting::{count_N12, count_N3, count_NAP, count_R, count_R_bruteforce, CountRecord};
use pslab::exactfloor::{parse_alpha, RationalExponent};
use pslab::params::build_witness;
use pslab::witness::{enumerate_representations, find_representation};
use pslab_cli::bounds::run_documented_grid;
use pslab_cli::experiments::{
    emit_csv, emit_probe_csv, figure1_rows, figure2_default_grids, figure2_rows,
    near_two_alpha_grid, pythagoras_probe, write_csv, write_svg, Figure1Panel, Figure2Panel,
    NEAR_TWO_N_LIST,
};
use std::path::PathBuf;

fn alpha_arg(text: &str) -> Result<RationalExponent, String> {
    parse_alpha(text).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "pslab",
    version,
    about = "Floor-power sequence counting laboratory",
    long_about = "Exact counting of additive representations by floor-power sequences \
                  {floor(n^alpha)}, with analytic predictions, exponential-sum bound \
                  checks, constructive representation search, and figure sweeps.\n\
                  Exponents are decimal strings (\"1.25\") parsed to exact rationals."
)]
struct Cli {
    /// Worker threads for grid experiments (default: all cores). The
    /// PSLAB_JOBS environment variable overrides this flag.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Panel1Arg {
    /// Bounded-summand triple count against (c3 + I)(alpha).
    N12,
    /// Bounded-landing triple count against c3(alpha).
    N3,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Panel2Arg {
    /// alpha 1.90..2.10 step 0.01, N in {1000, 3000, 5000}.
    Near2,
    /// alpha 1.10..2.50 step 0.05, N in {1000, 3000, 5000, 10000}.
    Wide,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Triples with both summand indices bounded.
    N12,
    /// Triples with the landing index bounded.
    N3,
    /// Three-term progressions in the attained values.
    Ap,
}

impl From<KindArg> for ConjectureKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::N12 => ConjectureKind::N12,
            KindArg::N3 => ConjectureKind::N3,
            KindArg::Ap => ConjectureKind::Ap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count ordered pairs (n1, n2) with floor(n1^a1) + floor(n2^a2) = N.
    Count {
        /// The represented integer, N >= 2.
        n: u64,
        #[arg(long, value_parser = alpha_arg)]
        alpha1: RationalExponent,
        #[arg(long, value_parser = alpha_arg)]
        alpha2: RationalExponent,
        /// Use the independent quadratic reference route instead of the
        /// production membership walk.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Count triples floor(l^a) + floor(m^a) = floor(n^a) with n <= x.
    Count3 {
        x: u64,
        #[arg(long, value_parser = alpha_arg)]
        alpha: RationalExponent,
        /// Bound by n < x instead (count at x-1, prediction still at x).
        #[arg(long)]
        strict_upper: bool,
    },
    /// Count triples floor(l^a) + floor(m^a) = floor(n^a) with l, m <= x.
    Count12 {
        x: u64,
        #[arg(long, value_parser = alpha_arg)]
        alpha: RationalExponent,
        /// Bound by l, m < x instead (count at x-1, prediction still at x).
        #[arg(long)]
        strict_upper: bool,
    },
    /// Count three-term progressions floor(l^a) + floor(n^a) = 2 floor(m^a),
    /// l < m < n <= x.
    CountAp {
        x: u64,
        #[arg(long, value_parser = alpha_arg)]
        alpha: RationalExponent,
        /// Bound by n < x instead (count at x-1, prediction still at x).
        #[arg(long)]
        strict_upper: bool,
    },
    /// Print the analytic constants at an exponent.
    Constants {
        #[arg(long, value_parser = alpha_arg)]
        alpha: RationalExponent,
        /// Also print the two-exponent leading constant at (alpha, alpha2).
        #[arg(long, value_parser = alpha_arg)]
        alpha2: Option<RationalExponent>,
    },
    /// Print the predicted main-term constant for one triple-count family.
    Conjecture {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = alpha_arg)]
        alpha: RationalExponent,
    },
    /// Find one representation N = floor(n1^a1) + floor(n2^a2), or all of
    /// them.
    FindRep {
        n: u64,
        #[arg(long, value_parser = alpha_arg)]
        alpha1: RationalExponent,
        #[arg(long, value_parser = alpha_arg)]
        alpha2: RationalExponent,
        /// Enumerate every representation instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Run the fixed exponential-sum benchmark grid and report ratios.
    ExpsumCheck,
    /// Derive the full exponent-tuple witness at a hypothesis-region point.
    ParamsWitness {
        #[arg(long)]
        x1: f64,
        #[arg(long)]
        x2: f64,
    },
    /// Triple-count sweep over the near-2 exponent grid (CSV/SVG).
    Figure1 {
        #[arg(long, value_enum, default_value = "n12")]
        panel: Panel1Arg,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG scatter plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Override the exponent grid (comma-separated decimal strings).
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<String>,
        /// Override the parameter list (comma-separated integers).
        #[arg(long, value_delimiter = ',')]
        ns: Vec<u64>,
    },
    /// Progression-count sweep over an exponent grid (CSV/SVG).
    Figure2 {
        #[arg(long, value_enum, default_value = "near2")]
        panel: Panel2Arg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        ns: Vec<u64>,
    },
    /// Exact alpha = 2 counts against their known x log x predictions.
    PythagorasProbe {
        /// Bound parameter.
        #[arg(long, default_value_t = 5000)]
        x: u64,
        /// Bound by n < x instead (count at x-1, predictions still at x).
        #[arg(long)]
        strict_upper: bool,
        /// Write the comparison as CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = install_worker_pool(cli.jobs) {
        // Worker-pool problems are invocation errors, like clap's own.
        eprintln!("error: {e:#}");
        std::process::exit(2);
    }
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

/// Sizes the global worker pool: PSLAB_JOBS wins over --jobs; unset means
/// one worker per core.
fn install_worker_pool(flag: Option<usize>) -> Result<()> {
    let jobs = match std::env::var("PSLAB_JOBS") {
        Ok(text) => Some(
            text.parse::<usize>()
                .with_context(|| format!("PSLAB_JOBS must be a worker count, got {text:?}"))?,
        ),
        Err(std::env::VarError::NotPresent) => flag,
        Err(e) => return Err(anyhow!(e).context("reading PSLAB_JOBS")),
    };
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(anyhow!("worker count must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("sizing the worker pool")?;
    }
    Ok(())
}

fn print_triple_record(record: &CountRecord, x: u64, strict_upper: bool) {
    let alpha = record.alphas[0];
    let bound = if strict_upper { format!("< {x}") } else { format!("<= {x}") };
    println!("exponent = {alpha} ({})", alpha.as_f64());
    println!("bound: index {bound}");
    println!("count = {}", record.count);
    if strict_upper {
        // Count evaluated at x-1; renormalize the prediction to x.
        let rhs = record.leading / (record.parameter as f64).powf(3.0 - alpha.as_f64())
            * (x as f64).powf(3.0 - alpha.as_f64());
        println!("predicted = {rhs:.6e}");
        println!("ratio = {:.6}", record.count as f64 / rhs);
    } else {
        println!("predicted = {:.6e}", record.leading);
        println!("ratio = {:.6}", record.ratio);
    }
}

fn strict_eval(x: u64, strict_upper: bool) -> Result<u64> {
    if strict_upper {
        if x < 3 {
            return Err(anyhow!("strict upper bound needs x >= 3, got {x}"));
        }
        Ok(x - 1)
    } else {
        if x < 2 {
            return Err(anyhow!("triple counts need x >= 2, got {x}"));
        }
        Ok(x)
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Count { n, alpha1, alpha2, bruteforce } => {
            if n < 2 {
                return Err(anyhow!("two-term counts need N >= 2, got {n}"));
            }
            println!("N = {n}, exponents {alpha1} and {alpha2}");
            if bruteforce {
                let count = count_R_bruteforce(n, alpha1, alpha2)?;
                println!("pairs = {count} (quadratic reference route)");
            } else {
                let record = count_R(n, alpha1, alpha2);
                println!("pairs = {} (membership walk)", record.count);
                println!("predicted = {:.6e}", record.leading);
                println!("ratio = {:.6}", record.ratio);
            }
        }
        Command::Count3 { x, alpha, strict_upper } => {
            let record = count_N3(strict_eval(x, strict_upper)?, alpha);
            println!("triples with bounded landing index");
            print_triple_record(&record, x, strict_upper);
        }
        Command::Count12 { x, alpha, strict_upper } => {
            let record = count_N12(strict_eval(x, strict_upper)?, alpha);
            println!("triples with bounded summand indices");
            print_triple_record(&record, x, strict_upper);
        }
        Command::CountAp { x, alpha, strict_upper } => {
            let record = count_NAP(strict_eval(x, strict_upper)?, alpha);
            println!("three-term progressions in the attained values");
            print_triple_record(&record, x, strict_upper);
        }
        Command::Constants { alpha, alpha2 } => {
            let a = alpha.as_f64();
            for bundle in standard_bundles(a)? {
                let args =
                    bundle.alphas.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(", ");
                println!("{}({args}) = {:.12e}", bundle.formula_id, bundle.value);
            }
            if let Some(alpha2) = alpha2 {
                let b = alpha2.as_f64();
                println!("leading-constant-R({a}, {b}) = {:.12e}", leading_constant_R(a, b));
            }
        }
        Command::Conjecture { kind, alpha } => {
            let value = conjecture_rhs(kind.into(), alpha.as_f64())?;
            println!("{value:.12e}");
        }
        Command::FindRep { n, alpha1, alpha2, all } => {
            if n < 2 {
                return Err(anyhow!("representations need N >= 2, got {n}"));
            }
            let describe = |r: &pslab::witness::Representation| {
                format!(
                    "{n} = floor({}^{alpha1}) + floor({}^{alpha2})  [route: {}, certified: {}]",
                    r.n1,
                    r.n2,
                    if r.via_lemma { "window-construction" } else { "exhaustive" },
                    r.verified
                )
            };
            if all {
                let reps = enumerate_representations(n, alpha1, alpha2);
                if reps.is_empty() {
                    return Err(anyhow!(
                        "no two-term representation of {n} exists for these exponents"
                    ));
                }
                for r in &reps {
                    println!("{}", describe(r));
                }
                println!("total = {}", reps.len());
            } else {
                let r = find_representation(n, alpha1, alpha2)?;
                println!("{}", describe(&r));
            }
        }
        Command::ExpsumCheck => {
            let results = run_documented_grid()?;
            println!(
                "{:<28} {:>13} {:>13} {:>9}  ceiling applies",
                "instance", "|sum|", "bound", "ratio"
            );
            let mut max_ceiling_ratio: f64 = 0.0;
            for (inst, rep) in &results {
                if inst.subject_to_ceiling() {
                    max_ceiling_ratio = max_ceiling_ratio.max(rep.ratio);
                }
                println!(
                    "{:<28} {:>13.6e} {:>13.6e} {:>9.4}  {}",
                    inst.label,
                    rep.sum_abs,
                    rep.bound,
                    rep.ratio,
                    if inst.subject_to_ceiling() { "yes" } else { "no" }
                );
            }
            println!(
                "max ratio over second-/third-derivative and exponent-pair instances = \
                 {max_ceiling_ratio:.4}"
            );
        }
        Command::ParamsWitness { x1, x2 } => {
            let w = build_witness(x1, x2)?;
            println!("region point: x1 = {}, x2 = {}", w.x1, w.x2);
            println!("normalized caps: X1 = {:.12}, X2 = {:.12}", w.x_cap1, w.x_cap2);
            println!("beta midpoints: beta1 = {:.12}, beta2 = {:.12}", w.beta1, w.beta2);
            println!("gamma_hat0 = {:.12}", w.gamma_hat0);
            println!("inequality slacks (all must be positive):");
            for (name, slack) in &w.slacks {
                println!("  {name:<13} {slack:+.12}");
            }
        }
        Command::Figure1 { panel, out, svg, alphas, ns } => {
            let panel = match panel {
                Panel1Arg::N12 => Figure1Panel::N12,
                Panel1Arg::N3 => Figure1Panel::N3,
            };
            let alphas = if alphas.is_empty() { near_two_alpha_grid() } else { alphas };
            let ns = if ns.is_empty() { NEAR_TWO_N_LIST.to_vec() } else { ns };
            let rows = figure1_rows(panel, &alphas, &ns)?;
            emit_experiment(&rows, out, svg)?;
        }
        Command::Figure2 { panel, out, svg, alphas, ns } => {
            let panel = match panel {
                Panel2Arg::Near2 => Figure2Panel::NearTwo,
                Panel2Arg::Wide => Figure2Panel::Wide,
            };
            let (default_alphas, default_ns) = figure2_default_grids(panel);
            let alphas = if alphas.is_empty() { default_alphas } else { alphas };
            let ns = if ns.is_empty() { default_ns } else { ns };
            let rows = figure2_rows(&alphas, &ns)?;
            emit_experiment(&rows, out, svg)?;
        }
        Command::PythagorasProbe { x, strict_upper, out } => {
            if x < 3 {
                return Err(anyhow!("probe needs x >= 3, got {x}"));
            }
            let rows = pythagoras_probe(x, strict_upper);
            let bound = if strict_upper { "n < x" } else { "n <= x" };
            println!("x = {x} (bound {bound}; predictions evaluated at x)");
            for r in &rows {
                println!(
                    "{}: count = {}, predicted = {:.6e}, ratio = {:.6}, \
                     linear remainder / x = {:+.6}",
                    r.quantity, r.count, r.prediction, r.ratio, r.implied_linear
                );
            }
            if let Some(path) = out {
                std::fs::write(&path, emit_probe_csv(&rows)?)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn emit_experiment(
    rows: &[pslab_cli::experiments::ExperimentRow],
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<()> {
    match out {
        Some(path) => {
            write_csv(rows, &path)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{}", emit_csv(rows)?),
    }
    if let Some(path) = svg {
        write_svg(rows, "count / prediction", &path)?;
        println!("wrote plot to {}", path.display());
    }
    Ok(())
}
