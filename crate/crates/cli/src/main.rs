//! `supraclust` — clustering coefficients, densities, strength breakdowns,
//! rankings and rank comparisons for weighted directed multilayer networks
//! read from canonical edge-list CSVs.
//!
//! Every subcommand runs parse → build → prune, writes its tables under
//! `--out` and prints an ingest summary plus timing on standard output.
//! Exit codes: 0 success, 1 input/format error, 2 computation error.
//! `SUPRACLUST_THREADS` caps the worker thread count.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use supraclust_core::clustering::{
    family_report, monoplex_average, CoefficientFamily, FamilyReport,
};
use supraclust_core::degrees::{node_degree, node_strength, DegreeVariant, StrengthVariant};
use supraclust_core::report::{self, BreakdownBy, Ranking};
use supraclust_core::MultilayerNetwork;

mod pipeline;
mod tables;

use pipeline::{load_network, print_summary, Stage, StageError, StageResultExt};

#[derive(Parser)]
#[command(
    name = "supraclust",
    version,
    about = "Clustering analysis for weighted directed multilayer networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clustering coefficients of one family at a chosen aggregation level.
    Analyze {
        /// Canonical edge-list CSV.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        coef: CoefArg,
        #[arg(long, value_enum)]
        level: LevelArg,
        /// Output directory for the emitted table.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Intra-layer and average inter-layer density, one row per layer.
    Density {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Strength broken down by direction and intra/inter-layer.
    Strength {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        by: ByArg,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Rank nodes by a metric.
    Rank {
        #[arg(long)]
        input: PathBuf,
        /// One of: degree, degree-in, degree-out, strength, strength-in,
        /// strength-out, clustering-arith, clustering-geom, clustering-prod.
        #[arg(long)]
        metric: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compare node rankings of a coefficient against the monoplex baseline
    /// or another coefficient, reporting the Spearman rank correlation.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        coef: CoefArg,
        /// `monoplex` or another coefficient name (arith, geom, prod).
        #[arg(long)]
        against: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoefArg {
    Arith,
    Geom,
    Prod,
}

impl CoefArg {
    fn family(self) -> CoefficientFamily {
        match self {
            CoefArg::Arith => CoefficientFamily::Arith,
            CoefArg::Geom => CoefficientFamily::Geom,
            CoefArg::Prod => CoefficientFamily::Prod,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Local,
    Node,
    Layer,
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ByArg {
    Node,
    Layer,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };

    if let Err(e) = init_thread_pool() {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code());
    }

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Caps rayon's worker count from `SUPRACLUST_THREADS` when set.
fn init_thread_pool() -> Result<(), StageError> {
    let Ok(raw) = std::env::var("SUPRACLUST_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| {
            StageError::options(format!(
                "SUPRACLUST_THREADS must be a positive integer, got `{raw}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| StageError::options(format!("cannot configure thread pool: {e}")))
}

fn run(command: Command) -> Result<(), StageError> {
    let started = Instant::now();
    match command {
        Command::Analyze {
            input,
            coef,
            level,
            out,
        } => analyze(&input, coef, level, &out)?,
        Command::Density { input, out } => density(&input, &out)?,
        Command::Strength { input, by, out } => strength(&input, by, &out)?,
        Command::Rank { input, metric, out } => rank_cmd(&input, &metric, &out)?,
        Command::Compare {
            input,
            coef,
            against,
            out,
        } => compare(&input, coef, &against, &out)?,
    }
    println!("elapsed:            {:.3} s", started.elapsed().as_secs_f64());
    Ok(())
}

fn analyze(input: &Path, coef: CoefArg, level: LevelArg, out: &Path) -> Result<(), StageError> {
    let loaded = load_network(input)?;
    print_summary(&loaded);
    let family = coef.family();
    let rep = family_report(&loaded.net, family);
    let net = &loaded.net;

    let name = format!(
        "clustering_{}_{}.csv",
        match level {
            LevelArg::Local => "local",
            LevelArg::Node => "node",
            LevelArg::Layer => "layer",
            LevelArg::Global => "global",
        },
        family.name()
    );
    let (header, rows): (Vec<String>, Vec<Vec<String>>) = match level {
        LevelArg::Local => (
            tables::header(&["node", "layer", "value", "flagged"]),
            (0..net.order())
                .map(|h| {
                    let idx = net.unflatten(h).expect("h ranges over the supra order");
                    let c = rep.locals[h];
                    vec![
                        net.node_labels()[idx.node].clone(),
                        net.layer_labels()[idx.layer].clone(),
                        tables::value(c.value),
                        tables::flag(c.flagged),
                    ]
                })
                .collect(),
        ),
        LevelArg::Node => (
            tables::header(&["node", "value", "flagged"]),
            net.node_labels()
                .iter()
                .zip(&rep.per_node)
                .map(|(label, c)| {
                    vec![label.clone(), tables::value(c.value), tables::flag(c.flagged)]
                })
                .collect(),
        ),
        LevelArg::Layer => (
            tables::header(&["layer", "value", "flagged"]),
            net.layer_labels()
                .iter()
                .zip(&rep.per_layer)
                .map(|(label, c)| {
                    vec![label.clone(), tables::value(c.value), tables::flag(c.flagged)]
                })
                .collect(),
        ),
        LevelArg::Global => (
            tables::header(&["value", "flagged"]),
            vec![vec![
                tables::value(rep.global.value),
                tables::flag(rep.global.flagged),
            ]],
        ),
    };
    let path = tables::write_csv(out, &name, &header, rows).at(Stage::Write)?;
    println!("analysis:           clustering {} ({})", family.name(), name_of(level));
    println!("wrote:              {}", path.display());
    Ok(())
}

fn name_of(level: LevelArg) -> &'static str {
    match level {
        LevelArg::Local => "local level",
        LevelArg::Node => "node level",
        LevelArg::Layer => "layer level",
        LevelArg::Global => "global level",
    }
}

fn density(input: &Path, out: &Path) -> Result<(), StageError> {
    let loaded = load_network(input)?;
    print_summary(&loaded);
    let rows = report::densities(&loaded.net).at(Stage::Analyze)?;
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.layer.clone(),
                tables::value(r.intra_density),
                tables::value(r.avg_inter_density),
            ]
        })
        .collect();
    let path = tables::write_csv(
        out,
        "density.csv",
        &tables::header(&["layer", "intra_density", "avg_inter_density"]),
        table,
    )
    .at(Stage::Write)?;
    println!("wrote:              {}", path.display());
    Ok(())
}

fn strength(input: &Path, by: ByArg, out: &Path) -> Result<(), StageError> {
    let loaded = load_network(input)?;
    print_summary(&loaded);
    let (kind, name) = match by {
        ByArg::Node => (BreakdownBy::Node, "strength_node.csv"),
        ByArg::Layer => (BreakdownBy::Layer, "strength_layer.csv"),
    };
    let rows = report::strength_breakdown(&loaded.net, kind);
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.entity.clone(),
                tables::value(r.in_intra),
                tables::value(r.in_inter),
                tables::value(r.out_intra),
                tables::value(r.out_inter),
                tables::optional(r.intra_inter_ratio),
                tables::optional(r.in_out_ratio),
            ]
        })
        .collect();
    let path = tables::write_csv(
        out,
        name,
        &tables::header(&[
            "entity",
            "in_intra",
            "in_inter",
            "out_intra",
            "out_inter",
            "intra_inter_ratio",
            "in_out_ratio",
        ]),
        table,
    )
    .at(Stage::Write)?;
    println!("wrote:              {}", path.display());
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum Metric {
    Degree(DegreeVariant),
    Strength(StrengthVariant),
    Clustering(CoefficientFamily),
}

const METRIC_NAMES: &str = "degree, degree-in, degree-out, strength, strength-in, \
                            strength-out, clustering-arith, clustering-geom, clustering-prod";

fn parse_metric(name: &str) -> Result<Metric, StageError> {
    Ok(match name {
        "degree" => Metric::Degree(DegreeVariant::Total),
        "degree-in" => Metric::Degree(DegreeVariant::In),
        "degree-out" => Metric::Degree(DegreeVariant::Out),
        "strength" => Metric::Strength(StrengthVariant::Total),
        "strength-in" => Metric::Strength(StrengthVariant::In),
        "strength-out" => Metric::Strength(StrengthVariant::Out),
        "clustering-arith" => Metric::Clustering(CoefficientFamily::Arith),
        "clustering-geom" => Metric::Clustering(CoefficientFamily::Geom),
        "clustering-prod" => Metric::Clustering(CoefficientFamily::Prod),
        other => {
            return Err(StageError::options(format!(
                "unknown metric `{other}` (expected one of: {METRIC_NAMES})"
            )))
        }
    })
}

/// Per-node values of a metric; flagged coefficients enter as 0 so the
/// table stays total.
fn metric_values(net: &MultilayerNetwork, metric: Metric) -> Result<Vec<(String, f64)>, StageError> {
    let labels = net.node_labels();
    match metric {
        Metric::Degree(variant) => (0..net.n_nodes())
            .map(|i| Ok((labels[i].clone(), node_degree(net, i, variant)? as f64)))
            .collect::<Result<_, _>>()
            .at(Stage::Analyze),
        Metric::Strength(variant) => (0..net.n_nodes())
            .map(|i| Ok((labels[i].clone(), node_strength(net, i, variant)?)))
            .collect::<Result<_, _>>()
            .at(Stage::Analyze),
        Metric::Clustering(family) => {
            let rep = family_report(net, family);
            Ok(labels
                .iter()
                .zip(&rep.per_node)
                .map(|(l, c)| (l.clone(), c.value))
                .collect())
        }
    }
}

fn rank_cmd(input: &Path, metric_name: &str, out: &Path) -> Result<(), StageError> {
    let metric = parse_metric(metric_name)?;
    let loaded = load_network(input)?;
    print_summary(&loaded);
    let values = metric_values(&loaded.net, metric)?;
    let ranking = report::rank(&values, true).at(Stage::Analyze)?;
    let path = write_ranking(out, &format!("rank_{metric_name}.csv"), &ranking)?;
    println!("wrote:              {}", path.display());
    Ok(())
}

fn write_ranking(out: &Path, name: &str, ranking: &Ranking) -> Result<PathBuf, StageError> {
    let rows: Vec<Vec<String>> = ranking
        .entries()
        .iter()
        .map(|e| {
            vec![
                e.entity.clone(),
                tables::value(e.value),
                tables::rank_text(e.rank),
            ]
        })
        .collect();
    tables::write_csv(out, name, &tables::header(&["entity", "value", "rank"]), rows)
        .at(Stage::Write)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Against {
    Monoplex,
    Other(CoefArg),
}

fn parse_against(name: &str) -> Result<Against, StageError> {
    Ok(match name {
        "monoplex" => Against::Monoplex,
        "arith" => Against::Other(CoefArg::Arith),
        "geom" => Against::Other(CoefArg::Geom),
        "prod" => Against::Other(CoefArg::Prod),
        other => {
            return Err(StageError::options(format!(
                "unknown comparison target `{other}` (expected monoplex, arith, geom or prod)"
            )))
        }
    })
}

fn compare(input: &Path, coef: CoefArg, against_name: &str, out: &Path) -> Result<(), StageError> {
    let against = parse_against(against_name)?;
    match against {
        Against::Monoplex if coef == CoefArg::Prod => {
            return Err(StageError::options(
                "prod has no monoplex baseline; compare arith or geom against monoplex",
            ));
        }
        Against::Other(other) if other == coef => {
            return Err(StageError::options(
                "--against must name a different coefficient than --coef",
            ));
        }
        _ => {}
    }

    let loaded = load_network(input)?;
    print_summary(&loaded);
    let net = &loaded.net;
    let labels = net.node_labels();

    let per_node = |rep: &FamilyReport| -> Vec<(String, f64)> {
        labels
            .iter()
            .zip(&rep.per_node)
            .map(|(l, c)| (l.clone(), c.value))
            .collect()
    };
    let left_values = per_node(&family_report(net, coef.family()));
    let right_values: Vec<(String, f64)> = match against {
        Against::Monoplex => {
            let averages = monoplex_average(net, coef.family()).at(Stage::Analyze)?;
            labels.iter().cloned().zip(averages).collect()
        }
        Against::Other(other) => per_node(&family_report(net, other.family())),
    };

    let left = report::rank(&left_values, true).at(Stage::Analyze)?;
    let right = report::rank(&right_values, true).at(Stage::Analyze)?;
    let rho = report::spearman(&left, &right).at(Stage::Analyze)?;

    let left_name = coef.family().name();
    let rows: Vec<Vec<String>> = labels
        .iter()
        .map(|label| {
            let lv = left_values.iter().find(|(l, _)| l == label).expect("same labels");
            let rv = right_values.iter().find(|(l, _)| l == label).expect("same labels");
            vec![
                label.clone(),
                tables::value(lv.1),
                tables::rank_text(left.rank_of(label).expect("ranked")),
                tables::value(rv.1),
                tables::rank_text(right.rank_of(label).expect("ranked")),
            ]
        })
        .collect();
    let header = tables::header(&[
        "entity",
        &format!("value_{left_name}"),
        &format!("rank_{left_name}"),
        &format!("value_{against_name}"),
        &format!("rank_{against_name}"),
    ]);
    let path = tables::write_csv(
        out,
        &format!("compare_{left_name}_vs_{against_name}.csv"),
        &header,
        rows,
    )
    .at(Stage::Write)?;
    println!("spearman:           {}", tables::value(rho));
    println!("wrote:              {}", path.display());
    Ok(())
}
