use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nearly_regular::commands::{
    run_experiment, run_extract, Algorithm, Experiment, ExperimentOptions, ExtractOptions, Outcome,
};
use nearly_regular::graph::{read_edge_list, serialize_edge_list};
use nearly_regular::instances::{ModelKind, ModelParams};
use nearly_regular::report::REPORT_SCHEMA;
use nearly_regular::{Error, RunReport};

#[derive(Parser)]
#[command(name = "nreg", version, about = "Large nearly regular subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance as an edge list (plus a JSON sidecar with --out).
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an extraction algorithm on an edge-list file.
    Extract {
        algorithm: String,
        file: PathBuf,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        exact_limit: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an estimator or oracle scan.
    Experiment {
        name: String,
        #[arg(long, default_value_t = 100)]
        t: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Blocks,
    BlocksPadded,
    GnpBar,
    CompleteBipartite,
    Star,
    Gnp,
}

impl From<Kind> for ModelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Blocks => ModelKind::Blocks,
            Kind::BlocksPadded => ModelKind::BlocksPadded,
            Kind::GnpBar => ModelKind::GnpBar,
            Kind::CompleteBipartite => ModelKind::CompleteBipartite,
            Kind::Star => ModelKind::Star,
            Kind::Gnp => ModelKind::GnpUniform,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("nreg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let started = Instant::now();
    match command {
        Command::Gen {
            kind,
            s,
            n,
            k,
            p,
            seed,
            out,
        } => {
            let params = ModelParams {
                kind: kind.into(),
                s,
                n,
                k,
                p,
                seed,
            };
            let text = serialize_edge_list(&params.generate()?);
            match out {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    let mut sidecar = path.into_os_string();
                    sidecar.push(".json");
                    std::fs::write(sidecar, serde_json::to_string_pretty(&params)? + "\n")?;
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Extract {
            algorithm,
            file,
            k,
            alpha,
            c,
            eps,
            exact_limit,
            common,
        } => {
            let alg: Algorithm = algorithm.parse()?;
            let g = read_edge_list(&file)?;
            let opts = ExtractOptions {
                k,
                alpha,
                c,
                eps,
                exact_limit,
            };
            let outcome = run_extract(alg, &g, &opts);
            let report = |o: Outcome| RunReport {
                schema: REPORT_SCHEMA,
                command: argv.clone(),
                algorithm: alg.name().to_string(),
                seed: common.seed,
                input: Some(g.stats()),
                result: o.result,
                bounds: o.bounds,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            emit(outcome, report, &common)
        }
        Command::Experiment {
            name,
            t,
            trials,
            n,
            k,
            samples,
            common,
        } => {
            let exp: Experiment = name.parse()?;
            let opts = ExperimentOptions {
                t,
                trials,
                n,
                k,
                samples,
                ..Default::default()
            };
            let outcome = run_experiment(exp, &opts, common.seed.unwrap_or(0));
            let report = |o: Outcome| RunReport {
                schema: REPORT_SCHEMA,
                command: argv.clone(),
                algorithm: exp.name().to_string(),
                seed: Some(common.seed.unwrap_or(0)),
                input: None,
                result: o.result,
                bounds: o.bounds,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            emit(outcome, report, &common)
        }
    }
}

/// Writes the report; a failed bound still produces one, with exit code 1.
fn emit(
    outcome: Result<Outcome, Error>,
    report: impl Fn(Outcome) -> RunReport,
    common: &Common,
) -> Result<u8, Error> {
    let report = match outcome {
        Ok(o) => report(o),
        Err(Error::BoundViolation(bounds)) => report(Outcome {
            result: serde_json::Value::Null,
            bounds,
        }),
        Err(e) => return Err(e),
    };
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Text => render_text(&report),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn render_text(r: &RunReport) -> String {
    let mut out = format!("algorithm: {}\n", r.algorithm);
    if let Some(s) = &r.input {
        out += &format!(
            "input: n={} m={} max={} min={} avg={:.4}\n",
            s.n, s.m, s.max_deg, s.min_deg, s.avg_deg
        );
    }
    let nested = r.result.get("result").unwrap_or(&r.result);
    if let Some(stats) = nested.get("stats") {
        out += &format!("result: {stats}\n");
    }
    if let Some(fields) = r.result.as_object() {
        for (key, value) in fields {
            if !(value.is_object() || value.is_array()) || key == "values" {
                out += &format!("{key}: {value}\n");
            }
        }
    }
    for b in &r.bounds {
        let rel = serde_json::to_value(b.relation).unwrap();
        let mark = if b.pass { "ok" } else { "FAIL" };
        out += &format!(
            "[{mark}] {} {} {} {}\n",
            b.name,
            b.achieved,
            rel.as_str().unwrap_or("?"),
            b.threshold
        );
    }
    out += &format!("time: {:.1} ms\n", r.wall_time_ms);
    out
}
