use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_forge::catalog;
use dirac_forge::config::{AlgebraSpec, Scenario};
use dirac_forge::report::{Format, Report};
use dirac_forge::runner::{self, Mode, Options};

#[derive(Parser)]
#[command(name = "dirac-forge", version, about = "Numerical checks for Dirac operators on Clifford modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Clifford relations, symbol maps and quantization.
    VerifyAlgebra {
        /// Signature as `p,q`; all signatures with p+q ≤ 4 when omitted.
        #[arg(long, value_parser = parse_pair)]
        sig: Option<[usize; 2]>,
        /// Restrict to one sign of the generator square.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<i32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run every block of a scenario file or built-in preset.
    Run {
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run only the convergence block of a scenario.
    Convergence {
        scenario: String,
        /// Grid sizes, e.g. `64,128,256`.
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<usize>>,
        #[command(flatten)]
        common: Common,
    },
    /// List built-in scenarios.
    List,
}

#[derive(Args)]
struct Common {
    /// Directory for report files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Report format; both when omitted.
    #[arg(long)]
    format: Option<FormatArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 for all cores).
    #[arg(long, env = "DIRAC_FORGE_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn parse_pair(s: &str) -> Result<[usize; 2], String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok([n(p)?, n(q)?])
}

/// Preset name or path to a scenario file.
fn load(arg: &str) -> anyhow::Result<(Scenario, PathBuf)> {
    let path = Path::new(arg);
    if path.exists() {
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        return Ok((Scenario::load(path)?, base));
    }
    match catalog::find(arg) {
        Some(p) => Ok((Scenario::parse(p.text, &format!("{}.cfg", p.name))?, PathBuf::from("."))),
        None => anyhow::bail!("'{arg}' is neither a scenario file nor a preset (see `dirac-forge list`)"),
    }
}

fn finish(report: &Report, common: &Common) -> anyhow::Result<ExitCode> {
    let formats = match common.format {
        Some(FormatArg::Csv) => vec![Format::Csv],
        Some(FormatArg::Json) => vec![Format::Json],
        None => vec![Format::Csv, Format::Json],
    };
    print!("{}", report.summary());
    for p in report.write(&common.out, &formats)? {
        println!("wrote {}", p.display());
    }
    Ok(if report.failures() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn options(common: &Common, base_dir: PathBuf, grids: Option<Vec<usize>>) -> Options {
    Options {
        threads: common.threads,
        seed: common.seed,
        grids,
        base_dir,
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::List => {
            let width = catalog::PRESETS.iter().map(|p| p.name.len()).max().unwrap_or(0);
            for p in catalog::PRESETS {
                println!("{:width$}  {:14}  {}", p.name, p.equation, p.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAlgebra { sig, eps, common } => {
            if let Some(e) = eps {
                anyhow::ensure!(e == 1 || e == -1, "--eps must be 1 or -1, got {e}");
            }
            let mut text = String::from("name = \"verify-algebra\"\n");
            if let Some(e) = eps {
                text.push_str(&format!("eps = [{e}]\n"));
            }
            let mut s = Scenario::parse(&text, "verify-algebra")?;
            s.algebra = Some(AlgebraSpec {
                max_n: 4,
                signature: sig,
            });
            let report = runner::run(&s, &options(&common, PathBuf::from("."), None), Mode::All)?;
            finish(&report, &common)
        }
        Command::Run { scenario, common } => {
            let (s, base) = load(&scenario)?;
            let report = runner::run(&s, &options(&common, base, None), Mode::All)?;
            finish(&report, &common)
        }
        Command::Convergence { scenario, grids, common } => {
            let (s, base) = load(&scenario)?;
            let report = runner::run(&s, &options(&common, base, grids), Mode::ConvergenceOnly)?;
            finish(&report, &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
