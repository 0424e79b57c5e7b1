use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thue_area::extremal::ExtremalOptions;
use thue_area::{parse_form, Error};
use thue_area_cli::commands::{self, CountMode};
use thue_area_cli::output::{error_json, exit_code, Report};
use thue_area_cli::plot::{level_set, Format, PlotSpec};

#[derive(Parser)]
#[command(name = "thue-area", version, about = "Areas, invariants and lattice counts for binary forms")]
struct Cli {
    /// Print CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Area of |F(x,y)| <= 1.
    Area {
        form: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// |D_F|^{1/n(n-1)} times the area.
    Invariant {
        form: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Discriminant (exact for rational coefficients).
    Disc { form: String },
    /// Integer points with |F(x,y)| <= h.
    Count {
        form: String,
        #[arg(long)]
        h: u64,
        /// Count inside [-W, W]^2 only.
        #[arg(long = "box", value_name = "W", conflicts_with = "definite")]
        halfwidth: Option<u64>,
        /// Exact count for a definite form (the default).
        #[arg(long)]
        definite: bool,
        /// Also list the points of a box count.
        #[arg(long)]
        points: bool,
    },
    /// Counts against A_F h^{2/n} over a list of h.
    Mahler {
        form: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64,128,256")]
        h_list: Vec<u64>,
        #[arg(long = "box", value_name = "W")]
        halfwidth: Option<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Numerical maxima of the invariant over real-rooted forms, n = 3..=n_max.
    Extremal {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Coefficients of P_k = X^{2k} + prod_{j<=k} (jX - Y)^2.
    Pk {
        #[arg(long)]
        k: u32,
    },
    /// Coefficients of F_n^* = prod_k (X sin(k pi/n) - Y cos(k pi/n)).
    Fstar {
        #[arg(long)]
        n: u32,
    },
    /// Level curve |F| = level by marching squares.
    Plot {
        form: String,
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        #[arg(long, default_value_t = 2.0)]
        window: f64,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        format: PlotFormat,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Csv,
    Svg,
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("THUE_AREA_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("THUE_AREA_THREADS must be a non-negative integer, got {raw:?}")))?;
    // 0 leaves rayon's default (one worker per core)
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    Ok(())
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("{}", error_json(e));
    ExitCode::from(exit_code(e) as u8)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let report: Report = match cli.command {
        Command::Area { form, tol } => commands::area(&form, tol)?,
        Command::Invariant { form, tol } => commands::invariant(&form, tol)?,
        Command::Disc { form } => commands::disc(&form)?,
        Command::Count { form, h, halfwidth, definite: _, points } => {
            let mode = halfwidth.map_or(CountMode::Definite, CountMode::Box);
            commands::count(&form, h, mode, points)?
        }
        Command::Mahler { form, h_list, halfwidth, tol } => commands::mahler(&form, &h_list, halfwidth, tol)?,
        Command::Extremal { n_max, restarts, seed } => {
            let mut opts = ExtremalOptions { restarts, ..Default::default() };
            if let Some(s) = seed {
                opts.seed = s;
            }
            commands::extremal(n_max, &opts)?
        }
        Command::Pk { k } => commands::pk(k)?,
        Command::Fstar { n } => commands::fstar(n)?,
        Command::Plot { form, level, window, samples, format, out } => {
            let format = match format {
                PlotFormat::Csv => Format::Csv,
                PlotFormat::Svg => Format::Svg,
            };
            let spec = PlotSpec { level, window, samples, format };
            let f = parse_form(&form)?;
            let ls = level_set(&f, &spec)?;
            let body = ls.render(format);
            match &out {
                Some(path) => std::fs::write(path, &body)
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{body}"),
            }
            if ls.segments.is_empty() {
                eprintln!(
                    "{}",
                    json!({
                        "error": "EmptyLevelSet",
                        "reason": "empty-level-set",
                        "message": format!("|F| = {level} does not meet the window [-{window}, {window}]^2"),
                    })
                );
                return Ok(ExitCode::from(2));
            }
            if let Some(path) = out {
                let summary = json!({
                    "out": path.display().to_string(),
                    "segments": ls.segments.len(),
                    "components": ls.components(),
                    "closed": ls.is_closed(),
                    "open_ends": ls.open_ends(),
                });
                println!("{}", serde_json::to_string_pretty(&summary).expect("serialisable"));
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    print!("{}", report.render(cli.csv));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = configure_threads() {
        return fail(&e);
    }
    run(cli).unwrap_or_else(|e| fail(&e))
}
