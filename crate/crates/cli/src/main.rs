use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qgalois::config::{self, RunConfig};
use qgalois::report::Report;
use qgalois::Error;

#[derive(Parser)]
#[command(name = "qgalois", version, about = "Exact checks for Taft-type quantum groups and their Galois objects")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exit 1 if any check fails.
    Verify(Common),
    /// Print the computed structure data.
    Table(Common),
    /// Apply a structure map to an element literal.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Element literal, e.g. "x^2*y - z*y".
        expr: String,
        /// alpha, beta, S, S_inv, Delta, sigma, epsilon, phi, psi, sigma_X,
        /// sigma_X_inv, theta_X, phi_X, psi_X, gamma, beta_C, Delta_C, S_C, id
        #[arg(long, default_value = "id")]
        map: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long = "lambda-exp", default_value_t = 1, allow_negative_numbers = true)]
    lambda_exp: i64,
    /// Scalar literal in Q(z), z = exp(2 pi i / n).
    #[arg(long, default_value = "1")]
    mu: String,
    #[arg(long, default_value_t = 3)]
    window: u32,
    /// Comma list of suites, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Common {
    fn config(&self) -> Result<RunConfig, Error> {
        RunConfig::new(self.n, self.m, self.lambda_exp, &self.mu, self.window).with_suites(&self.suite)
    }

    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("cannot write {}: {e}", p.display())),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }

    fn render(&self, r: &Report) -> String {
        match self.format {
            Format::Text => r.to_string(),
            Format::Json => serde_json::to_string_pretty(r).expect("reports serialize"),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Parse { .. } => 2,
        _ => 3,
    }
}

fn run(cmd: Command) -> u8 {
    let result = match &cmd {
        Command::Verify(c) => c.config().and_then(|cfg| config::verify(&cfg)).map(|r| {
            let code = if r.all_passed() { 0 } else { 1 };
            (c.render(&r), code)
        }),
        Command::Table(c) => c.config().and_then(|cfg| config::table(&cfg)).map(|r| (c.render(&r), 0)),
        Command::Eval { common, expr, map } => common.config().and_then(|cfg| config::eval(&cfg, expr, map)).map(|s| {
            let text = match common.format {
                Format::Text => s,
                Format::Json => serde_json::json!({ "schema": 1, "expr": expr, "map": map, "result": s }).to_string(),
            };
            (text, 0)
        }),
    };
    let common = match &cmd {
        Command::Verify(c) | Command::Table(c) => c,
        Command::Eval { common, .. } => common,
    };
    match result {
        Ok((text, code)) => match common.emit(&text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = std::env::var("QGALOIS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli.cmd))) {
        Ok(code) => ExitCode::from(code),
        Err(_) => {
            eprintln!("error: internal inconsistency (panic)");
            ExitCode::from(3)
        }
    }
}
