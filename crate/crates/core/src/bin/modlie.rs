use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modlie::acceptance::{run_all, AcceptanceOptions};
use modlie::catalog::{parse_entry, Catalog};
use modlie::group::DEFAULT_ORDER_CAP;
use modlie::oracle::DEFAULT_ORACLE_CAP;
use modlie::report::{analyze, scan, AnalyzeOptions, OracleMode, ScanOptions};

#[derive(Parser)]
#[command(
    name = "modlie",
    version,
    about = "Lie nilpotency indices of modular group algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group: a catalog name or an inline JSON entry
    Analyze {
        group: String,
        #[arg(long, short, default_value_t = 2)]
        prime: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze every catalog entry up to an order bound
    Scan {
        #[arg(long, short, default_value_t = 2)]
        prime: u64,
        #[arg(long, default_value_t = 128)]
        max_order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance suite
    Selftest {
        /// Oracle cap; 0 skips the oracle criteria
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Catalog file (defaults to the shipped catalog)
    #[arg(long)]
    catalog: Option<std::path::PathBuf>,
    /// Run the oracle regardless of size
    #[arg(long, conflicts_with = "no_oracle")]
    oracle: bool,
    #[arg(long)]
    no_oracle: bool,
    /// Largest group order the oracle runs on automatically
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    cap: usize,
    /// Largest group order that may be built
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    #[arg(long)]
    json: bool,
}

impl Common {
    fn analyze_options(&self) -> AnalyzeOptions {
        let oracle = if self.oracle {
            OracleMode::Force
        } else if self.no_oracle {
            OracleMode::Off
        } else {
            OracleMode::Auto
        };
        AnalyzeOptions {
            oracle,
            oracle_cap: self.cap,
        }
    }

    fn catalog(&self) -> Result<Catalog, String> {
        match &self.catalog {
            Some(path) => Catalog::load(path).map_err(|e| e.to_string()),
            None => Ok(Catalog::shipped()),
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze {
            group,
            prime,
            common,
        } => {
            let catalog = match common.catalog() {
                Ok(c) => c,
                Err(e) => return fail(2, &e),
            };
            let built = if group.trim_start().starts_with('{') {
                parse_entry(&group, 1).and_then(|e| {
                    catalog
                        .build_entry(&e, common.order_cap)
                        .map(|g| (e.name, g))
                })
            } else {
                catalog
                    .build(&group, common.order_cap)
                    .map(|g| (group.clone(), g))
            };
            let (name, g) = match built {
                Ok(x) => x,
                Err(e) => return fail(2, &e.to_string()),
            };
            let report = match analyze(&name, &g, prime, common.analyze_options()) {
                Ok(r) => r,
                Err(e) => return fail(2, &e.to_string()),
            };
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Command::Scan {
            prime,
            max_order,
            common,
        } => {
            let catalog = match common.catalog() {
                Ok(c) => c,
                Err(e) => return fail(2, &e),
            };
            let opts = ScanOptions {
                prime,
                max_order,
                order_cap: common.order_cap,
                analyze: common.analyze_options(),
            };
            let report = match scan(&catalog, opts) {
                Ok(r) => r,
                Err(e) => return fail(2, &e.to_string()),
            };
            if common.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render());
            }
            if !report.summary.build_errors.is_empty() {
                ExitCode::from(2)
            } else if !report.passed() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Selftest { cap } => {
            let results = run_all(AcceptanceOptions {
                oracle_cap: cap,
                ..AcceptanceOptions::default()
            });
            for r in &results {
                println!("{r}");
            }
            if results.iter().all(|r| r.ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}
