//! Command-line interface: `verify`, `homology`, `cycles`, `oracle-compare`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::complex::special::{u_product, v_cycle, w_chain};
use crate::complex::w::WComplex;
use crate::complex::wtilde::WtComplex;
use crate::complex::y::YComplex;
use crate::complex::Margin;
use crate::homology::solve::{certify_unchecked, CertifyOptions};
use crate::homology::BuildOptions;
use crate::verifier::config::{parse_scenario, OutputFormat, Scenario};
use crate::verifier::report::{RunReport, Status};
use crate::verifier::suites::{run_suite, SuiteError, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "skewhh",
    about = "Exact Hochschild homology engine for iterated skew polynomial rings",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Scenario config file.
    config: PathBuf,
    /// Output format override.
    #[arg(long, value_parser = ["table", "json"])]
    format: Option<String>,
    /// Seed override for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Twist-exponent variant for the e1 row-0 boundary (plus|minus).
    #[arg(long, value_parser = ["plus", "minus"])]
    variant: Option<String>,
    /// Margin override: one integer n (interpreted as (n, 2n, 2)) or
    /// "di,dadeg,dlen".
    #[arg(long)]
    margin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites listed in the config (or all compatible ones).
    Verify(CommonOpts),
    /// Certified homology of the configured family.
    Homology {
        #[command(flatten)]
        common: CommonOpts,
        /// Restrict to one weight.
        #[arg(long)]
        weight: Option<i64>,
        /// Restrict to one homological position.
        #[arg(long)]
        position: Option<u32>,
    },
    /// Print a distinguished cycle of the small shift complex.
    Cycles {
        #[command(flatten)]
        common: CommonOpts,
        /// Cycle kind: U, V, or W.
        #[arg(long)]
        kind: String,
        /// Index n.
        #[arg(long)]
        n: i64,
        /// Second index for the U family.
        #[arg(long)]
        j: Option<i64>,
    },
    /// Compare the full complex against the canonical-complex oracle.
    OracleCompare(CommonOpts),
}

fn load_scenario(opts: &CommonOpts) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(&opts.config)
        .map_err(|e| format!("cannot read {}: {}", opts.config.display(), e))?;
    let mut sc = parse_scenario(&text).map_err(|e| e.to_string())?;
    if let Some(f) = &opts.format {
        sc.format = if f == "json" {
            OutputFormat::Json
        } else {
            OutputFormat::Table
        };
    }
    if let Some(seed) = opts.seed {
        sc.seed = seed;
    }
    if let Some(v) = &opts.variant {
        sc.variant = if v == "minus" {
            crate::complex::y::TwistVariant::GammaNegJ
        } else {
            crate::complex::y::TwistVariant::GammaJ
        };
    }
    if let Some(m) = &opts.margin {
        let parts: Vec<&str> = m.split(',').collect();
        sc.margin = match parts.as_slice() {
            [n] => {
                let n: i64 = n.trim().parse().map_err(|_| "bad margin".to_string())?;
                Margin::new(n as u32, 2 * n, 2)
            }
            [a, b, c] => Margin::new(
                a.trim().parse().map_err(|_| "bad margin".to_string())?,
                b.trim().parse().map_err(|_| "bad margin".to_string())?,
                c.trim().parse().map_err(|_| "bad margin".to_string())?,
            ),
            _ => return Err("margin must be 'n' or 'di,dadeg,dlen'".into()),
        };
    }
    Ok(sc)
}

pub fn main_with(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Verify(opts) => {
            let sc = match load_scenario(&opts) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("config error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let names: Vec<String> = if sc.suites.is_empty() {
                SUITE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                sc.suites.clone()
            };
            let mut suites = Vec::new();
            for name in &names {
                match run_suite(name, &sc) {
                    Ok(rep) => suites.push(rep),
                    Err(SuiteError::Unknown(n)) => {
                        eprintln!("unknown suite '{}'", n);
                        return ExitCode::from(2);
                    }
                    Err(SuiteError::Config { suite, msg }) => {
                        eprintln!("configuration error in suite '{}': {}", suite, msg);
                        return ExitCode::from(2);
                    }
                }
            }
            let report = RunReport {
                seed: sc.seed,
                suites,
            };
            match sc.format {
                OutputFormat::Json => println!("{}", report.to_json()),
                OutputFormat::Table => print!("{}", report.to_table()),
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Homology {
            common,
            weight,
            position,
        } => {
            let sc = match load_scenario(&common) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("config error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let opts = CertifyOptions {
                build: BuildOptions::default(),
                parallel: sc.parallel,
            };
            let d = sc.spec.validate();
            if !d.is_ok() {
                eprintln!("invalid presentation: {}", d.violations.join("; "));
                return ExitCode::from(2);
            }
            // Family choice: the small complex when the hypotheses hold,
            // otherwise the full complex.
            let report = if WComplex::new(sc.spec.clone()).is_ok() && sc.window.weights == [0] {
                let wc = WComplex::new(sc.spec.clone()).unwrap();
                certify_unchecked(&wc, &sc.window, sc.margin, &opts)
            } else if crate::complex::wtilde::check_scaling_hypotheses(&sc.spec).is_ok()
                && sc.window.weights.len() == 1
            {
                let wt = WtComplex::new(sc.spec.clone(), sc.window.weights[0]).unwrap();
                certify_unchecked(&wt, &sc.window, sc.margin, &opts)
            } else {
                let yc = YComplex::with_variant(sc.spec.clone(), sc.variant);
                certify_unchecked(&yc, &sc.window, sc.margin, &opts)
            };
            let mut report = match report {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{}", e);
                    return ExitCode::from(1);
                }
            };
            if let Some(w) = weight {
                report.blocks.retain(|b| b.weight == w);
            }
            if let Some(p) = position {
                report.blocks.retain(|b| b.degree == p);
            }
            match sc.format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                ),
                OutputFormat::Table => {
                    println!("family: {}", report.family);
                    for b in &report.blocks {
                        println!(
                            "weight {:3} position {:2}: dim {:4} {}",
                            b.weight,
                            b.degree,
                            b.dim,
                            if b.certified { "certified" } else { "uncertified" }
                        );
                        for r in &b.representatives {
                            println!("    {}", r);
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Cycles { common, kind, n, j } => {
            let sc = match load_scenario(&common) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("config error: {}", e);
                    return ExitCode::from(2);
                }
            };
            let out = match kind.as_str() {
                "U" | "u" => {
                    let j = j.unwrap_or(-1);
                    if j > n - 1 {
                        Err(crate::complex::ChainError::IndexRange(
                            "the U family needs -1 <= j <= n-1".into(),
                        ))
                    } else {
                        u_product(&sc.spec, n, j).map(|p| format!("{}", p))
                    }
                }
                "V" | "v" => v_cycle(&sc.spec, n).map(|c| format!("{}", c)),
                "W" | "w" => w_chain(&sc.spec, n).map(|c| format!("{}", c)),
                other => {
                    eprintln!("unknown cycle kind '{}' (U|V|W)", other);
                    return ExitCode::from(2);
                }
            };
            match out {
                Ok(text) => {
                    println!("{}", text);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}", e);
                    return ExitCode::from(1);
                }
            }
        }
        Command::OracleCompare(opts) => {
            let sc = match load_scenario(&opts) {
                Ok(sc) => sc,
                Err(e) => {
                    eprintln!("config error: {}", e);
                    return ExitCode::from(2);
                }
            };
            match run_suite("bar-oracle", &sc) {
                Ok(rep) => {
                    let all = rep.status == Status::Pass;
                    let report = RunReport {
                        seed: sc.seed,
                        suites: vec![rep],
                    };
                    match sc.format {
                        OutputFormat::Json => println!("{}", report.to_json()),
                        OutputFormat::Table => print!("{}", report.to_table()),
                    }
                    if all {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("{}", e);
                    ExitCode::from(2)
                }
            }
        }
    }
}
