use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bracketwidth_cli::demo::{self, Context};
use bracketwidth_cli::{verify, Suite, SuiteConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bracketwidth",
    version,
    about = "Exact verification of bracket-width certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded property suites: all, torus-poisson, danielewski, curve, width1, ratcurve
    Verify {
        suite: String,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Single-shot decompositions
    Demo {
        #[command(subcommand)]
        action: DemoAction,
    },
}

#[derive(Args)]
struct VerifyOpts {
    /// Danielewski polynomial p(z)
    #[arg(long)]
    p: Option<String>,
    /// Hyperelliptic polynomial h(x), monic of odd degree >= 3
    #[arg(long)]
    h: Option<String>,
    /// Comma-separated rational poles of the punctured line
    #[arg(long)]
    poles: Option<String>,
    /// Variable signature such as "a:2,t:1"
    #[arg(long)]
    space: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long = "degree-bound", default_value_t = 4)]
    degree_bound: u32,
    /// Write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DemoAction {
    /// Decompose an element: contexts dan, torus, ratcurve
    Decompose {
        context: String,
        element: String,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        poles: Option<String>,
    },
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_verify(suite: &str, opts: VerifyOpts) -> ExitCode {
    let selected = match suite {
        "all" => None,
        name => match Suite::from_name(name) {
            Some(s) => Some(s),
            None => return usage(&format!("unknown suite `{name}`")),
        },
    };
    let config = SuiteConfig {
        seed: opts.seed,
        samples: opts.samples,
        degree_bound: opts.degree_bound,
        p: opts.p,
        h: opts.h,
        poles: opts.poles,
        space: opts.space,
    };
    let report = match verify(selected, &config) {
        Ok(r) => r,
        Err(e) => return usage(&e.to_string()),
    };
    let json = report.to_json();
    if let Some(path) = &opts.out {
        if let Err(e) = fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if opts.json {
        println!("{json}");
    } else {
        println!("{report}");
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, opts } => run_verify(&suite, opts),
        Command::Demo {
            action:
                DemoAction::Decompose {
                    context,
                    element,
                    p,
                    poles,
                },
        } => {
            let Some(ctx) = Context::from_name(&context) else {
                return usage(&format!("unknown context `{context}`"));
            };
            match demo::decompose(ctx, &element, p.as_deref(), poles.as_deref()) {
                Ok((text, ok)) => {
                    print!("{text}");
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => usage(&e.to_string()),
            }
        }
    }
}
