use std::process::ExitCode;

use clap::Parser;

use bdl::cli::checks::{run_checks, CHECKS};
use bdl::cli::{resolve, to_json, Cli, Command, Format};
use bdl::par;
use bdl::report::text_summary;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = match cli.command {
        Command::List => {
            for c in CHECKS {
                println!("{:<22} {}", c.name, c.about);
            }
            return ExitCode::SUCCESS;
        }
        Command::Run(args) => args,
    };
    let cfg = match resolve(&args, std::env::var("BDL_JOBS").ok()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("bdl: {e}");
            return ExitCode::from(2);
        }
    };
    match cfg.jobs {
        Some(1) => par::set_sequential(true),
        Some(j) => par::init_threads(j),
        None => {}
    }
    let reports = run_checks(&cfg);
    let json = to_json(&reports);
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("bdl: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match args.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{}", text_summary(&reports)),
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
