use std::process::ExitCode;

use clap::Parser;

use fundament_cli::commands::error_document;
use fundament_cli::{run, Cli, CliError, Workspace};

fn execute(cli: &Cli) -> Result<String, CliError> {
    let ws = Workspace::parse_files(&cli.files, cli.max_order)?;
    let report = run(&ws, &cli.command)?;
    Ok(if cli.json {
        serde_json::to_string(&report.document(cli)).expect("documents serialize")
    } else {
        report.text()
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if cli.json {
                println!("{}", serde_json::to_string(&error_document(&err)).expect("documents serialize"));
            }
            eprintln!("error: {err}");
            ExitCode::from(if matches!(err, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}
