use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qtrig_cli::{exit, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    let out_path = match &cli.command {
        qtrig_cli::args::Command::Basis(a) => a.common.out.clone(),
        qtrig_cli::args::Command::Curve(a) => a.common.out.clone(),
        qtrig_cli::args::Command::Rational(a) => a.common.out.clone(),
        qtrig_cli::args::Command::Check(_) => None,
    };
    match run(&cli.command) {
        Ok(outcome) => {
            let written = match &out_path {
                Some(path) => std::fs::write(path, &outcome.output).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                }),
                None => std::io::stdout()
                    .write_all(outcome.output.as_bytes())
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    }),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(exit::USAGE as u8);
            }
            ExitCode::from(if outcome.passed {
                exit::OK
            } else {
                exit::PROPERTY_VIOLATION
            } as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
