use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use quadspec_cli::{emit, run, Cli, CliError, OUT_DIR_ENV};

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.record());
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            return fail(&CliError::Usage(msg.trim_end().to_string()));
        }
    };
    let env_dir = std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    match run(&cli, env_dir.as_deref()).and_then(|o| emit(&o)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => fail(&e),
    }
}
