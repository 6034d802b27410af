use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = abflux_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match abflux_cli::run(cli, &mut stdout) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code)
        }
    }
}
