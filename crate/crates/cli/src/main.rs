use std::process::ExitCode;

use clap::Parser;
use diagasym_cli::commands::{run, Cli};
use diagasym_cli::error::exit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().trim_end());
            ExitCode::from(e.exit_code())
        }
    }
}
