use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use grandlp_cli::{run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", e.to_json_line());
            ExitCode::from(EXIT_ERROR)
        }
    }
}
