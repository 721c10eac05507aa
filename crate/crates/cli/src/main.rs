use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ltoral_cli::args::Cli;
use ltoral_cli::run;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let text = outcome.render();
    let written = match &outcome.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("ltoral: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code as u8)
}
