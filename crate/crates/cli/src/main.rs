use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use laumut_cli::{output_path, pretty, run, CommandRequest};

fn main() -> ExitCode {
    let request = CommandRequest::parse();
    let outcome = match run(&request) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("laumut: {}", e.0);
            return ExitCode::from(2);
        }
    };
    let mut body = outcome.body;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    if let Some(path) = output_path(&request) {
        if let Err(e) = std::fs::write(path, &body) {
            eprintln!("laumut: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else {
        let _ = std::io::stdout().write_all(body.as_bytes());
    }
    if pretty(&request) {
        if let Some(s) = outcome.summary {
            eprintln!("{s}");
        }
    }
    ExitCode::from(outcome.code as u8)
}
