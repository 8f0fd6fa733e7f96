use std::process::ExitCode;

use clap::Parser;

use tropcount_cli::{run, Cli, CHECK_FAILED};

/// Worker threads for the parallel parts of the library.
const THREADS_VAR: &str = "TROPCOUNT_THREADS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring {THREADS_VAR}={v:?}"),
        }
    }
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(CHECK_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
