use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use poissonlab_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let nl = if out.text.ends_with('\n') { "" } else { "\n" };
            // a closed pipe (e.g. `| head`) is not a failure of the computation
            let _ = write!(stdout, "{}{nl}", out.text).and_then(|_| stdout.flush());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
