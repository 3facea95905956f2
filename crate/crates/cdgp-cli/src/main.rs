mod commands;

use clap::Parser;
use commands::Cli;

/// Exit codes: 0 feasible, 1 infeasible, 2 timed out, 3 runtime errors
/// (missing/invalid files), 64 usage errors.
fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Keep clap's rendered message but pin the exit code so it
            // cannot collide with the timeout code.
            let _ = e.print();
            let code = if e.use_stderr() { 64 } else { 0 };
            std::process::exit(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(3);
        }
    }
}
