use std::io;
use std::process::ExitCode;

use stratameter::cli::{self, Context};

fn main() -> ExitCode {
    let ctx = match Context::from_env() {
        Ok(ctx) => ctx,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            return ExitCode::from(failure.code);
        }
    };
    let stdin = io::stdin();
    let code = cli::run(
        std::env::args_os(),
        &ctx,
        &mut stdin.lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}
