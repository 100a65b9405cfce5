use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cheqlab::cli::run(std::env::args_os()))
}
