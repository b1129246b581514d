use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(bplab::cli::run_from(std::env::args_os()))
}
