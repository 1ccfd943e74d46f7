use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(donaldson::cli::run(std::env::args_os()))
}
