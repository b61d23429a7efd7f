use std::process::ExitCode;

fn main() -> ExitCode {
    motzkin_core::cli::run()
}
