use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(orbicoh::cli::run() as u8)
}
