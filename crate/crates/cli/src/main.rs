use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(constlab_cli::run_from_env())
}
