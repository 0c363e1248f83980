use std::process::ExitCode;

fn main() -> ExitCode {
    kgibbs_cli::run(std::env::args_os())
}
