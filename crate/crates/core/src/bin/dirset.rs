use std::process::ExitCode;

fn main() -> ExitCode {
    dirset::cli::main_with_args(std::env::args_os())
}
