use std::process::ExitCode;

fn main() -> ExitCode {
    filiform::cli::main_with_args(std::env::args_os())
}
