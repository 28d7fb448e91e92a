use std::process::ExitCode;

fn main() -> ExitCode {
    tlu_cli::main_impl()
}
