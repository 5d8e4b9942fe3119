use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let status = foxwright::cli::run_with(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(status.code() as u8)
}
