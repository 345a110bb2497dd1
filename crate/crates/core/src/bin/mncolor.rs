use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = mncolor::cli::dispatch(std::env::args_os());
    std::io::stdout().write_all(result.stdout.as_bytes()).ok();
    std::io::stderr().write_all(result.stderr.as_bytes()).ok();
    ExitCode::from(result.code as u8)
}
