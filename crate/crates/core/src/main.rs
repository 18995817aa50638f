use std::io;
use std::process::ExitCode;

use tropiball::cli;

fn main() -> ExitCode {
    if let Err(e) = cli::configure_threads() {
        eprintln!("{}", e.to_json());
        return ExitCode::from(e.exit_code() as u8);
    }
    let code = cli::execute(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
