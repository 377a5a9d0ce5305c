use std::process::ExitCode;

fn main() -> ExitCode {
    let code = superspace::cli::run_with_args(
        std::env::args().skip(1),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}
