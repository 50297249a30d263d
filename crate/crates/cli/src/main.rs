use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (text, code) = toeplitz_cli::run(std::env::args_os());
    if code == toeplitz_cli::EXIT_INPUT {
        eprint!("{text}");
    } else {
        print!("{text}");
        let _ = std::io::stdout().flush();
    }
    ExitCode::from(code as u8)
}
