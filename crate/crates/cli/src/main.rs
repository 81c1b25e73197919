use std::io::Write;
use std::process::ExitCode;

use concise_cli::{run, Status};

fn main() -> ExitCode {
    let (result, code) = run(std::env::args_os());
    let text = result.render();
    // errors go to stderr in text mode, the JSON envelope always to stdout
    if result.status == Status::Error && !result.json {
        let _ = std::io::stderr().write_all(text.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
