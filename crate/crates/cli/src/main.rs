use std::io::{Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<_> = std::env::args_os().skip(1).collect();
    // stdin is only read when no --input file is named
    let wants_stdin = !args
        .iter()
        .any(|a| a == "--input" || a.to_string_lossy().starts_with("--input="))
        || args.windows(2).any(|w| w[0] == "--input" && w[1] == "-");
    let needs_doc = !args
        .iter()
        .any(|a| a == "catalog" || a == "--help" || a == "-h" || a == "--version");
    let mut stdin = Vec::new();
    if wants_stdin && needs_doc {
        let _ = std::io::stdin().read_to_end(&mut stdin);
    }
    let (code, out) = jthresh_cli::run(args, &stdin);
    let _ = std::io::stdout().write_all(&out);
    ExitCode::from(code as u8)
}
