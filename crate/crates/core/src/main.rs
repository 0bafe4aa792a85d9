use std::io::{IsTerminal, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let wants_stdin = argv.iter().skip(1).any(|a| a == "-");
    let mut input = String::new();
    if wants_stdin && !std::io::stdin().is_terminal() {
        if let Err(e) = std::io::stdin().read_to_string(&mut input) {
            eprintln!("reading standard input: {e}");
            return ExitCode::from(2);
        }
    }
    let stdin = wants_stdin.then_some(input.as_str());
    let out = clonelogic::cli::run(argv, stdin);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
