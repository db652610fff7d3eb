use std::io::{IsTerminal, Write};

fn main() {
    let style = iaf_cli::Style::from_env(std::io::stdout().is_terminal());
    let out = iaf_cli::run(std::env::args_os(), &mut std::io::stdin().lock(), style);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.status);
}
