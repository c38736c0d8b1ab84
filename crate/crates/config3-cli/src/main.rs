use std::io::Write;

fn main() {
    let outcome = config3_cli::run(std::env::args_os(), None);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
