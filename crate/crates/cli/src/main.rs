use std::io;

fn main() {
    let code = casimir_entropy_cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
