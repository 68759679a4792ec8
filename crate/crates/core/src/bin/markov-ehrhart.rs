use std::io::stdout;

fn main() {
    let code = markov_ehrhart::cli::run(std::env::args_os(), &mut stdout().lock());
    std::process::exit(code);
}
