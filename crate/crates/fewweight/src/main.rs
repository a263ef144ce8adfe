use clap::Parser;

use fewweight::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    match cli::run(args) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(cli::error_exit_code(&err));
        }
    }
}
