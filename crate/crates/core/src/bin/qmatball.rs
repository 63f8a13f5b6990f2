use clap::Parser;
use qmatball::cli::{exit_code, run, Cli, QSAMPLE_VAR};

fn main() {
    let cli = Cli::parse();
    let var = std::env::var(QSAMPLE_VAR).ok();
    match run(&cli, var.as_deref()) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(out.code);
        }
        Err(e) => {
            eprintln!("qmatball: {}", e);
            std::process::exit(exit_code(&e));
        }
    }
}
