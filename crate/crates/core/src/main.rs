use clap::Parser;
use schur_regions::cli::{configure_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    configure_threads();
    std::process::exit(run(&cli));
}
