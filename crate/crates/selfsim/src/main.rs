use clap::Parser;

fn main() {
    std::process::exit(selfsim::cli::run(selfsim::cli::Cli::parse()));
}
