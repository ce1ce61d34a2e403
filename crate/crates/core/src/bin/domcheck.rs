use clap::Parser;

fn main() {
    let cli = domcheck_core::cli::Cli::parse();
    std::process::exit(domcheck_core::cli::run(cli));
}
