use clap::Parser;

fn main() {
    let config = arbcalc::cli::Config::parse();
    std::process::exit(arbcalc::cli::main(config));
}
