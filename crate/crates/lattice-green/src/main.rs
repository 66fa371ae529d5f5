use clap::Parser;

fn main() {
    let cli = lattice_green::cli::Cli::parse();
    std::process::exit(lattice_green::cli::run(cli));
}
