use clap::Parser;

fn main() {
    let cli = drinfeld_forge::cli::Cli::parse();
    std::process::exit(drinfeld_forge::cli::run(cli));
}
