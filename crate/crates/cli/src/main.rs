use clap::Parser;

fn main() {
    let cli = wh_cli::Cli::parse();
    std::process::exit(wh_cli::main_with(&cli));
}
