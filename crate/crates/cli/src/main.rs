use clap::Parser;

fn main() {
    let cli = shiftpart_cli::Cli::parse();
    std::process::exit(shiftpart_cli::run(cli));
}
