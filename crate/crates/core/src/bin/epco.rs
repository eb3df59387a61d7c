use clap::Parser;

fn main() {
    let cli = epco::cli::Cli::parse();
    let stdout = std::io::stdout();
    if let Err(e) = epco::cli::execute(cli, &mut stdout.lock()) {
        eprintln!("epco: {e}");
        std::process::exit(1);
    }
}
