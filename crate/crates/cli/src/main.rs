use clap::Parser;

use mgnet_cli::{run, Cli};

fn main() {
    // MGNET_SEED is accepted and ignored.
    let _ = std::env::var_os("MGNET_SEED");
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
