use clap::Parser;
use p2c::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = run(&cli, &mut stdout) {
        let doc = serde_json::json!({ "error": e.info() });
        eprintln!("{doc}");
        std::process::exit(e.exit_code());
    }
}
