use clap::Parser;
use locc_cli::{execute, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    let code = match RunConfig::try_from(cli).and_then(|config| execute(&config)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
