use std::io;

use clap::Parser;
use symq_cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap exits 2 on usage errors, 0 for --help and --version.
            std::process::exit(e.exit_code());
        }
    };
    let code = run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
