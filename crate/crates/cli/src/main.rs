use std::process::ExitCode;

use clap::Parser;

use hessgkm_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    match run(&config) {
        Ok((text, _)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = e.to_json();
            let text = if config.pretty {
                serde_json::to_string_pretty(&body).expect("JSON values serialize")
            } else {
                body.to_string()
            };
            // The error object goes to stdout so callers can parse it; the
            // message is repeated on stderr for humans.
            println!("{text}");
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
