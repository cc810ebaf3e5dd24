mod args;
mod certs;
mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use valgcd_core::ErrorKind;

use args::{Cli, Format};

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 64,
        ErrorKind::Precondition => 65,
        ErrorKind::Budget => 69,
        ErrorKind::Verification => 70,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("valgcd: error: cannot start {n} threads: {e}");
            return ExitCode::from(65);
        }
    }
    let format = cli.format;
    match commands::run(cli.command) {
        Ok(doc) => {
            match format {
                Format::Json => println!("{}", doc.to_json()),
                Format::Table => print!("{}", doc.to_table()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(e.kind());
            eprintln!("valgcd: error: {e}");
            if format == Format::Json {
                let doc = json!({
                    "schema": report::SCHEMA,
                    "error": { "kind": format!("{:?}", e.kind()).to_lowercase(), "exit_code": code, "message": e.to_string() },
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("errors serialize"));
            }
            ExitCode::from(code)
        }
    }
}
