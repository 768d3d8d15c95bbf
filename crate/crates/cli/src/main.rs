use std::process::ExitCode;

use clap::Parser;
use mlmarket::commands::{execute, Cli};

fn main() -> ExitCode {
    execute(Cli::parse()).into()
}
