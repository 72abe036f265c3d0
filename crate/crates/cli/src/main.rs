use std::io;
use std::process::ExitCode;

use clap::Parser;
use pfd::budget::CountingAlloc;
use pfd_cli::commands::{run, Cli};

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli, &mut io::stdin(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code)
}
