use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

/// Runs one `check` command from a session file and prints a JSON report.
#[derive(Parser, Debug)]
#[command(name = "dmod", version)]
struct Args {
    /// Session file; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Truncation bound of the stabilization oracle.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Largest z-power tried when comparing lattices.
    #[arg(long)]
    zpower: Option<u32>,
    /// Include engine statistics in the report.
    #[arg(long)]
    stats: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut src = String::new();
    let read = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|s| src = s),
        _ => std::io::stdin().read_to_string(&mut src).map(|_| ()),
    };
    if let Err(e) = read {
        eprintln!("dmod: cannot read input: {e}");
        return ExitCode::from(2);
    }
    let opts = dmod_cli::Options { max_degree: args.max_degree, zpower: args.zpower, stats: args.stats };
    let out = dmod_cli::execute(&src, &opts);
    println!("{}", dmod_cli::render(&out.report));
    ExitCode::from(out.exit_code as u8)
}
