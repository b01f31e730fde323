// The command line driven in process, with outputs and a manifest written
// to a scratch directory.
//
//     cargo run --release --example command_line

use std::error::Error;

use clap::Parser;
use coising::cli::{execute, Cli};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let out = std::env::temp_dir().join(format!("coising-example-{}", std::process::id()));
    let out_arg = out.display().to_string();
    let cli = Cli::try_parse_from([
        "coising", "check", "G25p1", "G25p3", "--format", "json", "--out", &out_arg,
    ])?;
    let manifest = execute(&cli, &mut std::io::stdout())?;
    for d in &manifest.outputs {
        println!("{} sha256 {}", d.name, d.sha256);
    }
    print!("{}", std::fs::read_to_string(out.join("check.json"))?);
    std::fs::remove_dir_all(&out)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
