use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha256};

use super::{Cli, CliError};
use crate::error::Error;

/// A named blob and its SHA-256.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digest {
    pub name: String,
    pub sha256: String,
}

impl Digest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        Digest {
            name: name.into(),
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

/// Record of one run: what was asked, what was read and what was written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Every parsed flag and argument.
    pub config: serde_json::Value,
    pub seed: u64,
    pub version: String,
    pub dry_run: bool,
    pub inputs: Vec<Digest>,
    /// Output file names relative to `--out`; empty when writing to stdout.
    pub outputs: Vec<Digest>,
    pub wall_time_s: f64,
}

impl RunManifest {
    /// The manifest minus wall time. Runs with equal fingerprints produce
    /// byte-identical outputs.
    pub fn fingerprint(&self) -> String {
        let mut m = self.clone();
        m.wall_time_s = 0.0;
        serde_json::to_string(&m).expect("manifests always serialize")
    }
}

/// Collects inputs and routes outputs to `--out` or stdout.
pub(crate) struct Sink<'a> {
    dir: Option<PathBuf>,
    dry_run: bool,
    stdout: &'a mut dyn Write,
    inputs: Vec<Digest>,
    outputs: Vec<Digest>,
    started: Instant,
}

impl<'a> Sink<'a> {
    pub(crate) fn new(cli: &Cli, stdout: &'a mut dyn Write) -> Result<Self, CliError> {
        if let Some(dir) = &cli.global.out {
            fs::create_dir_all(dir).map_err(|e| CliError::Usage(Error::io(dir, e)))?;
        }
        Ok(Sink {
            dir: cli.global.out.clone(),
            dry_run: cli.global.dry_run,
            stdout,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
        })
    }

    pub(crate) fn input(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.push(Digest::of(name, bytes));
    }

    /// Writes `file` under `--out`. Without `--out`, primary outputs go to
    /// stdout and the rest are dropped.
    pub(crate) fn emit(
        &mut self,
        file: &str,
        content: &str,
        primary: bool,
    ) -> Result<(), CliError> {
        match &self.dir {
            Some(dir) => {
                let path = dir.join(file);
                fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
                self.outputs.push(Digest::of(file, content.as_bytes()));
            }
            None if primary => self.say(content)?,
            None => {}
        }
        Ok(())
    }

    /// A line for the user, always on stdout.
    pub(crate) fn say(&mut self, text: &str) -> Result<(), CliError> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        writeln!(self.stdout, "{text}").map_err(|e| Error::io("<stdout>", e))?;
        Ok(())
    }

    pub(crate) fn is_dry_run(&self) -> bool {
        self.dry_run
    }

    pub(crate) fn finish(self, cli: &Cli) -> Result<RunManifest, CliError> {
        let manifest = RunManifest {
            command: command_name(cli),
            config: serde_json::to_value(cli).map_err(Error::from)?,
            seed: cli.global.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            dry_run: self.dry_run,
            inputs: self.inputs,
            outputs: self.outputs,
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        if let Some(dir) = &self.dir {
            write_manifest(dir, &manifest)?;
        }
        Ok(manifest)
    }
}

fn write_manifest(dir: &Path, m: &RunManifest) -> Result<(), CliError> {
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(m).map_err(Error::from)?;
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(())
}

fn command_name(cli: &Cli) -> String {
    match serde_json::to_value(&cli.command) {
        Ok(serde_json::Value::Object(map)) => map.keys().next().cloned().unwrap_or_default(),
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}
