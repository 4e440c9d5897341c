//! Output plumbing: deterministic JSON/text/CSV writers. Floating-point
//! numbers are emitted as decimal strings with 15 significant digits;
//! rationals are emitted exactly.

use std::io::Write;
use std::path::PathBuf;

use ptsturm::algebra::rational::{format_f64_sig15, rational_to_string};
use ptsturm::BigRational;
use serde_json::Value;

use crate::params::Failure;

#[derive(clap::ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format (default depends on the subcommand)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn write(&self, content: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, content)?;
                Ok(())
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(content.as_bytes())?;
                Ok(())
            }
        }
    }
}

pub fn num(x: f64) -> Value {
    Value::String(format_f64_sig15(x))
}

pub fn fmt_f64(x: f64) -> String {
    format_f64_sig15(x)
}

pub fn rat(r: &BigRational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn rats(rs: &[BigRational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

/// Pretty JSON with a trailing newline; `serde_json` maps are ordered, so
/// identical inputs give byte-identical output.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}
