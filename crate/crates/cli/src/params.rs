//! Run-configuration resolution: inline flags layered over an optional JSON
//! config document, numbers parsed as exact rationals throughout.

use std::path::PathBuf;

use ptsturm::{parse_rational, BigRational, RawParams, ReducedParams};
use serde_json::Value;

/// Machine-readable failure: rendered as `{"error":{"kind","message"}}` on
/// stderr with a nonzero exit code.
#[derive(Debug)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn new(kind: &str, message: impl Into<String>) -> Failure {
        Failure {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Failure {
        Failure::new("invalid_arguments", message)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({"error": {"kind": self.kind, "message": self.message}}).to_string()
    }
}

macro_rules! impl_from_error {
    ($ty:ty, $kind:expr) => {
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Failure {
                Failure::new($kind, e.to_string())
            }
        }
    };
}

impl_from_error!(ptsturm::AlgebraError, "algebra");
impl_from_error!(ptsturm::SecularError, "secular");
impl_from_error!(ptsturm::SturmianError, "sturmian");
impl_from_error!(ptsturm::SpectrumError, "spectrum");
impl_from_error!(ptsturm::ModelError, "model");
impl_from_error!(std::io::Error, "io");

/// Shared parameter flags. A config document provides defaults; inline
/// flags win.
#[derive(clap::Args, Debug, Clone)]
pub struct ParamArgs {
    /// Number of coupling pairs
    #[arg(long = "J")]
    pub j: Option<usize>,
    /// Reduced couplings u,v,… as comma-separated exact decimals
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Raw coupling pairs a,a',b,b',… (2J comma-separated values)
    #[arg(long, allow_hyphen_values = true)]
    pub pairs: Option<String>,
    /// Keep the couplings symbolic
    #[arg(long)]
    pub symbolic: bool,
    /// JSON config document: {"J":…, "mode":"reduced"|"raw",
    /// "values":["…",…]} or {"pairs":[["…","…"],…]}
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Resource ceiling for symbolic runs
    #[arg(long, default_value_t = 7)]
    pub max_symbolic_j: usize,
}

/// Resolved parameter source.
#[derive(Debug, Clone)]
pub enum Params {
    Symbolic { j: usize },
    Reduced(ReducedParams),
    Raw(RawParams),
}

impl Params {
    pub fn j(&self) -> usize {
        match self {
            Params::Symbolic { j } => *j,
            Params::Reduced(r) => r.j(),
            Params::Raw(r) => r.j(),
        }
    }

    /// Reduced couplings for numeric pipelines; raw pairs are checked
    /// against the singular lines first.
    pub fn to_reduced(&self) -> Result<ReducedParams, Failure> {
        match self {
            Params::Symbolic { .. } => Err(Failure::invalid(
                "this operation needs numeric couplings, not --symbolic",
            )),
            Params::Reduced(r) => Ok(r.clone()),
            Params::Raw(raw) => {
                raw.check_nonsingular()?;
                Ok(ptsturm::reduce(raw))
            }
        }
    }
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, Failure> {
    s.split(',')
        .map(|p| parse_rational(p).map_err(Failure::invalid))
        .collect()
}

fn config_document(path: &PathBuf) -> Result<(Option<usize>, Option<Params>), Failure> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("config parse error: {e}")))?;
    let j = match doc.get("J") {
        None => None,
        Some(Value::Number(n)) => Some(
            n.as_u64()
                .ok_or_else(|| Failure::invalid("J must be a positive integer"))?
                as usize,
        ),
        Some(other) => {
            return Err(Failure::invalid(format!("bad J in config: {other}")));
        }
    };
    let number = |v: &Value| -> Result<BigRational, Failure> {
        match v {
            Value::String(s) => parse_rational(s).map_err(Failure::invalid),
            Value::Number(n) => parse_rational(&n.to_string()).map_err(Failure::invalid),
            other => Err(Failure::invalid(format!("bad number in config: {other}"))),
        }
    };
    let mode = doc.get("mode").and_then(|m| m.as_str()).unwrap_or("reduced");
    let params = if let Some(values) = doc.get("values") {
        let arr = values
            .as_array()
            .ok_or_else(|| Failure::invalid("values must be an array"))?;
        let vals: Vec<BigRational> = arr.iter().map(number).collect::<Result<_, _>>()?;
        Some(Params::Reduced(
            ReducedParams::new(vals).map_err(Failure::from)?,
        ))
    } else if let Some(pairs) = doc.get("pairs") {
        let arr = pairs
            .as_array()
            .ok_or_else(|| Failure::invalid("pairs must be an array of [p, p'] pairs"))?;
        let mut out = Vec::new();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Failure::invalid("each pair must be [p, p']"))?;
            out.push((number(&pair[0])?, number(&pair[1])?));
        }
        Some(Params::Raw(RawParams::new(out).map_err(Failure::from)?))
    } else if mode == "raw" {
        None
    } else {
        None
    };
    Ok((j, params))
}

/// Layer inline flags over the config document and validate consistency.
pub fn resolve(args: &ParamArgs) -> Result<Params, Failure> {
    let (config_j, config_params) = match &args.config {
        Some(path) => config_document(path)?,
        None => (None, None),
    };
    let j = args.j.or(config_j);

    if args.symbolic {
        let j = j.ok_or_else(|| Failure::invalid("--symbolic requires --J"))?;
        if j == 0 {
            return Err(Failure::invalid("J must be at least 1"));
        }
        if j > args.max_symbolic_j {
            return Err(Failure::new(
                "resource_limit",
                format!(
                    "symbolic mode with J={j} exceeds the ceiling {} (raise --max-symbolic-j to override)",
                    args.max_symbolic_j
                ),
            ));
        }
        return Ok(Params::Symbolic { j });
    }

    let params = if let Some(values) = &args.values {
        let vals = parse_rational_list(values)?;
        Params::Reduced(ReducedParams::new(vals).map_err(Failure::from)?)
    } else if let Some(pairs) = &args.pairs {
        let flat = parse_rational_list(pairs)?;
        if flat.len() % 2 != 0 {
            return Err(Failure::invalid(
                "--pairs needs an even number of values (p and p' per bond)",
            ));
        }
        let pairs = flat.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
        Params::Raw(RawParams::new(pairs).map_err(Failure::from)?)
    } else if let Some(p) = config_params {
        p
    } else {
        return Err(Failure::invalid(
            "no couplings given: use --values, --pairs, --config or --symbolic",
        ));
    };

    if let Some(j) = j {
        if params.j() != j {
            return Err(Failure::invalid(format!(
                "--J {j} does not match the {} couplings provided",
                params.j()
            )));
        }
    }
    Ok(params)
}
