use ptsturm::{secular_poly, secular_poly_symbolic, SecularPoly};
use serde_json::json;

use crate::params::{resolve, Failure, ParamArgs, Params};
use crate::render::{to_json_string, Format, OutputArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run(args: Args) -> Result<(), Failure> {
    let params = resolve(&args.params)?;
    let sp = match &params {
        Params::Symbolic { j } => secular_poly_symbolic(*j)?,
        other => secular_poly(&other.to_reduced()?, false)?,
    };
    let content = match args.output.format_or(Format::Text) {
        Format::Text => format!("{sp}\n"),
        Format::Json => to_json_string(&document(&sp)),
        Format::Csv => {
            let mut s = String::from("degree,coefficient\n");
            for (k, c) in sp.poly().coeffs().iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            s
        }
    };
    args.output.write(&content)
}

fn document(sp: &SecularPoly) -> serde_json::Value {
    let coefficients: Vec<String> = sp
        .poly()
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect();
    json!({
        "J": sp.j(),
        "prefactor_power": sp.prefactor_power(),
        "degree": sp.poly().degree(),
        "coefficients": coefficients,
        "text": sp.to_string(),
    })
}
