use ptsturm::spectrum::{
    bound_states, recurrence_residual, secular_root_counts, wavefunction, BoundState, Wavefunction,
};
use serde_json::{json, Value};

use crate::params::{resolve, Failure, ParamArgs};
use crate::render::{num, rats, to_json_string, Format, OutputArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    params: ParamArgs,
    /// Also reconstruct and emit the wavefunctions
    #[arg(long)]
    wavefunction: bool,
    /// Relative tolerance for root refinement
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn run(args: Args) -> Result<(), Failure> {
    let params = resolve(&args.params)?;
    let reduced = params.to_reduced()?;
    let states = bound_states(&reduced, args.tol)?;
    let counts = secular_root_counts(&reduced)?;

    let mut wavefunctions: Vec<Option<Wavefunction>> = Vec::new();
    if args.wavefunction {
        for state in &states {
            wavefunctions.push(Some(wavefunction(&reduced, state)?));
        }
    } else {
        wavefunctions.resize(states.len(), None);
    }

    let content = match args.output.format_or(Format::Json) {
        Format::Json => {
            let state_values: Vec<Value> = states
                .iter()
                .zip(&wavefunctions)
                .map(|(s, w)| state_document(&reduced, s, w.as_ref()))
                .collect();
            to_json_string(&json!({
                "J": reduced.j(),
                "values": rats(reduced.values()),
                "states": state_values,
                "diagnostics": {
                    "spurious_unit_interval": counts.spurious_unit,
                    "nonpositive": counts.nonpositive,
                    "complex_pairs": counts.complex_pairs,
                },
            }))
        }
        Format::Text => {
            let mut out = String::new();
            if states.is_empty() {
                out.push_str("no bound states\n");
            }
            for s in &states {
                out.push_str(&format!(
                    "level {}: t = {:.15}, phi = {:.15}, E = {:.15} (multiplicity {})\n",
                    s.level, s.t, s.phi, s.energy, s.multiplicity
                ));
            }
            out.push_str(&format!(
                "diagnostics: {} spurious in (0,1], {} nonpositive, {} complex pairs\n",
                counts.spurious_unit, counts.nonpositive, counts.complex_pairs
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("level,t,phi,energy,multiplicity\n");
            for s in &states {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.level,
                    crate::render::fmt_f64(s.t),
                    crate::render::fmt_f64(s.phi),
                    crate::render::fmt_f64(s.energy),
                    s.multiplicity
                ));
            }
            out
        }
    };
    args.output.write(&content)
}

fn state_document(
    reduced: &ptsturm::ReducedParams,
    s: &BoundState,
    w: Option<&Wavefunction>,
) -> Value {
    let wavefunction = match w {
        Some(w) => {
            let interior: Vec<Value> = w.interior.iter().map(|v| num(*v)).collect();
            json!({
                "lambda": num(w.lambda),
                "rho": num(w.rho),
                "interior": interior,
                "recurrence_residual_40": num(recurrence_residual(reduced, s, w, 40)),
            })
        }
        None => Value::Null,
    };
    json!({
        "level": s.level,
        "t": num(s.t),
        "phi": num(s.phi),
        "energy": num(s.energy),
        "multiplicity": s.multiplicity,
        "wavefunction": wavefunction,
    })
}
