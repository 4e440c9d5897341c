use ptsturm::sturmian::{
    f_rational, f_rational_symbolic, jfraction, partial_fractions, shape_classify,
    sturmian_coupling, IntervalParity, JFraction, Pole, RatFunc, ShapeClassification,
    SinglePoleShape, SturmianError,
};
use ptsturm::{parse_rational, reduce, BigRational, RawParams};
use serde_json::{json, Value};

use crate::params::{parse_rational_list, Failure, ParamArgs};
use crate::render::{num, rat, to_json_string, Format, OutputArgs};

/// Symbolic J-fractions stop here: the level-3 coefficient field already
/// explodes at J = 7 (numeric mode has no such limit).
const SYMBOLIC_JFRACTION_CEILING: usize = 6;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluate the Sturmian coupling u(t) at this energy parameter
    #[arg(long, allow_hyphen_values = true)]
    at_t: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

enum Mode {
    Symbolic { j: usize },
    Numeric { others: Vec<BigRational> },
}

/// The Sturmian quantities depend only on the outer couplings, so numeric
/// `--values` here lists `v, w, …` (J-1 values). Raw `--pairs` gives all
/// `2J` raw parameters; the innermost reduced coupling is then ignored.
fn resolve_mode(args: &ParamArgs) -> Result<Mode, Failure> {
    if args.symbolic {
        let j = args
            .j
            .ok_or_else(|| Failure::invalid("--symbolic requires --J"))?;
        if j == 0 {
            return Err(Failure::invalid("J must be at least 1"));
        }
        if j > args.max_symbolic_j {
            return Err(Failure::new(
                "resource_limit",
                format!(
                    "symbolic mode with J={j} exceeds the ceiling {}",
                    args.max_symbolic_j
                ),
            ));
        }
        return Ok(Mode::Symbolic { j });
    }
    if args.j == Some(1) && args.values.is_none() && args.pairs.is_none() {
        // f_1 has no outer couplings
        return Ok(Mode::Numeric { others: vec![] });
    }
    let others = if let Some(values) = &args.values {
        parse_rational_list(values)?
    } else if let Some(pairs) = &args.pairs {
        let flat = parse_rational_list(pairs)?;
        if flat.len() % 2 != 0 || flat.is_empty() {
            return Err(Failure::invalid("--pairs needs 2J values"));
        }
        let pairs = flat.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
        let raw = RawParams::new(pairs).map_err(Failure::from)?;
        raw.check_nonsingular()?;
        reduce(&raw).values()[1..].to_vec()
    } else {
        return Err(Failure::invalid(
            "give the outer couplings via --values v,w,… (J-1 values), --pairs, or use --symbolic",
        ));
    };
    if let Some(j) = args.j {
        if others.len() + 1 != j {
            return Err(Failure::invalid(format!(
                "sturmian --values lists the outer couplings: expected {} values for J={j}, got {}",
                j - 1,
                others.len()
            )));
        }
    }
    Ok(Mode::Numeric { others })
}

pub fn run(args: Args) -> Result<(), Failure> {
    let mode = resolve_mode(&args.params)?;
    let (j, f, numeric) = match &mode {
        Mode::Symbolic { j } => (*j, f_rational_symbolic(*j)?, false),
        Mode::Numeric { others } => (others.len() + 1, f_rational(others)?, true),
    };
    let pf = partial_fractions(&f)?;

    let jf = if numeric || j <= SYMBOLIC_JFRACTION_CEILING {
        match jfraction(&f) {
            Ok(jf) => Some(jf),
            Err(SturmianError::DegenerateStep { level }) => {
                return Err(Failure::new(
                    "degenerate_step",
                    format!("continued fraction degenerates at level {level}"),
                ));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let shape = if numeric { Some(shape_classify(&f)?) } else { None };

    let coupling_at = match &args.at_t {
        Some(t_str) => {
            let t = parse_rational(t_str).map_err(Failure::invalid)?;
            Some((t.clone(), sturmian_coupling(&f, &t)?))
        }
        None => None,
    };

    let content = match args.output.format_or(Format::Text) {
        Format::Text => text_report(j, &f, &pf, jf.as_ref(), shape.as_ref(), coupling_at.as_ref()),
        Format::Json | Format::Csv => to_json_string(&document(
            j,
            &f,
            &pf,
            jf.as_ref(),
            shape.as_ref(),
            coupling_at.as_ref(),
        )),
    };
    args.output.write(&content)
}

fn text_report(
    j: usize,
    f: &RatFunc,
    pf: &ptsturm::PartialFractions,
    jf: Option<&JFraction>,
    shape: Option<&ShapeClassification>,
    coupling_at: Option<&(BigRational, BigRational)>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("f_{j} = {f}\n"));
    out.push_str(&format!("N = {}\n", f.num()));
    out.push_str(&format!("D = {}\n", f.den()));
    out.push_str(&format!(
        "partial fraction: t - A0 - R/D with A0 = {}, R = {}, D = {}\n",
        pf.a0, pf.remainder, pf.denominator
    ));
    for pole in &pf.poles {
        match pole {
            Pole::Symbolic { location, residue } => {
                out.push_str(&format!("pole at t = {location}, residue {residue}\n"));
            }
            Pole::Numeric { location, residue } => {
                out.push_str(&format!("pole at t = {location:.12}, residue {residue:.12}\n"));
            }
        }
    }
    match jf {
        Some(jf) => {
            for (k, a) in jf.a().iter().enumerate() {
                let mark = if jf.is_a_tilded(k) { " (tilded)" } else { "" };
                out.push_str(&format!("A_{k} = {a}{mark}\n"));
            }
            for (k, b) in jf.b().iter().enumerate() {
                let idx = k + 1;
                let mark = if jf.is_b_tilded(idx) { " (tilded)" } else { "" };
                out.push_str(&format!("B_{idx} = {b}{mark}\n"));
            }
        }
        None => out.push_str(&format!(
            "jfraction: omitted (symbolic coefficients tractable only for J <= {SYMBOLIC_JFRACTION_CEILING}; use numeric values)\n"
        )),
    }
    if let Some(s) = shape {
        out.push_str(&format!(
            "shape: {} real poles, {} complex pairs, guaranteed intersections {}\n",
            s.poles.len(),
            s.complex_pole_pairs,
            s.guaranteed_intersections
        ));
        if let Some(sp) = s.single_pole_shape {
            out.push_str(&format!("single-pole shape: {}\n", single_pole_name(sp)));
        }
    }
    if let Some((t, u)) = coupling_at {
        out.push_str(&format!("u({t}) = {u}\n"));
    }
    out
}

fn single_pole_name(s: SinglePoleShape) -> &'static str {
    match s {
        SinglePoleShape::CapCup => "cap+cup",
        SinglePoleShape::SlashSlash => "slash+slash",
        SinglePoleShape::Degenerate => "degenerate",
    }
}

fn document(
    j: usize,
    f: &RatFunc,
    pf: &ptsturm::PartialFractions,
    jf: Option<&JFraction>,
    shape: Option<&ShapeClassification>,
    coupling_at: Option<&(BigRational, BigRational)>,
) -> Value {
    let poles: Vec<Value> = pf
        .poles
        .iter()
        .map(|p| match p {
            Pole::Symbolic { location, residue } => json!({
                "location": location.to_string(),
                "residue": residue.to_string(),
            }),
            Pole::Numeric { location, residue } => json!({
                "location": num(*location),
                "residue": num(*residue),
            }),
        })
        .collect();
    let jf_value = match jf {
        Some(jf) => {
            let a: Vec<Value> = jf
                .a()
                .iter()
                .enumerate()
                .map(|(k, c)| json!({"index": k, "text": c.to_string(), "tilded": jf.is_a_tilded(k)}))
                .collect();
            let b: Vec<Value> = jf
                .b()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    json!({"index": k + 1, "text": c.to_string(), "tilded": jf.is_b_tilded(k + 1)})
                })
                .collect();
            json!({"A": a, "B": b, "tilde_from": jf.tilde_from()})
        }
        None => Value::Null,
    };
    let shape_value = match shape {
        Some(s) => {
            let intervals: Vec<Value> = s
                .intervals
                .iter()
                .map(|i| {
                    json!({
                        "zero_count": i.zero_count,
                        "parity": match i.parity {
                            IntervalParity::CapOrCup => "cap_or_cup",
                            IntervalParity::FullRange => "full_range",
                        },
                    })
                })
                .collect();
            json!({
                "poles": s.poles.iter().map(|p| num(*p)).collect::<Vec<_>>(),
                "complex_pole_pairs": s.complex_pole_pairs,
                "intervals": intervals,
                "single_pole_shape": s.single_pole_shape.map(single_pole_name),
                "guaranteed_intersections": s.guaranteed_intersections,
            })
        }
        None => Value::Null,
    };
    json!({
        "J": j,
        "N": f.num().to_string(),
        "D": f.den().to_string(),
        "f": f.to_string(),
        "partial_fraction": {
            "A0": pf.a0.to_string(),
            "remainder": pf.remainder.to_string(),
            "denominator": pf.denominator.to_string(),
            "poles": poles,
            "complex_pole_pairs": pf.complex_pole_pairs,
        },
        "jfraction": jf_value,
        "shape": shape_value,
        "coupling_at_t": coupling_at.map(|(t, u)| json!({"t": rat(t), "u": rat(u)})),
    })
}
