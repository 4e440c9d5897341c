use std::path::PathBuf;

use num_traits::{Signed, ToPrimitive, Zero};
use ptsturm::algebra::rational::rational_to_decimal;
use ptsturm::spectrum::{boundary_extract, domain_scan, Axis, DomainGrid, LevelBoundary, PlaneSpace};
use ptsturm::{parse_rational, BigRational};
use serde_json::{json, Value};

use crate::params::{parse_rational_list, Failure};
use crate::render::{num, to_json_string, Format, OutputArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Number of coupling pairs
    #[arg(long = "J")]
    j: usize,
    /// The two scanned parameters, e.g. `u,v` (reduced) or `a,ap` (raw)
    #[arg(long)]
    plane: String,
    /// Axis ranges `lo:hi,lo:hi`
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    /// Grid step, one value or `step1,step2`
    #[arg(long)]
    step: String,
    /// Scan the raw coupling plane instead of the reduced one
    #[arg(long)]
    raw: bool,
    /// Fixed values for the unscanned parameters (defaults to zeros)
    #[arg(long, allow_hyphen_values = true)]
    values: Option<String>,
    /// Fixed raw pairs for the unscanned parameters (defaults to zeros)
    #[arg(long, allow_hyphen_values = true)]
    pairs: Option<String>,
    /// Also write boundary polylines (JSON) to this path
    #[arg(long)]
    boundary_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_axis(range: &str, step: &BigRational) -> Result<Axis, Failure> {
    let (lo, hi) = range
        .split_once(':')
        .ok_or_else(|| Failure::invalid(format!("range must be lo:hi, got {range:?}")))?;
    let lo = parse_rational(lo).map_err(Failure::invalid)?;
    let hi = parse_rational(hi).map_err(Failure::invalid)?;
    if step.is_zero() || step.is_negative() {
        return Err(Failure::invalid("step must be positive"));
    }
    if hi < lo {
        return Err(Failure::invalid("range upper bound below lower bound"));
    }
    let count = ((hi - &lo) / step).floor().to_integer().to_usize().unwrap_or(0) + 1;
    Ok(Axis::new(lo, step.clone(), count))
}

pub fn run(args: Args) -> Result<(), Failure> {
    let plane: Vec<&str> = args.plane.split(',').collect();
    if plane.len() != 2 {
        return Err(Failure::invalid("plane must name two parameters, e.g. u,v"));
    }
    let ranges: Vec<&str> = args.range.split(',').collect();
    if ranges.len() != 2 {
        return Err(Failure::invalid("range must give two axes, e.g. -3:6,-3:3"));
    }
    let steps = parse_rational_list(&args.step)?;
    let (step1, step2) = match steps.as_slice() {
        [s] => (s.clone(), s.clone()),
        [s1, s2] => (s1.clone(), s2.clone()),
        _ => return Err(Failure::invalid("step takes one or two values")),
    };
    let axis1 = parse_axis(ranges[0], &step1)?;
    let axis2 = parse_axis(ranges[1], &step2)?;

    let space = if args.raw {
        PlaneSpace::Raw
    } else {
        PlaneSpace::Reduced
    };
    let base_len = match space {
        PlaneSpace::Reduced => args.j,
        PlaneSpace::Raw => 2 * args.j,
    };
    let base = match (&args.values, &args.pairs) {
        (Some(v), None) => parse_rational_list(v)?,
        (None, Some(p)) => parse_rational_list(p)?,
        (None, None) => vec![BigRational::zero(); base_len],
        (Some(_), Some(_)) => {
            return Err(Failure::invalid("give either --values or --pairs, not both"))
        }
    };

    let grid = domain_scan(args.j, space, (plane[0], plane[1]), axis1, axis2, &base)?;
    let boundaries = boundary_extract(&grid);

    match args.output.format_or(Format::Csv) {
        Format::Csv => {
            args.output.write(&grid_csv(&grid))?;
            if let Some(path) = &args.boundary_out {
                std::fs::write(path, to_json_string(&boundaries_json(&grid, &boundaries)))?;
            }
            Ok(())
        }
        Format::Json => {
            let doc = json!({
                "plane": [grid.plane.0, grid.plane.1],
                "space": match grid.space {
                    PlaneSpace::Reduced => "reduced",
                    PlaneSpace::Raw => "raw",
                },
                "axis1": axis_json(&grid.axis1),
                "axis2": axis_json(&grid.axis2),
                "grid": grid_rows(&grid),
                "boundaries": boundaries_json(&grid, &boundaries)["levels"].clone(),
            });
            args.output.write(&to_json_string(&doc))
        }
        Format::Text => {
            let mut out = grid_csv(&grid);
            out.push_str(&format!("# max count {}\n", grid.max_count()));
            args.output.write(&out)
        }
    }
}

fn axis_json(axis: &Axis) -> Value {
    json!({
        "start": rational_to_decimal(&axis.start),
        "step": rational_to_decimal(&axis.step),
        "count": axis.count,
    })
}

fn grid_csv(grid: &DomainGrid) -> String {
    // fixed wire format; the plane names live in the JSON document
    let mut out = String::from("param1,param2,count,complex_flag\n");
    for i2 in 0..grid.axis2.count {
        for i1 in 0..grid.axis1.count {
            let cell = grid.cell(i1, i2);
            out.push_str(&format!(
                "{},{},{},{}\n",
                rational_to_decimal(&grid.axis1.value(i1)),
                rational_to_decimal(&grid.axis2.value(i2)),
                cell.count,
                u8::from(cell.complex)
            ));
        }
    }
    out
}

fn grid_rows(grid: &DomainGrid) -> Value {
    let mut rows = Vec::new();
    for i2 in 0..grid.axis2.count {
        for i1 in 0..grid.axis1.count {
            let cell = grid.cell(i1, i2);
            rows.push(json!([
                rational_to_decimal(&grid.axis1.value(i1)),
                rational_to_decimal(&grid.axis2.value(i2)),
                cell.count,
                u8::from(cell.complex)
            ]));
        }
    }
    Value::Array(rows)
}

fn boundaries_json(grid: &DomainGrid, boundaries: &[LevelBoundary]) -> Value {
    let levels: Vec<Value> = boundaries
        .iter()
        .map(|b| {
            let polylines: Vec<Value> = b
                .polylines
                .iter()
                .map(|line| {
                    Value::Array(
                        line.iter()
                            .map(|(x, y)| json!([num(*x), num(*y)]))
                            .collect(),
                    )
                })
                .collect();
            json!({"level": b.level, "polylines": polylines})
        })
        .collect();
    json!({
        "plane": [grid.plane.0, grid.plane.1],
        "levels": levels,
    })
}
