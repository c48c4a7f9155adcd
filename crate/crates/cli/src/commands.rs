//! Argument parsing and dispatch.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;

use troploc_core::arc::{
    arc_weight, evaluate_on_arc, puiseux_expand_exact, puiseux_expand_float, semivaluation_on, Coefficient,
    PuiseuxOptions, TruncatedArc, DEFAULT_TOLERANCE,
};
use troploc_core::splice::{SpliceDiagram, SpliceOptions};
use troploc_core::troploc::{
    check_structure, divisor_box_mismatches, extended_cone, troploc_divisor, troploc_ideal_upper, troploc_plane_curve,
    troploc_toric_germ, Bound, Tropicalization,
};
use troploc_core::{LatticeVector, Series};

use crate::dto::*;
use crate::render;
use crate::CliError;

pub const DEFAULT_BOX: i64 = 12;

/// The box check runs by default only up to this rank; `--box` forces it.
const AUTO_BOX_MAX_RANK: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "troploc", version, about = "Local tropicalization of subtoric germs")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polyhedron of a series: vertices and compact faces.
    Polyhedron { input: PathBuf },
    /// Newton fan of a series, each cone labelled by its minimising support.
    Fan { input: PathBuf },
    /// Tropicalization of the divisor of a series, with a brute-force check.
    Divisor {
        input: PathBuf,
        /// Coordinate bound of the brute-force check (default 12, or TROPLOC_BOX).
        #[arg(long = "box")]
        box_bound: Option<i64>,
    },
    /// Rays of a plane curve's local tropicalization.
    PlaneCurve { input: PathBuf },
    /// Initial form of a series at a weight.
    InitialForm {
        input: PathBuf,
        /// Comma-separated integer weight, e.g. `2,3`.
        #[arg(short, long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Upper bound for an ideal: intersection of the generators' divisor tropicalizations.
    IdealUpper {
        /// Series files, or one file holding an array of series.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Checks pure dimension, interior meeting and constancy of initial data.
    CheckStructure {
        /// A tropicalization file.
        input: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Splice diagram computations.
    Splice {
        #[command(subcommand)]
        action: SpliceAction,
    },
    /// Weight vector of a truncated arc, optionally with its values on series.
    ArcWeight {
        input: PathBuf,
        /// Series to evaluate the arc's semivaluation on.
        #[arg(long = "eval")]
        eval: Vec<PathBuf>,
    },
    /// Newton-Puiseux expansion of a plane curve into truncated arcs.
    Puiseux {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long)]
        max_recursion: Option<usize>,
    },
    /// Strata of the extended cone.
    ExtendedCone { input: PathBuf },
    /// Tropicalization of the toric germ itself.
    ToricGerm { input: PathBuf },
    /// SVG figure of a structured output.
    Render { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SpliceAction {
    Validate { input: PathBuf },
    System {
        input: PathBuf,
        #[arg(long)]
        coefficients: Option<PathBuf>,
    },
    Trop { input: PathBuf },
    Crosscheck { input: PathBuf },
}

/// What a command produced. A `failure` is reported after the artifact is written.
pub struct Artifact {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Artifact {
    fn ok(o: Output) -> Artifact {
        Artifact {
            text: o.to_json(),
            failure: None,
        }
    }

    fn checked(o: Output, passed: bool, what: &str) -> Artifact {
        Artifact {
            text: o.to_json(),
            failure: (!passed).then(|| CliError::Failed(format!("{what} failed"))),
        }
    }
}

/// Runs a parsed command line, writing the artifact to `--output` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let art = execute(&cli.command)?;
    match &cli.output {
        Some(p) => std::fs::write(p, &art.text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        })?,
        None => print!("{}", art.text),
    }
    match art.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub fn execute(cmd: &Command) -> Result<Artifact, CliError> {
    match cmd {
        Command::Polyhedron { input } => Ok(Artifact::ok(polyhedron(&read_series(input)?)?)),
        Command::Fan { input } => Ok(Artifact::ok(newton_fan(&read_series(input)?)?)),
        Command::Divisor { input, box_bound } => divisor(&read_series(input)?, *box_bound),
        Command::PlaneCurve { input } => {
            let rays = troploc_plane_curve(&read_series(input)?)?;
            Ok(Artifact::ok(Output::PlaneCurve(PlaneCurveOut {
                rays: rays.iter().map(ints).collect(),
            })))
        }
        Command::InitialForm { input, weight } => {
            let f = read_series(input)?;
            let w = parse_weight(weight, f.rank())?;
            let (m, _) = f.min_weight(&w)?;
            let init = f.initial_form(&w)?;
            Ok(Artifact::ok(Output::InitialForm(InitialFormOut {
                weight: ints(&w),
                min_weight: JsonInt(m),
                monomial: init.is_monomial()?,
                initial_form: SeriesFile::of(&init),
            })))
        }
        Command::IdealUpper { inputs } => {
            let mut gens = Vec::new();
            for p in inputs {
                gens.extend(read_series_list(p)?);
            }
            Ok(Artifact::ok(trop_output(&troploc_ideal_upper(&gens)?, None)))
        }
        Command::CheckStructure { input, dim, seed } => {
            let t = read_tropicalization(input)?;
            let dim = dim.or(t.expected_dim).ok_or_else(|| {
                CliError::Input("no expected dimension: pass --dim or store expected_dim in the file".into())
            })?;
            let r = check_structure(&t, dim, *seed)?;
            let cones = |v: &[troploc_core::Cone]| v.iter().map(ConeOut::of).collect();
            let out = StructureOut {
                passed: r.passed(),
                expected_dim: r.expected_dim,
                seed: *seed,
                cones_checked: r.cones_checked,
                wrong_dimension: cones(&r.wrong_dimension),
                misses_interior: cones(&r.misses_interior),
                label_not_constant: cones(&r.label_not_constant),
            };
            Ok(Artifact::checked(Output::StructureReport(out), r.passed(), "structure check"))
        }
        Command::Splice { action } => splice(action),
        Command::ArcWeight { input, eval } => arc_weight_cmd(input, eval),
        Command::Puiseux {
            input,
            depth,
            mode,
            tol,
            max_recursion,
        } => {
            let mut opts = PuiseuxOptions::new(*depth);
            opts.tol = *tol;
            if let Some(m) = max_recursion {
                opts.max_recursion = *m;
            }
            Ok(Artifact::ok(puiseux(&read_series(input)?, &opts, *mode)?))
        }
        Command::ExtendedCone { input } => {
            let c: ConeFile = read_json(input)?;
            let e = extended_cone(&c.to_cone()?)?;
            Ok(Artifact::ok(Output::ExtendedCone(ExtendedConeOut {
                base: ConeOut::of(&e.base),
                strata: e
                    .strata
                    .iter()
                    .map(|s| StratumOut {
                        face: ConeOut::of(&s.face),
                        quotient_rank: s.quotient_rank,
                        map: s.map.iter().map(|r| r.iter().cloned().map(JsonInt).collect()).collect(),
                        image: ConeOut::of(&s.image),
                    })
                    .collect(),
            })))
        }
        Command::ToricGerm { input } => {
            let c: ConeFile = read_json(input)?;
            Ok(Artifact::ok(trop_output(&troploc_toric_germ(&c.to_cone()?)?, None)))
        }
        Command::Render { input } => {
            let o: Output = read_json(input)?;
            Ok(Artifact {
                text: render::svg(&o)?,
                failure: None,
            })
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_json(&path.display().to_string(), &text)
}

pub fn parse_json<T: DeserializeOwned>(name: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        CliError::Parse {
            path: name.to_string(),
            line: e.line(),
            column: e.column(),
            msg: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })
}

fn read_series(path: &Path) -> Result<Series, CliError> {
    read_json::<SeriesFile>(path)?.to_series()
}

fn read_series_list(path: &Path) -> Result<Vec<Series>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let name = path.display().to_string();
    if text.trim_start().starts_with('[') {
        parse_json::<Vec<SeriesFile>>(&name, &text)?
            .iter()
            .map(SeriesFile::to_series)
            .collect()
    } else {
        Ok(vec![parse_json::<SeriesFile>(&name, &text)?.to_series()?])
    }
}

fn read_tropicalization(path: &Path) -> Result<Tropicalization, CliError> {
    match read_json::<Output>(path)? {
        Output::Tropicalization(t) => tropicalization_of(&t),
        _ => Err(CliError::Input(format!("{}: expected a tropicalization", path.display()))),
    }
}

pub fn tropicalization_of(t: &TropOut) -> Result<Tropicalization, CliError> {
    let bound = match t.bound.as_str() {
        "exact" => Bound::Exact,
        "upper" => Bound::Upper,
        b => return Err(CliError::Input(format!("unknown bound {b:?}"))),
    };
    let gens = t.generators.iter().map(SeriesFile::to_series).collect::<Result<Vec<_>, _>>()?;
    Ok(Tropicalization::new(
        &t.ambient.to_cone()?,
        t.fan.to_fan()?,
        t.expected_dim,
        gens,
        bound,
    )?)
}

pub fn parse_weight(s: &str, rank: usize) -> Result<LatticeVector, CliError> {
    let coords = s
        .split(',')
        .map(|x| x.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Input(format!("bad weight {s:?}: expected comma-separated integers")))?;
    if coords.len() != rank {
        return Err(CliError::Input(format!("weight {s:?} has {} entries, series has rank {rank}", coords.len())));
    }
    Ok(LatticeVector::weight(coords))
}

pub fn polyhedron(f: &Series) -> Result<Output, CliError> {
    let p = f.newton_polyhedron()?;
    Ok(Output::Polyhedron(PolyhedronOut {
        rank: f.rank(),
        ambient: ConeOut::of(f.cone()),
        support: f.support().iter().map(ints).collect(),
        vertices: p.vertices().iter().map(ints).collect(),
        compact_faces: p
            .compact_faces()
            .iter()
            .map(|c| FaceOut {
                dim: c.dim,
                vertices: c.vertices.iter().map(ints).collect(),
                support: c.support.iter().map(ints).collect(),
                normal_cone: ConeOut::of(&c.normal_cone),
            })
            .collect(),
    }))
}

pub fn newton_fan(f: &Series) -> Result<Output, CliError> {
    let nf = f.newton_fan()?;
    Ok(Output::NewtonFan(NewtonFanOut {
        rank: f.rank(),
        ambient: ConeOut::of(f.cone()),
        fan: FanOut::of(&nf.fan),
        cones: nf
            .fan
            .cones()
            .iter()
            .zip(&nf.labels)
            .map(|(c, l)| LabelledCone {
                cone: ConeOut::of(c),
                label: l.iter().map(ints).collect(),
            })
            .collect(),
    }))
}

pub fn trop_output(t: &Tropicalization, box_check: Option<BoxCheck>) -> Output {
    Output::Tropicalization(TropOut {
        rank: t.rank(),
        ambient: ConeOut::of(&t.cone),
        bound: match t.bound {
            Bound::Exact => "exact",
            Bound::Upper => "upper",
        }
        .into(),
        expected_dim: t.expected_dim,
        fan: FanOut::of(&t.fan),
        generators: t.generators.iter().map(SeriesFile::of).collect(),
        box_check,
    })
}

fn box_bound(flag: Option<i64>, rank: usize) -> Result<Option<i64>, CliError> {
    if let Some(b) = flag {
        return Ok(Some(b));
    }
    if rank > AUTO_BOX_MAX_RANK {
        return Ok(None);
    }
    match std::env::var("TROPLOC_BOX") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("TROPLOC_BOX={v:?} is not an integer"))),
        Err(_) => Ok(Some(DEFAULT_BOX)),
    }
}

fn divisor(f: &Series, flag: Option<i64>) -> Result<Artifact, CliError> {
    let t = troploc_divisor(f)?;
    let check = match box_bound(flag, f.rank())? {
        Some(b) => Some(BoxCheck {
            bound: b,
            mismatches: divisor_box_mismatches(f, &t, b)?.iter().map(ints).collect(),
        }),
        None => None,
    };
    let bad = check.as_ref().is_some_and(|c| !c.mismatches.is_empty());
    Ok(Artifact {
        text: trop_output(&t, check).to_json(),
        failure: bad.then(|| CliError::Internal("brute-force check disagrees with the divisor fan".into())),
    })
}

fn diagram(path: &Path) -> Result<(SpliceFile, SpliceDiagram), CliError> {
    let f: SpliceFile = read_json(path)?;
    let d = f.to_diagram()?;
    Ok((f, d))
}

pub fn splice_report(d: &SpliceDiagram) -> Result<SpliceReportOut, CliError> {
    let r = d.validate()?;
    let nodes = d
        .nodes()
        .iter()
        .map(|u| {
            Ok(NodeOut {
                name: u.clone(),
                d: JsonInt(d.d(u)?),
                weight_vector: ints(&d.weight_vector(u)?),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SpliceReportOut {
        passed: r.passed(),
        nodes,
        coprime: r
            .coprime
            .iter()
            .map(|c| CoprimeOut {
                node: c.node.clone(),
                weights: c.weights.iter().cloned().map(JsonInt).collect(),
                ok: c.failures.is_empty(),
                failures: c.failures.clone(),
            })
            .collect(),
        edge_determinant: r
            .edge_determinant
            .iter()
            .map(|e| EdgeDetOut {
                u: e.u.clone(),
                v: e.v.clone(),
                d_u: JsonInt(e.d_u.clone()),
                d_v: JsonInt(e.d_v.clone()),
                linking: JsonInt(e.linking.clone()),
                product: JsonInt(&e.d_u * &e.d_v),
                linking_squared: JsonInt(&e.linking * &e.linking),
                ok: e.ok,
            })
            .collect(),
        semigroup: r
            .semigroup
            .iter()
            .map(|s| SemigroupOut {
                node: s.node.clone(),
                toward: s.toward.to_string(),
                target: JsonInt(s.target.clone()),
                leaves: s.leaves.clone(),
                generators: s.generators.iter().cloned().map(JsonInt).collect(),
                ok: s.representation.is_some(),
                representation: s.representation.as_ref().map(|v| v.iter().cloned().map(JsonInt).collect()),
            })
            .collect(),
    })
}

pub fn splice_system_output(d: &SpliceDiagram, coefficients: Option<&CoefficientFile>) -> Result<Output, CliError> {
    let opts = SpliceOptions {
        coefficients: coefficients.map(to_matrices).unwrap_or_default(),
        ..Default::default()
    };
    let s = d.splice_system(&opts)?;
    Ok(Output::SpliceSystem(SpliceSystemOut {
        variables: s.variables,
        equations: s
            .equations
            .iter()
            .zip(&s.equation_nodes)
            .map(|(e, u)| EquationOut {
                node: u.clone(),
                series: SeriesFile::of(e),
            })
            .collect(),
        monomials: s
            .monomials
            .iter()
            .map(|(u, ms)| (u.clone(), ms.iter().map(ints).collect()))
            .collect(),
        coefficients: s
            .matrices
            .iter()
            .map(|(u, m)| {
                (
                    u.clone(),
                    m.iter().map(|r| r.iter().cloned().map(JsonRational).collect()).collect(),
                )
            })
            .collect::<BTreeMap<_, _>>(),
    }))
}

pub fn splice_crosscheck(d: &SpliceDiagram) -> Result<CrosscheckOut, CliError> {
    let r = d.crosscheck_tropicalization()?;
    Ok(CrosscheckOut {
        passed: r.passed(),
        witnesses: r
            .witnesses
            .iter()
            .map(|w| WitnessOut {
                cone: ConeOut::of(&w.cone),
                witness: ints(&w.witness),
                initial: w.initial,
            })
            .collect(),
        divisor_support_equal: r.divisor_support_equal,
        precondition_failure: r.precondition_failure.clone(),
    })
}

fn splice(action: &SpliceAction) -> Result<Artifact, CliError> {
    match action {
        SpliceAction::Validate { input } => {
            let (_, d) = diagram(input)?;
            let r = splice_report(&d)?;
            let passed = r.passed;
            Ok(Artifact::checked(Output::SpliceReport(r), passed, "splice diagram validation"))
        }
        SpliceAction::System { input, coefficients } => {
            let (file, d) = diagram(input)?;
            let coef = match coefficients {
                Some(p) => Some(read_json::<CoefficientFile>(p)?),
                None => file.coefficients.clone(),
            };
            Ok(Artifact::ok(splice_system_output(&d, coef.as_ref())?))
        }
        SpliceAction::Trop { input } => {
            let (_, d) = diagram(input)?;
            Ok(Artifact::ok(trop_output(&d.splice_tropicalization()?, None)))
        }
        SpliceAction::Crosscheck { input } => {
            let (_, d) = diagram(input)?;
            let r = splice_crosscheck(&d)?;
            let passed = r.passed;
            Ok(Artifact::checked(Output::SpliceCrosscheck(r), passed, "splice crosscheck"))
        }
    }
}

fn arc_values<C: Coefficient>(a: &TruncatedArc<C>, eval: &[Series]) -> Result<ArcWeightOut, CliError> {
    Ok(ArcWeightOut {
        weight: ints(&arc_weight(a)?),
        values: semivaluation_on(a, eval)?.iter().map(ToString::to_string).collect(),
    })
}

fn arc_weight_cmd(input: &Path, eval: &[PathBuf]) -> Result<Artifact, CliError> {
    let a: ArcFile = read_json(input)?;
    let series = eval.iter().map(|p| read_series(p)).collect::<Result<Vec<_>, _>>()?;
    let out = match a.parse()? {
        ParsedArc::Exact(a) => arc_values(&a, &series)?,
        ParsedArc::Float(a) => arc_values(&a, &series)?,
    };
    Ok(Artifact::ok(Output::ArcWeight(out)))
}

pub fn puiseux(f: &Series, opts: &PuiseuxOptions, mode: Mode) -> Result<Output, CliError> {
    let arcs = match mode {
        Mode::Exact => puiseux_expand_exact(f, opts)?
            .iter()
            .map(|a| {
                let e = evaluate_on_arc(f, a)?;
                Ok(PuiseuxArcOut {
                    weight: ints(&arc_weight(a)?),
                    arc: ArcFile::exact(a),
                    residual: ResidualOut {
                        order: e.order(),
                        valid_below: e.valid_below(),
                        max_magnitude: e.max_magnitude_below(e.valid_below()),
                    },
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        Mode::Float => puiseux_expand_float(f, opts)?
            .iter()
            .map(|a| {
                let e = evaluate_on_arc(f, a)?;
                Ok(PuiseuxArcOut {
                    weight: ints(&arc_weight(a)?),
                    arc: ArcFile::float(a),
                    residual: ResidualOut {
                        order: e.order_with_tolerance(opts.tol),
                        valid_below: e.valid_below(),
                        max_magnitude: e.max_magnitude_below(e.valid_below()),
                    },
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?,
    };
    Ok(Output::Puiseux(PuiseuxOut {
        mode: match mode {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
        .into(),
        depth: opts.depth,
        arcs,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse() {
        assert_eq!(parse_weight("2, 3", 2).unwrap(), LatticeVector::weight([2, 3]));
        assert!(matches!(parse_weight("2,x", 2), Err(CliError::Input(_))));
        assert!(matches!(parse_weight("2", 2), Err(CliError::Input(_))));
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_json::<SeriesFile>("f.json", "{\n  \"rank\": 2,\n  \"terms\": [oops]\n}").unwrap_err();
        match e {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (3, 13)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn arguments_are_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
