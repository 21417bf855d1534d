//! Command-line interface: loads a polyhedral divisor from a JSON file and
//! runs cone, properness, graded-piece, derivation, and invariant queries,
//! printing one JSON report to stdout.
//!
//! Exit codes: 0 success; 2 malformed input or a domain validation error;
//! 3 the computation succeeded but the verdict is `unknown` (undecidable on
//! the given data, e.g. degree-zero semiample questions at positive genus).

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tvariety::arith::{parse_rat, Int, Rat};
use tvariety::curve::{DimReport, TriState};
use tvariety::divisor::{Element, HomogeneousElement, PolyhedralDivisor};
use tvariety::error::Error;
use tvariety::invariants::{
    build_trivial_ml_example, fml_fib_lower_bound, ml_fib_with, prime_divisor,
};
use tvariety::json::{
    self, int_vec_json, parse_int_vec, qdivisor_json, ApplyReport, ClassJson, ClassesReport,
    ConeJson, DeReport, DivisorJson, DualReport, ElementJson, EvalReport, FmlReportJson,
    GradedPieceReport, LndReport, MlReportJson, Num, OrbitReport, PhieReport, PieceAtPoint,
    PieceReport, ProperJson, SrhoReport, SCHEMA_VERSION,
};
use tvariety::lattice::{LatticeVector, RationalVector, Space};
use tvariety::lnd::{d_e, d_e_slow, list_equivalence_classes, make_lnd, phi_e, RayContext};
use tvariety::section::RationalSection;
use tvariety::{Cone, DivisorPoint, FiberLnd, QDivisor};

#[derive(Parser)]
#[command(
    name = "tvariety",
    about = "Polyhedral divisors, multigraded section rings, and fiber-type locally nilpotent derivations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Path to the polyhedral-divisor JSON file.
    #[arg(long = "in", value_name = "PATH")]
    input: String,
}

#[derive(Args)]
struct LndArgs {
    #[command(flatten)]
    input: InputArg,
    /// Ray of the tail cone, e.g. "1,0".
    #[arg(long = "ray", value_name = "VEC", allow_hyphen_values = true)]
    ray: String,
    /// Degree vector e in S_rho, e.g. "-1,1".
    #[arg(short = 'e', value_name = "VEC", allow_hyphen_values = true)]
    e: String,
    /// Section phi in Phi_e, e.g. "1" or "t - 2" (defaults to 1).
    #[arg(long = "phi", value_name = "SECTION", default_value = "1", allow_hyphen_values = true)]
    phi: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tail cone and its dual (generators and inequalities).
    Dual {
        #[command(flatten)]
        input: InputArg,
    },
    /// Check properness (semiample on the weight cone, big on its interior).
    CheckProper {
        #[command(flatten)]
        input: InputArg,
    },
    /// Evaluate the divisor at a weight vector m.
    Eval {
        #[command(flatten)]
        input: InputArg,
        /// Weight vector, e.g. "2,1".
        #[arg(short = 'm', value_name = "VEC", allow_hyphen_values = true)]
        m: String,
    },
    /// The linear piece of every coefficient's support function at m.
    Piece {
        #[command(flatten)]
        input: InputArg,
        #[arg(short = 'm', value_name = "VEC", allow_hyphen_values = true)]
        m: String,
    },
    /// The graded piece A_m: dimension and basis where available.
    GradedPiece {
        #[command(flatten)]
        input: InputArg,
        #[arg(short = 'm', value_name = "VEC", allow_hyphen_values = true)]
        m: String,
    },
    /// Equivalence classes of fiber-type derivations, one per ray.
    Classes {
        #[command(flatten)]
        input: InputArg,
        /// Max-norm bound for the witness scan.
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Enumerate the admissible degree set S_rho up to a bound.
    Srho {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "ray", value_name = "VEC", allow_hyphen_values = true)]
        ray: String,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// The divisor D_e attached to a ray and a degree e.
    De {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "ray", value_name = "VEC", allow_hyphen_values = true)]
        ray: String,
        #[arg(short = 'e', value_name = "VEC", allow_hyphen_values = true)]
        e: String,
    },
    /// The section space Phi_e = H^0(Y, O(-D_e)).
    Phie {
        #[command(flatten)]
        input: InputArg,
        #[arg(long = "ray", value_name = "VEC", allow_hyphen_values = true)]
        ray: String,
        #[arg(short = 'e', value_name = "VEC", allow_hyphen_values = true)]
        e: String,
    },
    /// Validate and print a derivation from (ray, e, phi).
    MkLnd {
        #[command(flatten)]
        lnd: LndArgs,
        /// Degree bound for the kernel monoid listing.
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Apply the derivation to a homogeneous element "<section>,<degree>".
    Apply {
        #[command(flatten)]
        lnd: LndArgs,
        /// Element as "<section>,<degree vector>", e.g. "t,2,1".
        #[arg(long = "elt", value_name = "F,M", allow_hyphen_values = true)]
        elt: String,
    },
    /// The exponential orbit sum exp(t·d) applied to an element.
    Orbit {
        #[command(flatten)]
        lnd: LndArgs,
        #[arg(long = "elt", value_name = "F,M", allow_hyphen_values = true)]
        elt: String,
        /// Time parameter (rational).
        #[arg(short = 't', value_name = "Q", default_value = "1", allow_hyphen_values = true)]
        time: String,
    },
    /// The fiber-type Makar-Limanov invariant report.
    MlFib {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 6)]
        bound: u32,
        /// Also list ring generators of the invariant subring up to this bound.
        #[arg(long = "generators", value_name = "B")]
        generators: Option<u32>,
    },
    /// Lower bound for the fiber-type fraction-field invariant.
    FmlFib {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Build the trivial-invariant example divisor (p + sigma)·H.
    ExampleTrivialMl {
        /// Base kind: proj_line or abstract_curve.
        #[arg(long, default_value = "proj_line")]
        base: String,
        /// Genus (abstract_curve only).
        #[arg(long)]
        genus: Option<u32>,
        /// Support of H as comma-separated points, e.g. "inf" or "0,label:P".
        #[arg(long = "divisor", value_name = "POINTS", default_value = "inf")]
        divisor: String,
        /// Multiplicity of every point of H.
        #[arg(long, default_value_t = 1)]
        multiplicity: i64,
        /// Rays of sigma as semicolon-separated vectors, e.g. "1,0;0,1".
        #[arg(long = "sigma", value_name = "RAYS", allow_hyphen_values = true)]
        sigma: String,
        /// Interior lattice point p, e.g. "1,1".
        #[arg(short = 'p', value_name = "VEC", allow_hyphen_values = true)]
        p: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { report, unknown }) => {
            print!("{report}");
            if unknown {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    report: String,
    unknown: bool,
}

fn ok<T: serde::Serialize>(report: &T) -> Result<Outcome, Error> {
    Ok(Outcome { report: json::render(report), unknown: false })
}

fn verdict<T: serde::Serialize>(report: &T, unknown: bool) -> Result<Outcome, Error> {
    Ok(Outcome { report: json::render(report), unknown })
}

fn load(input: &InputArg) -> Result<PolyhedralDivisor, Error> {
    let text = fs::read_to_string(&input.input)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", input.input)))?;
    json::parse_divisor(&text)
}

fn ray_context(dd: &PolyhedralDivisor, ray: &str) -> Result<RayContext, Error> {
    let coords = parse_int_vec(ray)?;
    RayContext::new(dd.tail(), &LatticeVector::new(Space::N, coords))
}

fn weight(dd: &PolyhedralDivisor, m: &str) -> Result<LatticeVector, Error> {
    let coords = parse_int_vec(m)?;
    if coords.len() != dd.rank() {
        return Err(Error::RankMismatch { expected: dd.rank(), found: coords.len() });
    }
    Ok(LatticeVector::new(Space::M, coords))
}

/// Splits "<section>,<degree vector>" at the first comma (section syntax
/// never contains a comma).
fn parse_element(dd: &PolyhedralDivisor, elt: &str) -> Result<HomogeneousElement, Error> {
    let (section, degree) = elt
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput("element must be \"<section>,<degree>\"".into()))?;
    let section = RationalSection::parse(section)?;
    let degree = parse_int_vec(degree)?;
    dd.element(section, degree)
}

fn build_lnd(args: &LndArgs) -> Result<(PolyhedralDivisor, FiberLnd), Error> {
    let dd = load(&args.input)?;
    let ctx = ray_context(&dd, &args.ray)?;
    let e = parse_int_vec(&args.e)?;
    let phi = RationalSection::parse(&args.phi)?;
    let lnd = make_lnd(&dd, &ctx, &e, phi)?;
    Ok((dd, lnd))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Dual { input } => {
            let dd = load(&input)?;
            ok(&DualReport {
                schema: SCHEMA_VERSION,
                tail: ConeJson::from_cone(dd.tail()),
                dual: ConeJson::from_cone(dd.weight_cone()),
            })
        }
        Command::CheckProper { input } => {
            let dd = load(&input)?;
            let report = dd.is_proper();
            let unknown = report.proper == TriState::Unknown;
            verdict(&ProperJson::from_report(&report), unknown)
        }
        Command::Eval { input, m } => {
            let dd = load(&input)?;
            let m = weight(&dd, &m)?;
            let divisor = dd.evaluate(&m)?;
            ok(&EvalReport {
                schema: SCHEMA_VERSION,
                m: int_vec_json(&m.coords),
                divisor: qdivisor_json(&divisor),
            })
        }
        Command::Piece { input, m } => {
            let dd = load(&input)?;
            let m = weight(&dd, &m)?;
            if !dd.weight_cone().contains_lattice(&m)? {
                return Err(Error::OutsideDualCone);
            }
            let m_rat = RationalVector::new(
                Space::M,
                m.coords.iter().map(|x| Rat::from_integer(x.clone())).collect(),
            );
            let mut pieces = Vec::new();
            for (point, delta) in dd.coeffs() {
                for piece in delta.linear_pieces() {
                    if piece.cone.contains(&m_rat)? {
                        pieces.push(PieceAtPoint {
                            at: point.to_string(),
                            vertex: piece.vertex.iter().map(|x| Num(x.clone())).collect(),
                            value: Num(piece.functional(&m_rat.coords)),
                        });
                        break;
                    }
                }
            }
            ok(&PieceReport { schema: SCHEMA_VERSION, m: int_vec_json(&m.coords), pieces })
        }
        Command::GradedPiece { input, m } => {
            let dd = load(&input)?;
            let m = weight(&dd, &m)?;
            let piece = dd.graded_piece(&m)?;
            ok(&GradedPieceReport::from_piece(&piece))
        }
        Command::Classes { input, bound } => {
            let dd = load(&input)?;
            let classes = list_equivalence_classes(&dd, bound)?;
            let unknown = classes.iter().any(|c| c.exists == TriState::Unknown);
            verdict(
                &ClassesReport {
                    schema: SCHEMA_VERSION,
                    bound,
                    classes: classes.iter().map(ClassJson::from_report).collect(),
                },
                unknown,
            )
        }
        Command::Srho { input, ray, bound } => {
            let dd = load(&input)?;
            let ctx = ray_context(&dd, &ray)?;
            ok(&SrhoReport {
                schema: SCHEMA_VERSION,
                ray: int_vec_json(ctx.rho0()),
                bound,
                degrees: ctx.s_rho_enumerate(bound).iter().map(|e| int_vec_json(e)).collect(),
            })
        }
        Command::De { input, ray, e } => {
            let dd = load(&input)?;
            let ctx = ray_context(&dd, &ray)?;
            let e = parse_int_vec(&e)?;
            let divisor = d_e(&dd, &ctx, &e)?;
            debug_assert_eq!(divisor, d_e_slow(&dd, &ctx, &e)?);
            ok(&DeReport {
                schema: SCHEMA_VERSION,
                ray: int_vec_json(ctx.rho0()),
                e: int_vec_json(&e),
                divisor: qdivisor_json(&divisor),
            })
        }
        Command::Phie { input, ray, e } => {
            let dd = load(&input)?;
            let ctx = ray_context(&dd, &ray)?;
            let e = parse_int_vec(&e)?;
            let space = phi_e(&dd, &ctx, &e)?;
            let unknown = space.dim == DimReport::Unknown;
            verdict(&PhieReport::from_space(ctx.rho0(), &space), unknown)
        }
        Command::MkLnd { lnd, bound } => {
            let (_, d) = build_lnd(&lnd)?;
            let kernel = d.kernel_description(bound)?;
            ok(&LndReport {
                schema: SCHEMA_VERSION,
                ray: int_vec_json(d.context().rho0()),
                e: int_vec_json(d.degree()),
                phi: d.phi().to_string(),
                kernel_monoid: ConeJson::from_cone(&kernel.weight_monoid),
            })
        }
        Command::Apply { lnd, elt } => {
            let (dd, d) = build_lnd(&lnd)?;
            let element = parse_element(&dd, &elt)?;
            let image = d.apply(&element)?;
            ok(&ApplyReport {
                schema: SCHEMA_VERSION,
                ray: int_vec_json(d.context().rho0()),
                e: int_vec_json(d.degree()),
                phi: d.phi().to_string(),
                input: ElementJson::from_term(&element),
                output: ElementJson::from_element(&image),
            })
        }
        Command::Orbit { lnd, elt, time } => {
            let (dd, d) = build_lnd(&lnd)?;
            let element = parse_element(&dd, &elt)?;
            let t = parse_rat(&time)?;
            let terms = d.exp_action(&t, &Element::Term(element.clone()))?;
            ok(&OrbitReport {
                schema: SCHEMA_VERSION,
                ray: int_vec_json(d.context().rho0()),
                e: int_vec_json(d.degree()),
                phi: d.phi().to_string(),
                time: Num(t),
                input: ElementJson::from_term(&element),
                terms: terms.iter().map(ElementJson::from_term).collect(),
            })
        }
        Command::MlFib { input, bound, generators } => {
            let dd = load(&input)?;
            let report = ml_fib_with(&dd, bound, generators)?;
            let unknown = report.trivial == TriState::Unknown;
            verdict(&MlReportJson::from_report(&report), unknown)
        }
        Command::FmlFib { input, bound } => {
            let dd = load(&input)?;
            let report = fml_fib_lower_bound(&dd, bound)?;
            ok(&FmlReportJson::from_report(&report))
        }
        Command::ExampleTrivialMl { base, genus, divisor, multiplicity, sigma, p } => {
            let base = json::BaseJson { kind: base, genus }.to_base()?;
            let mut h = QDivisor::zero(base);
            for point in divisor.split(',') {
                let point = DivisorPoint::parse(point.trim())?;
                h = h.add(&prime_divisor(base, point, multiplicity)?)?;
            }
            let rays: Vec<Vec<Int>> =
                sigma.split(';').map(parse_int_vec).collect::<Result<_, _>>()?;
            let rank = rays
                .first()
                .map(Vec::len)
                .ok_or_else(|| Error::InvalidInput("sigma needs at least one ray".into()))?;
            let sigma = Cone::from_generators(Space::N, rank, &rays)?;
            let p = LatticeVector::new(Space::N, parse_int_vec(&p)?);
            let dd = build_trivial_ml_example(base, &h, &sigma, &p)?;
            ok(&DivisorJson::from_divisor(&dd))
        }
    }
}
