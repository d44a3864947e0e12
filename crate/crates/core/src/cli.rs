//! The `birkhoff` command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid input,
//! 3 comparison mismatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bench::{self, BenchOptions, MapKind, Shape};
use crate::config::Bounds;
use crate::duality::{self, DualityError};
use crate::fixpoint::oracle::bruteforce_fixpoints;
use crate::fixpoint::{Algorithm1, FixpointError, FixpointLattice, QuotientMethod, QuotientPoset};
use crate::io::{read_json, IoError, MapJson, PosetJson, QuotientCounterexample, QuotientJson};
use crate::lattice::{FiniteLattice, LatticeError, LatticeHom};
use crate::poset::{MonotoneMap, Poset, PosetError};
use crate::dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "birkhoff",
    version,
    about = "Fix-points of finite distributive lattice homomorphisms, computed on the dual poset"
)]
pub struct RunConfig {
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Poset,
    Lattice,
    Hom,
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Coequalizer,
    Components,
}

impl From<Method> for QuotientMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Coequalizer => QuotientMethod::Coequalizer,
            Method::Components => QuotientMethod::Components,
        }
    }
}

/// Either a poset with a monotone self-map, or a lattice with an
/// endomorphism.
#[derive(Debug, Args)]
pub struct Input {
    #[arg(long, requires = "map", conflicts_with_all = ["lattice", "hom"])]
    pub poset: Option<PathBuf>,
    #[arg(long, requires = "poset")]
    pub map: Option<PathBuf>,
    #[arg(long, requires = "hom")]
    pub lattice: Option<PathBuf>,
    #[arg(long, requires = "lattice")]
    pub hom: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct Mode {
    /// Stream fix-points as JSON lines (default).
    #[arg(long)]
    pub list: bool,
    /// Print the number of fix-points.
    #[arg(long)]
    pub count: bool,
    /// Print the quotient poset.
    #[arg(long)]
    pub quotient: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a file against the poset, lattice, homomorphism or monotone map rules.
    Validate {
        kind: Kind,
        path: PathBuf,
        /// Domain lattice (for `hom`).
        #[arg(long)]
        lattice: Option<PathBuf>,
        /// Domain poset (for `map`).
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Codomain, when different from the domain.
        #[arg(long)]
        codomain: Option<PathBuf>,
    },
    /// Print the poset of join-irreducibles of a lattice.
    Dual {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Homomorphism to dual monotone map (`--lattice --hom`), or monotone map
    /// to homomorphism on the ideal lattice (`--poset --map`).
    Dualmap {
        #[command(flatten)]
        input: Input,
    },
    /// Compute the fix-points of an endomorphism.
    Fixpoints {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mode: Mode,
        #[arg(long, value_enum, default_value = "coequalizer")]
        method: Method,
    },
    /// Check the dual pipeline against a brute-force scan, and the two
    /// quotient constructions against each other.
    Compare {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Where counterexample artifacts are written.
        #[arg(long, default_value = ".")]
        artifact_dir: PathBuf,
        /// Redirect one edge of the map fed to the components quotient.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Render a Hasse diagram, a map graph, or a quotient as Graphviz DOT.
    Dot {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, requires = "map")]
        quotient: bool,
        #[arg(long, value_enum, default_value = "coequalizer")]
        method: Method,
    },
    /// Time the dual computation on a generated workload.
    Bench {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "identity")]
        map_kind: MapKind,
        /// Largest ideal lattice the primal-side scan may materialize.
        #[arg(long, default_value_t = bench::DEFAULT_PRIMAL_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
        primal_bound: u64,
        /// Largest number of ideals streamed when counting on the dual side.
        #[arg(long, default_value_t = bench::DEFAULT_STREAM_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        stream_cap: u64,
    },
}

enum Failure {
    Usage(String),
    /// Invalid input; the report goes to standard output.
    Invalid(Value),
    /// Comparison mismatch; the report goes to standard output.
    Mismatch(Value),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        Failure::Invalid(poset_report(&e))
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Invalid(lattice_report(&e))
    }
}

impl From<DualityError> for Failure {
    fn from(e: DualityError) -> Self {
        Failure::Invalid(match &e {
            DualityError::Lattice(inner) => lattice_report(inner),
            DualityError::Poset(inner) => poset_report(inner),
            DualityError::NoMinimum(y) => invalid("no_minimum", &e, json!({ "witness": [y] })),
            DualityError::NotIdealLattice(_) => invalid("not_ideal_lattice", &e, json!({})),
        })
    }
}

impl From<FixpointError> for Failure {
    fn from(e: FixpointError) -> Self {
        Failure::Invalid(match &e {
            FixpointError::Lattice(inner) => lattice_report(inner),
            FixpointError::Duality(DualityError::Lattice(inner)) => lattice_report(inner),
            FixpointError::Duality(DualityError::Poset(inner)) => poset_report(inner),
            FixpointError::QuotientNotAntisymmetric { first, second } => invalid(
                "quotient_not_antisymmetric",
                &e,
                json!({ "witness": [first, second] }),
            ),
            FixpointError::SizeBoundExceeded { .. } => invalid("size_bound_exceeded", &e, json!({})),
            _ => invalid("invalid", &e, json!({})),
        })
    }
}

fn invalid(error: &str, e: &dyn std::fmt::Display, extra: Value) -> Value {
    let mut report = json!({ "valid": false, "error": error, "message": e.to_string() });
    if let (Value::Object(report), Value::Object(extra)) = (&mut report, extra) {
        report.extend(extra);
    }
    report
}

fn poset_report(e: &PosetError) -> Value {
    match e {
        PosetError::DuplicateElement(x) => invalid("duplicate_element", e, json!({ "witness": [x] })),
        PosetError::UnknownElement(x) => invalid("unknown_element", e, json!({ "witness": [x] })),
        PosetError::AntisymmetryViolation(a, b) => {
            invalid("antisymmetry_violation", e, json!({ "witness": [a, b] }))
        }
        PosetError::MissingImage(x) => invalid("missing_image", e, json!({ "witness": [x] })),
        PosetError::NotMonotone(a, b) => invalid("not_monotone", e, json!({ "witness": [a, b] })),
        PosetError::NotDownClosed { member, missing } => {
            invalid("not_down_closed", e, json!({ "witness": [member, missing] }))
        }
    }
}

fn lattice_report(e: &LatticeError) -> Value {
    match e {
        LatticeError::Poset(inner) => poset_report(inner),
        LatticeError::Empty => invalid("empty", e, json!({})),
        LatticeError::NotALattice { x, y, meet } => invalid(
            "not_a_lattice",
            e,
            json!({ "witness": [x, y], "missing": if *meet { "meet" } else { "join" } }),
        ),
        LatticeError::NotDistributive { a, b, c } => {
            invalid("not_distributive", e, json!({ "witness": [a, b, c] }))
        }
        LatticeError::SizeBoundExceeded { bound } => {
            invalid("size_bound_exceeded", e, json!({ "bound": bound }))
        }
        LatticeError::NotHom { law, a, b } => {
            let witness: Vec<&str> = std::iter::once(a.as_str()).chain(b.as_deref()).collect();
            invalid("not_hom", e, json!({ "law": law.as_str(), "witness": witness }))
        }
        LatticeError::NotEndomorphism => invalid("not_endomorphism", e, json!({})),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let bounds = match Bounds::from_env() {
        Ok(b) => b,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };

    let mut buffer = Vec::new();
    let outcome = execute(&config.command, bounds, &mut buffer);
    let code = match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Invalid(report)) => {
            if let Some(msg) = report.get("message").and_then(Value::as_str) {
                let _ = writeln!(stderr, "invalid: {msg}");
            }
            emit(&mut buffer, &report);
            EXIT_INVALID
        }
        Err(Failure::Mismatch(report)) => {
            emit(&mut buffer, &report);
            EXIT_MISMATCH
        }
    };
    let written = match &config.output {
        Some(path) => std::fs::write(path, &buffer).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(&buffer).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    code
}

fn emit<T: Serialize + ?Sized>(out: &mut Vec<u8>, value: &T) {
    serde_json::to_writer(&mut *out, value).expect("serializable");
    out.push(b'\n');
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    Ok(read_json::<PosetJson>(path)?.to_poset()?)
}

fn load_lattice(path: &Path, bounds: Bounds) -> Result<FiniteLattice, Failure> {
    let order = load_poset(path)?;
    if order.len() > bounds.max_lattice {
        return Err(LatticeError::SizeBoundExceeded {
            bound: bounds.max_lattice,
        }
        .into());
    }
    Ok(FiniteLattice::from_order(&order)?)
}

fn load_map(path: &Path, domain: &Poset, codomain: &Poset) -> Result<MonotoneMap, Failure> {
    let raw = read_json::<MapJson>(path)?;
    Ok(MonotoneMap::from_names(domain, codomain, &raw.map)?)
}

fn load_hom(path: &Path, domain: &FiniteLattice, codomain: &FiniteLattice) -> Result<LatticeHom, Failure> {
    let raw = read_json::<MapJson>(path)?;
    Ok(LatticeHom::from_names(domain, codomain, &raw.map)?)
}

enum Loaded {
    Dual(MonotoneMap),
    Primal(LatticeHom),
}

fn load_input(input: &Input, bounds: Bounds) -> Result<Loaded, Failure> {
    match input {
        Input {
            poset: Some(p),
            map: Some(m),
            ..
        } => {
            let poset = load_poset(p)?;
            Ok(Loaded::Dual(load_map(m, &poset, &poset)?))
        }
        Input {
            lattice: Some(l),
            hom: Some(h),
            ..
        } => {
            let lattice = load_lattice(l, bounds)?;
            Ok(Loaded::Primal(load_hom(h, &lattice, &lattice)?))
        }
        _ => Err(Failure::Usage(
            "give either --poset with --map, or --lattice with --hom".into(),
        )),
    }
}

fn execute(command: &Command, bounds: Bounds, out: &mut Vec<u8>) -> Result<(), Failure> {
    match command {
        Command::Validate {
            kind,
            path,
            lattice,
            poset,
            codomain,
        } => cmd_validate(*kind, path, lattice.as_deref(), poset.as_deref(), codomain.as_deref(), bounds, out),
        Command::Dual { lattice } => {
            let lattice = load_lattice(lattice, bounds)?;
            emit(out, &PosetJson::from_poset(&lattice.join_irreducibles()));
            Ok(())
        }
        Command::Dualmap { input } => cmd_dualmap(input, bounds, out),
        Command::Fixpoints {
            input,
            mode,
            method,
        } => cmd_fixpoints(input, mode, (*method).into(), bounds, out),
        Command::Compare {
            poset,
            map,
            artifact_dir,
            inject_fault,
        } => cmd_compare(poset, map, artifact_dir, *inject_fault, bounds, out),
        Command::Dot {
            poset,
            map,
            quotient,
            method,
        } => {
            let p = load_poset(poset)?;
            let text = match map {
                None => dot::hasse(&p),
                Some(m) => {
                    let phi = load_map(m, &p, &p)?;
                    if *quotient {
                        dot::quotient(&QuotientMethod::from(*method).quotient(&phi)?)
                    } else {
                        dot::map_graph(&phi)
                    }
                }
            };
            out.extend_from_slice(text.as_bytes());
            Ok(())
        }
        Command::Bench {
            shape,
            n,
            map_kind,
            primal_bound,
            stream_cap,
        } => {
            let opts = BenchOptions {
                shape: *shape,
                n: *n as usize,
                map_kind: *map_kind,
                primal_bound: *primal_bound as usize,
                stream_cap: *stream_cap as usize,
            };
            let report = bench::run(&opts)?;
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            out.extend_from_slice(text.as_bytes());
            out.push(b'\n');
            if !report.quotients_agree || report.primal.status == "disagree" {
                return Err(Failure::Mismatch(json!({ "mismatch": true })));
            }
            Ok(())
        }
    }
}

fn cmd_validate(
    kind: Kind,
    path: &Path,
    lattice: Option<&Path>,
    poset: Option<&Path>,
    codomain: Option<&Path>,
    bounds: Bounds,
    out: &mut Vec<u8>,
) -> Result<(), Failure> {
    match kind {
        Kind::Poset => {
            load_poset(path)?;
        }
        Kind::Lattice => {
            load_lattice(path, bounds)?;
        }
        Kind::Hom => {
            let domain_path =
                lattice.ok_or_else(|| Failure::Usage("validate hom needs --lattice".into()))?;
            let domain = load_lattice(domain_path, bounds)?;
            let codomain = match codomain {
                Some(c) => load_lattice(c, bounds)?,
                None => domain.clone(),
            };
            load_hom(path, &domain, &codomain)?;
        }
        Kind::Map => {
            let domain_path =
                poset.ok_or_else(|| Failure::Usage("validate map needs --poset".into()))?;
            let domain = load_poset(domain_path)?;
            let codomain = match codomain {
                Some(c) => load_poset(c)?,
                None => domain.clone(),
            };
            load_map(path, &domain, &codomain)?;
        }
    }
    emit(out, &json!({ "valid": true }));
    Ok(())
}

fn cmd_dualmap(input: &Input, bounds: Bounds, out: &mut Vec<u8>) -> Result<(), Failure> {
    match load_input(input, bounds)? {
        Loaded::Primal(f) => {
            let lifted = duality::lift_hom(&f)?;
            let phi = duality::dual_map(lifted.hom())?;
            emit(
                out,
                &json!({
                    "poset": PosetJson::from_poset(lifted.base()),
                    "map": phi.to_name_map(),
                }),
            );
        }
        Loaded::Dual(phi) => {
            let f = duality::hom_from_dual(&phi, bounds.max_lattice)?;
            emit(out, &MapJson { map: f.to_name_map() });
        }
    }
    Ok(())
}

fn cmd_fixpoints(
    input: &Input,
    mode: &Mode,
    method: QuotientMethod,
    bounds: Bounds,
    out: &mut Vec<u8>,
) -> Result<(), Failure> {
    match load_input(input, bounds)? {
        Loaded::Dual(phi) => {
            let fix = FixpointLattice::new(&phi, method)?;
            if mode.count {
                emit(out, &fix.count());
            } else if mode.quotient {
                emit(out, &QuotientJson::from_quotient(fix.quotient()));
            } else {
                for member in fix.members() {
                    emit(out, &member.names());
                }
            }
        }
        Loaded::Primal(f) => {
            let alg = Algorithm1::prepare(&f, method)?;
            if mode.count {
                emit(out, &alg.quotient().class_order().ideals().count());
            } else if mode.quotient {
                emit(out, &QuotientJson::from_quotient(alg.quotient()));
            } else {
                let lattice = f.domain();
                for x in alg.fixpoints() {
                    emit(out, lattice.name(x));
                }
            }
        }
    }
    Ok(())
}

/// The map fed to the components route under fault injection: the first
/// non-fixed element is redirected to itself, or, for the identity, the
/// first element to the last.
fn faulty(phi: &MonotoneMap) -> MonotoneMap {
    let mut table = phi.table().to_vec();
    match (0..table.len()).find(|&x| table[x] != x) {
        Some(x) => table[x] = x,
        None if table.len() > 1 => table[0] = table.len() - 1,
        None => {}
    }
    MonotoneMap::new_unchecked(phi.domain(), phi.codomain(), table)
}

fn cmd_compare(
    poset: &Path,
    map: &Path,
    artifact_dir: &Path,
    inject_fault: bool,
    bounds: Bounds,
    out: &mut Vec<u8>,
) -> Result<(), Failure> {
    let p = load_poset(poset)?;
    let phi = load_map(map, &p, &p)?;

    let coequalizer = QuotientPoset::coequalizer(&phi)?;
    let dual: BTreeSet<String> = FixpointLattice::new(&phi, QuotientMethod::Coequalizer)?
        .members()
        .map(|m| m.canonical_name())
        .collect();

    let f = duality::hom_from_dual(&phi, bounds.max_lattice)?;
    let brute: BTreeSet<String> = bruteforce_fixpoints(&f, bounds.max_lattice)?
        .into_iter()
        .map(|x| f.domain().name(x).to_owned())
        .collect();

    let components_input = if inject_fault { faulty(&phi) } else { phi.clone() };
    let components = QuotientPoset::from_components(&components_input);
    let quotients_agree = matches!(&components, Ok(c) if *c == coequalizer);
    let fixpoints_agree = dual == brute;

    let mut report = json!({
        "fixpoints_agree": fixpoints_agree,
        "dual_count": dual.len(),
        "bruteforce_count": brute.len(),
        "quotients_agree": quotients_agree,
    });
    if fixpoints_agree && quotients_agree {
        emit(out, &report);
        return Ok(());
    }
    let artifact = QuotientCounterexample::new(&phi, &components, &coequalizer);
    let path = artifact.write_into(artifact_dir)?;
    report["artifact"] = json!(path.display().to_string());
    Err(Failure::Mismatch(report))
}
