//! The `toeplitz` command line: argument parsing, dispatch and reports.
//!
//! [`run`] is the whole program minus process plumbing. It returns the text
//! for standard output together with the exit code:
//! 0 decided/passed, 2 refuted or not equivalent, 3 undecided or certified
//! only to a depth, 1 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use toeplitz_core::algebra::evaluate;
use toeplitz_core::endo::{decide_endo_conjugate, decide_endo_equal, intertwiner_check, EndoConjugate, EndoEqual, Endomorphism};
use toeplitz_core::equivalence::{decide_bh_quasifree, scalar_free_check, verify_quasifree, BhDecision, QuasifreeWitness, ScalarFreeOutcome};
use toeplitz_core::io::{self, Roles};
use toeplitz_core::module_kit::{basis_to_unitary, check_orthonormal, fd_to_k0, ibn, unit_order, UnitOrder};
use toeplitz_core::wold::{multiplicity, wold};
use toeplitz_core::{Error, RankVector, Representation, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toeplitz", version, about = "Exact computations with representations of Toeplitz algebras")]
pub struct Cli {
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the multiplicity (number of Fock summands).
    Mult { rep: PathBuf },
    /// Wold decomposition report.
    Wold { rep: PathBuf },
    /// Decide an equivalence between two representations.
    Equiv {
        #[arg(long, value_enum)]
        mode: Mode,
        omega: PathBuf,
        tau: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Write the witness to this file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Verify a witness from `tau` to `omega` on all basis vectors up to a depth.
    Verify {
        omega: PathBuf,
        tau: PathBuf,
        witness: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Decide equality of the induced endomorphisms of B(H).
    EndoEqual {
        omega: PathBuf,
        tau: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Decide conjugacy of the induced endomorphisms of B(H).
    EndoConjugate {
        omega: PathBuf,
        tau: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Check that an operator intertwines the identity and the endomorphism of a representation.
    Intertwiner {
        operator: PathBuf,
        rep: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Apply an algebra element in a representation.
    AlgebraEval {
        element: PathBuf,
        rep: PathBuf,
        /// `{"ranks": {"0": "1"}}`; the first basis vector when omitted.
        #[arg(long)]
        vector: Option<PathBuf>,
    },
    /// Hilbert module utilities.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Invariant basis number test from K₀ data or a finite-dimensional algebra.
    Ibn(IbnArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    BhQuasifree,
    ScalarFree,
}

#[derive(Subcommand, Debug)]
enum ModuleAction {
    CheckBasis { family: PathBuf },
    ToUnitary { family: PathBuf },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct IbnArgs {
    #[arg(long)]
    k0: Option<PathBuf>,
    #[arg(long)]
    fd: Option<PathBuf>,
}

/// A failure before any decision was reached.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = std::result::Result<(Value, i32), InputError>;

fn read(path: &Path) -> std::result::Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: toeplitz_core::Result<T>) -> std::result::Result<T, InputError> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_rep(path: &Path) -> std::result::Result<Arc<Representation>, InputError> {
    Ok(Arc::new(with_path(path, io::parse_representation(&read(path)?))?))
}

fn shown(path: &Path) -> String {
    path.display().to_string()
}

fn input_echo(pairs: &[(&str, &Path, Value)]) -> Value {
    Value::Object(pairs.iter().map(|(k, p, v)| (k.to_string(), json!({ "path": shown(p), "value": v }))).collect())
}

fn report(command: &str, inputs: Value, fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    io::document(Value::Object(m))
}

/// Runs one invocation and returns standard output and the exit code.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (e.render().to_string(), code);
        }
    };
    let start = Instant::now();
    if let Command::Mult { rep } = &cli.command {
        return match load_rep(rep) {
            Ok(r) => (format!("{}\n", multiplicity(&r)), EXIT_OK),
            Err(InputError(msg)) => (format!("error: {msg}\n"), EXIT_INPUT),
        };
    }
    match dispatch(&cli.command) {
        Ok((mut value, code)) => {
            if cli.timing {
                if let Value::Object(m) = &mut value {
                    m.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1000.0));
                }
            }
            (io::render(&value), code)
        }
        Err(InputError(msg)) => (format!("error: {msg}\n"), EXIT_INPUT),
    }
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Mult { .. } => unreachable!("handled in run"),
        Command::Wold { rep } => {
            let r = load_rep(rep)?;
            let w = wold(&r)?;
            let inputs = input_echo(&[("rep", rep, io::representation_to_value(&r))]);
            Ok((report("wold", inputs, vec![("wold", io::wold_to_value(&w))]), EXIT_OK))
        }
        Command::Equiv { mode, omega, tau, depth, emit_witness } => equiv(*mode, omega, tau, *depth, emit_witness.as_deref()),
        Command::Verify { omega, tau, witness, depth } => {
            let (o, t) = (load_rep(omega)?, load_rep(tau)?);
            let roles = Roles::pair(&o, &t);
            let q = with_path(witness, io::parse_witness(&read(witness)?, &roles))?;
            let rep = verify_quasifree(&o, &t, &q, *depth)?;
            let code = if rep.passed() { EXIT_OK } else { EXIT_REFUTED };
            let inputs = input_echo(&[
                ("omega", omega, io::representation_to_value(&o)),
                ("tau", tau, io::representation_to_value(&t)),
                ("witness", witness, io::witness_to_value(&q, &roles)),
            ]);
            let decision = if rep.passed() { "verified" } else { "refuted" };
            Ok((report("verify", inputs, vec![("decision", json!(decision)), ("depth", json!(depth)), ("verification", io::report_to_value(&rep))]), code))
        }
        Command::EndoEqual { omega, tau, depth } => endo_equal(omega, tau, *depth),
        Command::EndoConjugate { omega, tau, witness, depth } => endo_conjugate(omega, tau, witness.as_deref(), *depth),
        Command::Intertwiner { operator, rep, depth } => {
            let r = load_rep(rep)?;
            let roles = Roles::new().with("rep", r.clone());
            let x = with_path(operator, io::parse_operator(&read(operator)?, &roles))?;
            let alpha = Endomorphism { rep: r.clone() };
            let rep_report = intertwiner_check(&x, &alpha, *depth)?;
            let code = if rep_report.passed() { EXIT_OK } else { EXIT_REFUTED };
            let inputs = input_echo(&[
                ("operator", operator, json!({ "expr": io::expr_to_value(&x, &roles) })),
                ("rep", rep, io::representation_to_value(&r)),
            ]);
            let decision = if rep_report.passed() { "intertwines" } else { "does not intertwine" };
            Ok((
                report("intertwiner", inputs, vec![("decision", json!(decision)), ("depth", json!(depth)), ("verification", io::report_to_value(&rep_report))]),
                code,
            ))
        }
        Command::AlgebraEval { element, rep, vector } => algebra_eval(element, rep, vector.as_deref()),
        Command::Module { action } => module(action),
        Command::Ibn(args) => ibn_command(args),
    }
}

fn equiv(mode: Mode, omega: &Path, tau: &Path, depth: usize, emit: Option<&Path>) -> Outcome {
    let (o, t) = (load_rep(omega)?, load_rep(tau)?);
    let roles = Roles::pair(&o, &t);
    let inputs = input_echo(&[("omega", omega, io::representation_to_value(&o)), ("tau", tau, io::representation_to_value(&t))]);
    let emit_witness = |q: &QuasifreeWitness| -> std::result::Result<(), InputError> {
        if let Some(path) = emit {
            fs::write(path, io::serialize_witness(q, &roles)).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    };
    match mode {
        Mode::BhQuasifree => match decide_bh_quasifree(&o, &t)? {
            BhDecision::Equivalent(q) => {
                let rep = verify_quasifree(&o, &t, &q, depth)?;
                emit_witness(&q)?;
                let code = if rep.passed() { EXIT_OK } else { EXIT_REFUTED };
                let fields = vec![
                    ("mode", json!("bh-quasifree")),
                    ("decision", json!("equivalent")),
                    ("multiplicities", json!([multiplicity(&o), multiplicity(&t)])),
                    ("witness", io::witness_to_value(&q, &roles)),
                    ("depth", json!(depth)),
                    ("verification", io::report_to_value(&rep)),
                ];
                Ok((report("equiv", inputs, fields), code))
            }
            BhDecision::NotEquivalent { omega: a, tau: b } => {
                let fields = vec![("mode", json!("bh-quasifree")), ("decision", json!("not equivalent")), ("multiplicities", json!([a, b]))];
                Ok((report("equiv", inputs, fields), EXIT_REFUTED))
            }
        },
        Mode::ScalarFree => {
            let (decision, witness, rep, code) = match scalar_free_check(&o, &t, depth)? {
                ScalarFreeOutcome::ScalarVerified { witness, report } => ("equivalent", Some(witness), report, EXIT_OK),
                ScalarFreeOutcome::Inconclusive { witness, report } => ("verified to depth", Some(witness), report, EXIT_UNKNOWN),
                ScalarFreeOutcome::Refuted { report } => ("not equivalent", None, report, EXIT_REFUTED),
            };
            let mut fields = vec![("mode", json!("scalar-free")), ("decision", json!(decision)), ("depth", json!(depth))];
            if let Some(u) = witness {
                let q = QuasifreeWitness::free(u);
                emit_witness(&q)?;
                fields.push(("witness", io::witness_to_value(&q, &roles)));
            }
            fields.push(("verification", io::report_to_value(&rep)));
            Ok((report("equiv", inputs, fields), code))
        }
    }
}

fn endo_equal(omega: &Path, tau: &Path, depth: usize) -> Outcome {
    let (o, t) = (load_rep(omega)?, load_rep(tau)?);
    let roles = Roles::pair(&o, &t);
    let inputs = input_echo(&[("omega", omega, io::representation_to_value(&o)), ("tau", tau, io::representation_to_value(&t))]);
    let free = |u| io::witness_to_value(&QuasifreeWitness::free(u), &roles);
    let (fields, code) = match decide_endo_equal(&o, &t, depth)? {
        EndoEqual::Equal { witness, report } => (
            vec![("decision", json!("equal")), ("witness", free(witness)), ("verification", io::report_to_value(&report))],
            EXIT_OK,
        ),
        EndoEqual::DepthCertified { witness, report } => (
            vec![("decision", json!("equal to depth")), ("witness", free(witness)), ("verification", io::report_to_value(&report))],
            EXIT_UNKNOWN,
        ),
        EndoEqual::NotEqual { reason, discrepancy, report } => {
            let mut f = vec![("decision", json!("not equal")), ("reason", json!(reason))];
            if let Some(d) = discrepancy {
                f.push((
                    "counterexample",
                    json!({
                        "a": io::sparse_operator_to_value(&d.a),
                        "alpha_a": io::sparse_operator_to_value(&d.alpha_a),
                        "beta_a": io::sparse_operator_to_value(&d.beta_a),
                    }),
                ));
            }
            if let Some(r) = report {
                f.push(("verification", io::report_to_value(&r)));
            }
            (f, EXIT_REFUTED)
        }
    };
    let mut fields = fields;
    fields.push(("depth", json!(depth)));
    Ok((report("endo-equal", inputs, fields), code))
}

fn endo_conjugate(omega: &Path, tau: &Path, witness: Option<&Path>, depth: usize) -> Outcome {
    let (o, t) = (load_rep(omega)?, load_rep(tau)?);
    let roles = Roles::pair(&o, &t);
    let mut echo = vec![("omega", omega, io::representation_to_value(&o)), ("tau", tau, io::representation_to_value(&t))];
    let supplied = match witness {
        Some(p) => {
            let q = with_path(p, io::parse_witness(&read(p)?, &roles))?;
            echo.push(("witness", p, io::witness_to_value(&q, &roles)));
            Some(q)
        }
        None => None,
    };
    let inputs = input_echo(&echo);
    let (mut fields, code) = match decide_endo_conjugate(&o, &t, supplied.as_ref(), depth)? {
        EndoConjugate::Conjugate { witness, report } => (
            vec![
                ("decision", json!("conjugate")),
                ("witness", io::witness_to_value(&witness, &roles)),
                ("verification", io::report_to_value(&report)),
            ],
            EXIT_OK,
        ),
        EndoConjugate::NotConjugate { reason } => (vec![("decision", json!("not conjugate")), ("reason", json!(reason))], EXIT_REFUTED),
        EndoConjugate::DepthCertified { witness, report } => (
            vec![
                ("decision", json!("conjugate to depth")),
                ("witness", io::witness_to_value(&witness, &roles)),
                ("verification", io::report_to_value(&report)),
            ],
            EXIT_UNKNOWN,
        ),
        EndoConjugate::Unknown { reason, report } => {
            let mut f = vec![("decision", json!("unknown")), ("reason", json!(reason))];
            if let Some(r) = report {
                f.push(("verification", io::report_to_value(&r)));
            }
            (f, EXIT_UNKNOWN)
        }
    };
    fields.push(("depth", json!(depth)));
    Ok((report("endo-conjugate", inputs, fields), code))
}

fn parse_rank_vector(text: &str, path: &Path) -> std::result::Result<RankVector, InputError> {
    let v = with_path(path, io::parse_json(text))?;
    with_path(path, io::check_version(&v))?;
    let bad = |msg: &str| InputError(format!("{}: {msg}", path.display()));
    let ranks = v.get("ranks").and_then(Value::as_object).ok_or_else(|| bad("expected {\"ranks\": {\"<rank>\": \"<scalar>\"}}"))?;
    let mut out = RankVector::zero();
    for (k, z) in ranks {
        let r: u64 = k.parse().map_err(|_| bad(&format!("rank key {k:?} is not an integer")))?;
        let z: Scalar = z.as_str().ok_or_else(|| bad("coefficients are strings"))?.parse().map_err(|e: Error| bad(&e.to_string()))?;
        out.add_term(r, &z);
    }
    Ok(out)
}

fn algebra_eval(element: &Path, rep: &Path, vector: Option<&Path>) -> Outcome {
    let a = with_path(element, io::parse_algebra_element(&read(element)?))?;
    let r = load_rep(rep)?;
    if a.n() != r.n() {
        return Err(InputError(format!("element has n = {} but representation has n = {}", a.n(), r.n())));
    }
    let (xi, mut echo) = match vector {
        Some(p) => {
            let v = parse_rank_vector(&read(p)?, p)?;
            (v.clone(), vec![("vector", p, json!({ "ranks": io::rank_vector_to_value(&v) }))])
        }
        None => (RankVector::basis(0), vec![]),
    };
    echo.insert(0, ("element", element, serde_json::to_value(&a).expect("serializable")));
    echo.insert(1, ("rep", rep, io::representation_to_value(&r)));
    let result = r.to_ranks(&evaluate(&a, &r, &r.to_names(&xi)?)?)?;
    let names: Vec<Value> = result
        .iter()
        .map(|(rank, z)| Ok(json!({ "rank": rank, "name": io::name_to_value(&r.name_at(*rank)?), "coef": z.to_string() })))
        .collect::<toeplitz_core::Result<_>>()?;
    let fields = vec![("input_vector", io::rank_vector_to_value(&xi)), ("result", io::rank_vector_to_value(&result)), ("result_names", Value::Array(names))];
    Ok((report("algebra-eval", input_echo(&echo), fields), EXIT_OK))
}

fn module(action: &ModuleAction) -> Outcome {
    match action {
        ModuleAction::CheckBasis { family } => {
            let (alg, vs) = with_path(family, io::parse_module_family(&read(family)?))?;
            let ortho = check_orthonormal(&vs)?;
            let generating = ortho && vs.len() == vs[0].len() && basis_to_unitary(&vs).is_ok();
            let inputs = input_echo(&[("family", family, json!({ "algebra": alg, "vectors": vs }))]);
            let fields = vec![("orthonormal", json!(ortho)), ("basis", json!(generating))];
            Ok((report("module check-basis", inputs, fields), if ortho { EXIT_OK } else { EXIT_REFUTED }))
        }
        ModuleAction::ToUnitary { family } => {
            let (alg, vs) = with_path(family, io::parse_module_family(&read(family)?))?;
            let inputs = input_echo(&[("family", family, json!({ "algebra": alg, "vectors": vs }))]);
            match basis_to_unitary(&vs) {
                Ok(u) => Ok((report("module to-unitary", inputs, vec![("unitary", json!(u))]), EXIT_OK)),
                Err(e @ (Error::NotOrthonormal | Error::NotGenerating)) => {
                    Ok((report("module to-unitary", inputs, vec![("error", json!(e.to_string()))]), EXIT_REFUTED))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn ibn_command(args: &IbnArgs) -> Outcome {
    let (k, inputs) = match (&args.k0, &args.fd) {
        (Some(p), _) => {
            let k = with_path(p, io::parse_k0(&read(p)?))?;
            let echo = input_echo(&[("k0", p, serde_json::to_value(&k).expect("serializable"))]);
            (k, echo)
        }
        (None, Some(p)) => {
            let a = with_path(p, io::parse_fd_algebra(&read(p)?))?;
            let echo = input_echo(&[("fd", p, serde_json::to_value(&a).expect("serializable"))]);
            (fd_to_k0(&a), echo)
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let order = match unit_order(&k)? {
        UnitOrder::Finite(m) => json!(m),
        UnitOrder::Infinite => json!("infinite"),
    };
    let fields = vec![("k0", serde_json::to_value(&k).expect("serializable")), ("unit_order", order), ("ibn", json!(ibn(&k)))];
    Ok((report("ibn", inputs, fields), EXIT_OK))
}
