//! JSON documents for every object the workbench reads or writes.
//!
//! Parsing goes through [`serde_json::Value`] so that errors carry either the
//! line and column of a syntax error or the path of the offending field.
//! Documents carry an optional `format_version`, which must be 1 when
//! present and is always written on output.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::algebra::AlgebraElement;
use crate::equivalence::{FreeWitness, OperatorExpr, QuasifreeWitness, VerificationReport};
use crate::equivalence::verify::Counterexample;
use crate::endo::SparseOperator;
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::rep::{BasisName, BasisUnitary, BlockKind, Layout, Piece, PieceMap, RankVector, Representation, Selector, SelectorEntry, Split};
use crate::scalar::Scalar;
use crate::wold::WoldReport;
use crate::word::Letter;

pub const FORMAT_VERSION: u64 = 1;

/// Parses text into a JSON value; syntax errors report line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

/// Accepts a missing `format_version` or the current one.
pub fn check_version(v: &Value) -> Result<()> {
    match v.get("format_version") {
        None => Ok(()),
        Some(x) if x.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(x) => Err(Error::parse("format_version", format!("unsupported version {x}"))),
    }
}

/// Stamps an object with the current `format_version`.
pub fn document(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("format_version".into(), json!(FORMAT_VERSION));
    }
    v
}

/// Pretty-printed with a trailing newline. Object keys come out sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::parse(path, e.to_string()))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn required<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

fn only_keys(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn located<T>(r: Result<T>, path: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(path, other.to_string()),
    })
}

fn scalar_value(z: &Scalar) -> Value {
    Value::String(z.to_string())
}

fn phases_value(phases: &BTreeMap<u64, Scalar>) -> Value {
    Value::Object(phases.iter().map(|(r, z)| (r.to_string(), scalar_value(z))).collect())
}

fn phases_from(v: &Value, path: &str) -> Result<BTreeMap<u64, Scalar>> {
    let mut out = BTreeMap::new();
    for (k, z) in object(v, path)? {
        let p = format!("{path}.{k}");
        let rank: u64 = k.parse().map_err(|_| Error::parse(&p, "phase keys must be basis ranks"))?;
        out.insert(rank, typed(z, &p)?);
    }
    Ok(out)
}

// Representations and layouts.

pub fn layout_to_value(l: &Layout) -> Value {
    json!({ "n": l.n(), "blocks": l.blocks() })
}

pub fn layout_from_value(v: &Value, path: &str) -> Result<Layout> {
    let m = object(v, path)?;
    only_keys(m, &["n", "blocks"], path)?;
    let n: usize = typed(required(m, "n", path)?, &format!("{path}.n"))?;
    let blocks: Vec<BlockKind> = typed(required(m, "blocks", path)?, &format!("{path}.blocks"))?;
    located(Layout::new(n, blocks), path)
}

pub fn representation_to_value(rep: &Representation) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(rep.n()));
    m.insert("blocks".into(), json!(rep.blocks()));
    if let Some(t) = rep.twist() {
        m.insert("twist".into(), json!(t));
    }
    if !rep.conj_phases().is_empty() {
        m.insert("conj".into(), json!({ "phases": phases_value(rep.conj_phases()) }));
    }
    Value::Object(m)
}

pub fn representation_from_value(v: &Value, path: &str) -> Result<Representation> {
    let m = object(v, path)?;
    only_keys(m, &["format_version", "n", "blocks", "twist", "conj"], path)?;
    let n: usize = typed(required(m, "n", path)?, &format!("{path}.n"))?;
    let blocks: Vec<BlockKind> = typed(required(m, "blocks", path)?, &format!("{path}.blocks"))?;
    let mut rep = located(Representation::new(n, blocks), &format!("{path}.blocks"))?;
    if let Some(t) = m.get("twist") {
        let p = format!("{path}.twist");
        let twist: ScalarMatrix = typed(t, &p)?;
        rep = located(rep.with_twist(twist), &p)?;
    }
    if let Some(c) = m.get("conj") {
        let p = format!("{path}.conj");
        let cm = object(c, &p)?;
        only_keys(cm, &["phases"], &p)?;
        let phases = phases_from(required(cm, "phases", &p)?, &format!("{p}.phases"))?;
        rep = located(rep.with_conj(phases), &p)?;
    }
    Ok(rep)
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    let v = parse_json(text)?;
    check_version(&v)?;
    representation_from_value(&v, "$")
}

pub fn serialize_representation(rep: &Representation) -> String {
    render(&document(representation_to_value(rep)))
}

// Basis unitaries.

fn selector_value(s: &Selector) -> Value {
    Value::Array(
        s.0.iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("block".into(), json!(e.block));
                m.insert("min_depth".into(), json!(e.min_depth));
                if let Some(d) = e.max_depth {
                    m.insert("max_depth".into(), json!(d));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

fn selector_from(v: &Value, path: &str) -> Result<Selector> {
    let mut entries = Vec::new();
    for (i, e) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let m = object(e, &p)?;
        only_keys(m, &["block", "min_depth", "max_depth"], &p)?;
        entries.push(SelectorEntry {
            block: typed(required(m, "block", &p)?, &format!("{p}.block"))?,
            min_depth: m.get("min_depth").map(|d| typed(d, &format!("{p}.min_depth"))).transpose()?.unwrap_or(0),
            max_depth: m.get("max_depth").map(|d| typed(d, &format!("{p}.max_depth"))).transpose()?,
        });
    }
    Ok(Selector(entries))
}

fn split_value(s: &Split) -> Value {
    json!({ "left": layout_to_value(&s.left), "right": layout_to_value(&s.right) })
}

fn split_from(v: &Value, path: &str) -> Result<Split> {
    let m = object(v, path)?;
    only_keys(m, &["left", "right"], path)?;
    let left = layout_from_value(required(m, "left", path)?, &format!("{path}.left"))?;
    let right = layout_from_value(required(m, "right", path)?, &format!("{path}.right"))?;
    located(Split::new(left, right), path)
}

pub fn basis_unitary_to_value(w: &BasisUnitary) -> Value {
    match w {
        BasisUnitary::Relabel(r) => {
            let mut m = Map::new();
            m.insert("phases".into(), phases_value(r.phases()));
            if let Some(map) = r.piece_map() {
                let pieces: Vec<Value> =
                    map.pieces.iter().map(|p| json!({ "source": selector_value(&p.source), "target": selector_value(&p.target) })).collect();
                m.insert(
                    "map".into(),
                    json!({ "source": layout_to_value(&map.source), "target": layout_to_value(&map.target), "pieces": pieces }),
                );
            }
            Value::Object(m)
        }
        BasisUnitary::Compose(fs) => json!({ "compose": fs.iter().map(basis_unitary_to_value).collect::<Vec<_>>() }),
        BasisUnitary::Sum { left, right, domain, codomain } => json!({ "sum": {
            "left": basis_unitary_to_value(left),
            "right": basis_unitary_to_value(right),
            "domain": split_value(domain),
            "codomain": split_value(codomain),
        }}),
    }
}

pub fn basis_unitary_from_value(v: &Value, path: &str) -> Result<BasisUnitary> {
    let m = object(v, path)?;
    if let Some(fs) = m.get("compose") {
        only_keys(m, &["compose"], path)?;
        let p = format!("{path}.compose");
        let factors = array(fs, &p)?.iter().enumerate().map(|(i, f)| basis_unitary_from_value(f, &format!("{p}[{i}]"))).collect::<Result<_>>()?;
        return Ok(BasisUnitary::compose(factors));
    }
    if let Some(s) = m.get("sum") {
        only_keys(m, &["sum"], path)?;
        let p = format!("{path}.sum");
        let sm = object(s, &p)?;
        only_keys(sm, &["left", "right", "domain", "codomain"], &p)?;
        let left = basis_unitary_from_value(required(sm, "left", &p)?, &format!("{p}.left"))?;
        let right = basis_unitary_from_value(required(sm, "right", &p)?, &format!("{p}.right"))?;
        let domain = split_from(required(sm, "domain", &p)?, &format!("{p}.domain"))?;
        let codomain = split_from(required(sm, "codomain", &p)?, &format!("{p}.codomain"))?;
        return located(BasisUnitary::direct_sum(left, right, domain, codomain), &p);
    }
    only_keys(m, &["phases", "map"], path)?;
    let phases = match m.get("phases") {
        Some(ph) => phases_from(ph, &format!("{path}.phases"))?,
        None => BTreeMap::new(),
    };
    match m.get("map") {
        None => located(BasisUnitary::phases(phases), path),
        Some(mv) => {
            let p = format!("{path}.map");
            let mm = object(mv, &p)?;
            only_keys(mm, &["source", "target", "pieces"], &p)?;
            let source = layout_from_value(required(mm, "source", &p)?, &format!("{p}.source"))?;
            let target = layout_from_value(required(mm, "target", &p)?, &format!("{p}.target"))?;
            let pp = format!("{p}.pieces");
            let mut pieces = Vec::new();
            for (i, pv) in array(required(mm, "pieces", &p)?, &pp)?.iter().enumerate() {
                let q = format!("{pp}[{i}]");
                let pm = object(pv, &q)?;
                only_keys(pm, &["source", "target"], &q)?;
                pieces.push(Piece {
                    source: selector_from(required(pm, "source", &q)?, &format!("{q}.source"))?,
                    target: selector_from(required(pm, "target", &q)?, &format!("{q}.target"))?,
                });
            }
            let map = located(PieceMap::new(source, target, pieces), &p)?;
            located(BasisUnitary::relabel(map, phases), path)
        }
    }
}

// Operator expressions and witnesses.

/// Representations an expression may refer to by name, such as `omega` and `tau`.
#[derive(Clone, Debug, Default)]
pub struct Roles {
    entries: Vec<(String, Arc<Representation>)>,
}

impl Roles {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, rep: Arc<Representation>) -> Self {
        self.entries.push((name.to_string(), rep));
        self
    }

    /// The usual pair for a witness from `τ` to `ω`.
    pub fn pair(omega: &Arc<Representation>, tau: &Arc<Representation>) -> Self {
        Self::new().with("omega", omega.clone()).with("tau", tau.clone())
    }

    fn name_of(&self, rep: &Arc<Representation>) -> Option<&str> {
        self.entries
            .iter()
            .find(|(_, r)| Arc::ptr_eq(r, rep))
            .or_else(|| self.entries.iter().find(|(_, r)| **r == **rep))
            .map(|(n, _)| n.as_str())
    }

    fn lookup(&self, name: &str) -> Option<&Arc<Representation>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

fn generator_value(rep: &Arc<Representation>, i: Letter, roles: &Roles) -> Value {
    let r = match roles.name_of(rep) {
        Some(name) => Value::String(name.to_string()),
        None => representation_to_value(rep),
    };
    json!({ "rep": r, "i": i })
}

pub fn expr_to_value(e: &OperatorExpr, roles: &Roles) -> Value {
    match e {
        OperatorExpr::Scalar(z) => scalar_value(z),
        OperatorExpr::Gen(r, i) => json!({ "gen": generator_value(r, *i, roles) }),
        OperatorExpr::GenAdj(r, i) => json!({ "genAdj": generator_value(r, *i, roles) }),
        OperatorExpr::BasisU(w) => json!({ "basis": basis_unitary_to_value(w) }),
        OperatorExpr::BasisUAdj(w) => json!({ "basisAdj": basis_unitary_to_value(w) }),
        OperatorExpr::Sum(ts) => json!({ "sum": ts.iter().map(|t| expr_to_value(t, roles)).collect::<Vec<_>>() }),
        OperatorExpr::Product(fs) => json!({ "prod": fs.iter().map(|f| expr_to_value(f, roles)).collect::<Vec<_>>() }),
        OperatorExpr::DirectSum { left, right, domain, codomain } => json!({ "dsum": {
            "left": expr_to_value(left, roles),
            "right": expr_to_value(right, roles),
            "domain": split_value(domain),
            "codomain": split_value(codomain),
        }}),
    }
}

fn generator_from(v: &Value, roles: &Roles, path: &str) -> Result<(Arc<Representation>, Letter)> {
    let m = object(v, path)?;
    only_keys(m, &["rep", "i"], path)?;
    let rp = format!("{path}.rep");
    let rep = match required(m, "rep", path)? {
        Value::String(name) => roles.lookup(name).cloned().ok_or_else(|| Error::parse(&rp, format!("unknown representation role {name:?}")))?,
        inline => Arc::new(representation_from_value(inline, &rp)?),
    };
    let i: Letter = typed(required(m, "i", path)?, &format!("{path}.i"))?;
    located(crate::word::check_letter(i, rep.n()), &format!("{path}.i"))?;
    Ok((rep, i))
}

fn exprs_from(v: &Value, roles: &Roles, path: &str) -> Result<Vec<OperatorExpr>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| expr_from_value(x, roles, &format!("{path}[{i}]"))).collect()
}

/// Reads an expression tree. A bare string is a scalar.
pub fn expr_from_value(v: &Value, roles: &Roles, path: &str) -> Result<OperatorExpr> {
    if v.is_string() {
        return Ok(OperatorExpr::Scalar(typed(v, path)?));
    }
    let m = object(v, path)?;
    if m.len() != 1 {
        return Err(Error::parse(path, "an expression node has exactly one key"));
    }
    let (key, body) = m.iter().next().expect("one key");
    let p = format!("{path}.{key}");
    Ok(match key.as_str() {
        "scalar" => OperatorExpr::Scalar(typed(body, &p)?),
        "gen" => {
            let (r, i) = generator_from(body, roles, &p)?;
            OperatorExpr::Gen(r, i)
        }
        "genAdj" => {
            let (r, i) = generator_from(body, roles, &p)?;
            OperatorExpr::GenAdj(r, i)
        }
        "basis" => OperatorExpr::BasisU(Arc::new(basis_unitary_from_value(body, &p)?)),
        "basisAdj" => OperatorExpr::BasisUAdj(Arc::new(basis_unitary_from_value(body, &p)?)),
        "sum" => OperatorExpr::Sum(exprs_from(body, roles, &p)?),
        "prod" => OperatorExpr::Product(exprs_from(body, roles, &p)?),
        "dsum" => {
            let dm = object(body, &p)?;
            only_keys(dm, &["left", "right", "domain", "codomain"], &p)?;
            OperatorExpr::direct_sum(
                expr_from_value(required(dm, "left", &p)?, roles, &format!("{p}.left"))?,
                expr_from_value(required(dm, "right", &p)?, roles, &format!("{p}.right"))?,
                split_from(required(dm, "domain", &p)?, &format!("{p}.domain"))?,
                split_from(required(dm, "codomain", &p)?, &format!("{p}.codomain"))?,
            )
        }
        other => return Err(Error::parse(path, format!("unknown expression node {other:?}"))),
    })
}

pub fn free_witness_to_value(u: &FreeWitness, roles: &Roles) -> Value {
    match u.scalar_matrix() {
        Some(m) => json!({ "flavor": "scalar", "entries": m }),
        None => json!({
            "flavor": "bounded",
            "entries": u.entries().iter().map(|row| row.iter().map(|e| expr_to_value(e, roles)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

pub fn free_witness_from_value(v: &Value, roles: &Roles, path: &str) -> Result<FreeWitness> {
    let m = object(v, path)?;
    only_keys(m, &["flavor", "entries"], path)?;
    let flavor = m.get("flavor").and_then(Value::as_str).unwrap_or("bounded");
    let ep = format!("{path}.entries");
    let entries = required(m, "entries", path)?;
    match flavor {
        "scalar" => {
            let matrix: ScalarMatrix = typed(entries, &ep)?;
            located(FreeWitness::from_matrix(&matrix), &ep)
        }
        "bounded" => {
            let rows = array(entries, &ep)?
                .iter()
                .enumerate()
                .map(|(r, row)| exprs_from(row, roles, &format!("{ep}[{r}]")))
                .collect::<Result<Vec<_>>>()?;
            located(FreeWitness::from_entries(rows), &ep)
        }
        other => Err(Error::parse(format!("{path}.flavor"), format!("unknown flavor {other:?}"))),
    }
}

/// `{"W": …, "U": …}`; `W` is omitted when it is the identity.
pub fn witness_to_value(q: &QuasifreeWitness, roles: &Roles) -> Value {
    let mut m = Map::new();
    if !q.w.is_identity() {
        m.insert("W".into(), basis_unitary_to_value(&q.w));
    }
    m.insert("U".into(), free_witness_to_value(&q.u, roles));
    Value::Object(m)
}

pub fn witness_from_value(v: &Value, roles: &Roles, path: &str) -> Result<QuasifreeWitness> {
    let m = object(v, path)?;
    only_keys(m, &["format_version", "W", "U"], path)?;
    let w = match m.get("W") {
        Some(w) => basis_unitary_from_value(w, &format!("{path}.W"))?,
        None => BasisUnitary::identity(),
    };
    let u = free_witness_from_value(required(m, "U", path)?, roles, &format!("{path}.U"))?;
    Ok(QuasifreeWitness::new(w, u))
}

pub fn parse_witness(text: &str, roles: &Roles) -> Result<QuasifreeWitness> {
    let v = parse_json(text)?;
    check_version(&v)?;
    witness_from_value(&v, roles, "$")
}

pub fn serialize_witness(q: &QuasifreeWitness, roles: &Roles) -> String {
    render(&document(witness_to_value(q, roles)))
}

/// A single operator `X`, written as an expression document `{"expr": …}`.
pub fn parse_operator(text: &str, roles: &Roles) -> Result<OperatorExpr> {
    let v = parse_json(text)?;
    check_version(&v)?;
    let m = object(&v, "$")?;
    only_keys(m, &["format_version", "expr"], "$")?;
    expr_from_value(required(m, "expr", "$")?, roles, "$.expr")
}

pub fn serialize_operator(x: &OperatorExpr, roles: &Roles) -> String {
    render(&document(json!({ "expr": expr_to_value(x, roles) })))
}

// Other payloads with derived formats.

fn parse_typed<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut v = parse_json(text)?;
    check_version(&v)?;
    if let Value::Object(m) = &mut v {
        m.remove("format_version");
    }
    typed(&v, "$")
}

fn serialize_typed<T: serde::Serialize>(x: &T) -> String {
    render(&document(serde_json::to_value(x).expect("values always serialize")))
}

pub fn parse_algebra_element(text: &str) -> Result<AlgebraElement> {
    parse_typed(text)
}

pub fn serialize_algebra_element(a: &AlgebraElement) -> String {
    serialize_typed(a)
}

pub fn parse_k0(text: &str) -> Result<crate::module_kit::K0Data> {
    let k: crate::module_kit::K0Data = parse_typed(text)?;
    located(k.validate(), "$")?;
    Ok(k)
}

pub fn serialize_k0(k: &crate::module_kit::K0Data) -> String {
    serialize_typed(k)
}

pub fn parse_fd_algebra(text: &str) -> Result<crate::module_kit::FDAlgebra> {
    parse_typed(text)
}

pub fn serialize_fd_algebra(a: &crate::module_kit::FDAlgebra) -> String {
    serialize_typed(a)
}

/// `{"algebra": {"blocks": …}, "vectors": [[element, …], …]}` where an
/// element is a list of square blocks.
pub fn parse_module_family(text: &str) -> Result<(crate::module_kit::FDAlgebra, Vec<crate::module_kit::ModuleVector>)> {
    use crate::module_kit::{FDAlgebra, FdElement, ModuleVector};
    let v = parse_json(text)?;
    check_version(&v)?;
    let m = object(&v, "$")?;
    only_keys(m, &["format_version", "algebra", "vectors"], "$")?;
    let alg: FDAlgebra = typed(required(m, "algebra", "$")?, "$.algebra")?;
    let mut family = Vec::new();
    for (i, x) in array(required(m, "vectors", "$")?, "$.vectors")?.iter().enumerate() {
        let p = format!("$.vectors[{i}]");
        let coords: Vec<FdElement> = typed(x, &p)?;
        for (c, e) in coords.iter().enumerate() {
            located(alg.check(e), &format!("{p}[{c}]"))?;
        }
        family.push(located(ModuleVector::new(coords), &p)?);
    }
    Ok((alg, family))
}

pub fn serialize_module_family(alg: &crate::module_kit::FDAlgebra, family: &[crate::module_kit::ModuleVector]) -> String {
    render(&document(json!({ "algebra": alg, "vectors": family })))
}

// Report fragments.

pub fn name_to_value(name: &BasisName) -> Value {
    json!({ "block": name.block, "k": name.k, "word": name.word })
}

/// `{"rank": coefficient}` in rank order.
pub fn rank_vector_to_value(v: &RankVector) -> Value {
    Value::Object(v.iter().map(|(r, z)| (r.to_string(), scalar_value(z))).collect())
}

pub fn sparse_operator_to_value(a: &SparseOperator) -> Value {
    Value::Array(a.terms().iter().map(|((k, b), z)| json!({ "ket": k, "bra": b, "coef": scalar_value(z) })).collect())
}

pub fn sparse_operator_from_value(v: &Value, path: &str) -> Result<SparseOperator> {
    let mut terms = Vec::new();
    for (i, t) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let m = object(t, &p)?;
        only_keys(m, &["ket", "bra", "coef"], &p)?;
        terms.push((
            typed(required(m, "ket", &p)?, &format!("{p}.ket"))?,
            typed(required(m, "bra", &p)?, &format!("{p}.bra"))?,
            typed(required(m, "coef", &p)?, &format!("{p}.coef"))?,
        ));
    }
    Ok(SparseOperator::from_terms(terms))
}

pub fn counterexample_to_value(c: &Counterexample) -> Value {
    json!({
        "check": c.check,
        "index": c.index,
        "rank": c.rank,
        "name": c.name.as_ref().map(name_to_value),
        "lhs": rank_vector_to_value(&c.lhs),
        "rhs": rank_vector_to_value(&c.rhs),
    })
}

pub fn report_to_value(r: &VerificationReport) -> Value {
    json!({
        "passed": r.passed(),
        "verified_depth": r.verified_depth,
        "checks": r.checks.iter().map(|c| json!({ "name": c.name, "basis_count": c.basis_count, "pass": c.pass })).collect::<Vec<_>>(),
        "counterexample": r.counterexample.as_ref().map(counterexample_to_value),
    })
}

pub fn wold_to_value(w: &WoldReport) -> Value {
    json!({
        "multiplicity": w.multiplicity,
        "shift_blocks": w.shift_block_indices,
        "essential_blocks": w.essential_block_indices,
        "defect_basis": w.defect_names.iter().map(name_to_value).collect::<Vec<_>>(),
        "reconstruction": representation_to_value(&w.reconstruction),
        "block_map": w.block_map,
    })
}
