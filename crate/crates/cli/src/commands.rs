//! Command implementations. Each returns a JSON report and an exit status;
//! printing is left to the binary.

use std::path::Path;

use hopfweave::{
    char_poly, common_stabilization, decompose_knot_class, decompose_link_class,
    euler_divisibility, gk_class, homological_monodromy, obstruction_class, relative_framing,
    stable_equivalence, verify_certificate_with_cap, HopfError, IntMatrix, InvariantReport,
    LaurentPolynomial, ManifoldModel, OpenBookClass, PlaneFieldClass, PlumbingTree, SearchConfig,
    SearchOutcome, StabilizationCertificate, DEFAULT_MU_CAP,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{elaborate, parse_expr, ParseError};

pub const MU_CAP_ENV: &str = "HOPFWEAVE_MU_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] HopfError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Usage, parse and input errors all exit with 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { json, code: 0 }
    }

    fn verdict(json: Value, success: bool) -> Self {
        Self {
            json,
            code: if success { 0 } else { 1 },
        }
    }
}

/// Canonicalization cap, from `HOPFWEAVE_MU_CAP` when set.
pub fn mu_cap_from_env() -> CliResult<usize> {
    match std::env::var(MU_CAP_ENV) {
        Err(_) => Ok(DEFAULT_MU_CAP),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{MU_CAP_ENV}={v:?} is not a nonnegative integer"))
        }),
    }
}

pub fn tree_of(text: &str) -> CliResult<PlumbingTree> {
    Ok(elaborate(&parse_expr(text)?)?)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_manifold(path: Option<&Path>) -> CliResult<ManifoldModel> {
    match path {
        None => Ok(ManifoldModel::sphere()),
        Some(p) => Ok(ManifoldModel::from_json(&read(p)?)?),
    }
}

fn load_field(manifold: &ManifoldModel, path: Option<&Path>) -> CliResult<PlaneFieldClass> {
    match path {
        None => Ok(manifold.reference_field()),
        Some(p) => Ok(PlaneFieldClass::from_json(manifold, &read(p)?)?),
    }
}

pub fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| bigs(m.row(i))).collect())
}

fn poly_json(p: &LaurentPolynomial) -> Value {
    json!({ "text": p.to_string(), "coeffs": bigs(&p.dense()), "low": p.min_exp().unwrap_or(0) })
}

fn tree_json(t: &PlumbingTree) -> Value {
    serde_json::to_value(t).expect("tree serializes")
}

fn field_json(f: &PlaneFieldClass) -> Value {
    serde_json::from_str(&f.to_json()).expect("chart is JSON")
}

pub fn report_json(r: &InvariantReport) -> Value {
    let fp = &r.fingerprint;
    json!({
        "mu": r.mu,
        "lambda": r.lambda,
        "alexander": poly_json(&r.alexander),
        "sigma": r.sigma,
        "det_v": big(&r.det_v),
        "fingerprint": {
            "mu": fp.mu,
            "lambda": fp.lambda,
            "alexander": fp.alexander.to_string(),
            "sigma": fp.sigma,
            "smith_symmetrized": bigs(&fp.smith_symmetrized),
            "smith_monodromy": bigs(&fp.smith_monodromy),
        },
    })
}

pub fn invariants(expr: &str) -> CliResult<Report> {
    let t = tree_of(expr)?;
    let mut out = report_json(&t.invariants());
    out["expr"] = json!(expr);
    out["tree"] = tree_json(&t);
    out["seifert"] = matrix_json(&t.seifert_matrix());
    Ok(Report::ok(out))
}

pub fn gk(expr: &str) -> CliResult<Report> {
    let t = tree_of(expr)?;
    let g = gk_class(&t);
    let link = decompose_link_class(g);
    let knot = match decompose_knot_class(g) {
        Ok(k) => json!({ "trefoil": k.trefoil, "figure_eight": k.figure_eight }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(Report::ok(json!({
        "expr": expr,
        "mu": g.mu,
        "lambda": g.lambda,
        "link_basis": { "hopf_positive": link.hopf_positive, "hopf_negative": link.hopf_negative },
        "knot_basis": knot,
    })))
}

/// Smallest `k ≤ limit` with `h^k = I`.
fn finite_order(h: &IntMatrix, limit: u32) -> CliResult<Option<u32>> {
    let id = IntMatrix::identity(h.rows());
    let mut acc = h.clone();
    for k in 1..=limit {
        if acc == id {
            return Ok(Some(k));
        }
        acc = acc.mul(h)?;
    }
    Ok(None)
}

pub fn monodromy(expr: &str) -> CliResult<Report> {
    let t = tree_of(expr)?;
    let v = t.seifert_matrix();
    let h = homological_monodromy(&v)?;
    let ch = char_poly(&h)?;
    Ok(Report::ok(json!({
        "expr": expr,
        "seifert": matrix_json(&v),
        "monodromy": matrix_json(&h),
        "char_poly": poly_json(&ch),
        "alexander": poly_json(&t.invariants().alexander),
        "finite_order": finite_order(&h, 120)?,
    })))
}

pub fn field(expr: &str, manifold: Option<&Path>, base: Option<&Path>) -> CliResult<Report> {
    let t = tree_of(expr)?;
    let m = load_manifold(manifold)?;
    let book = OpenBookClass::over(load_field(&m, base)?, t);
    Ok(Report::ok(json!({
        "expr": expr,
        "manifold": serde_json::to_value(&m).expect("model serializes"),
        "field": field_json(&book.field),
        "euler_divisibility": euler_divisibility(&book.field),
    })))
}

pub fn equiv(
    a: &str,
    b: &str,
    manifold: Option<&Path>,
    base_a: Option<&Path>,
    base_b: Option<&Path>,
) -> CliResult<Report> {
    let m = load_manifold(manifold)?;
    let x = OpenBookClass::over(load_field(&m, base_a)?, tree_of(a)?);
    let y = OpenBookClass::over(load_field(&m, base_b)?, tree_of(b)?);
    let verdict = stable_equivalence(&x, &y)?;
    let obstruction = obstruction_class(&x.field, &y.field)?;
    let framing = if verdict.equivalent {
        let d = relative_framing(&x.field, &y.field)?;
        json!({ "value": d.value, "modulus": d.modulus })
    } else {
        Value::Null
    };
    let mut out = json!({
        "equivalent": verdict.equivalent,
        "obstruction": obstruction.coeffs(),
        "relative_framing": framing,
    });
    if let Some(budget) = verdict.hminus_budget {
        out["hminus_budget"] = json!(budget);
    }
    Ok(Report::verdict(out, verdict.equivalent))
}

pub fn search(a: &str, b: &str, depth: usize, coord_bound: u32) -> CliResult<Report> {
    let cfg = SearchConfig {
        max_moves_per_side: depth,
        coord_bound,
        mu_cap: mu_cap_from_env()?,
        ..SearchConfig::default()
    };
    match common_stabilization(&tree_of(a)?, &tree_of(b)?, &cfg)? {
        SearchOutcome::Found(cert) => {
            let json = serde_json::from_str(&cert.to_json()).expect("certificate is JSON");
            Ok(Report::ok(json))
        }
        SearchOutcome::Exhausted { sequences } => Ok(Report::verdict(
            json!({ "exhausted": true, "depth": depth, "coord_bound": coord_bound, "sequences": sequences }),
            false,
        )),
    }
}

pub fn verify(a: &str, b: &str, cert: &Path) -> CliResult<Report> {
    let cert = StabilizationCertificate::from_json(&read(cert)?)?;
    let ok = verify_certificate_with_cap(&tree_of(a)?, &tree_of(b)?, &cert, mu_cap_from_env()?);
    Ok(Report::verdict(json!({ "valid": ok }), ok))
}

/// Plain two-column rendering of a report for `--pretty`.
pub fn table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, rows);
                }
            }
            other => rows.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, x)| format!("{k:<width$}  {x}\n"))
        .collect()
}
