//! JSON input documents.
//!
//! Every error names the offending field by its path in the document, e.g.
//! `page.dims[1]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use openbook_core::{
    ActionEvidence, BrieskornExponents, GradedRanks, MonodromyHypothesis, OpenBookSpec, SpaceModel,
    VariationMatrix, Wedge,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    fn new(field: &str, message: impl Into<String>) -> Self {
        InputError {
            field: if field.is_empty() {
                "<document>".into()
            } else {
                field.into()
            },
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for InputError {}

type Result<T> = std::result::Result<T, InputError>;

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| InputError::new("", format!("invalid JSON: {e}")))
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| InputError::new(path, "expected a JSON object"))
}

fn only_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(InputError::new(&join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| InputError::new(&join(path, key), "missing field"))
}

fn integer(value: &Value, path: &str) -> Result<BigInt> {
    match value {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| InputError::new(path, "expected an integer")),
        _ => Err(InputError::new(path, "expected an integer")),
    }
}

fn natural(value: &Value, path: &str) -> Result<BigUint> {
    let i = integer(value, path)?;
    if i.is_negative() {
        return Err(InputError::new(
            path,
            format!("must be nonnegative, got {i}"),
        ));
    }
    Ok(i.magnitude().clone())
}

fn small(value: &Value, path: &str, min: u64) -> Result<u64> {
    let i = integer(value, path)?;
    if i < BigInt::from(min) {
        return Err(InputError::new(
            path,
            format!("must be at least {min}, got {i}"),
        ));
    }
    i.to_u64()
        .ok_or_else(|| InputError::new(path, format!("value {i} is too large")))
}

fn dimension(value: &Value, path: &str) -> Result<usize> {
    let d = small(value, path, 1)?;
    usize::try_from(d)
        .ok()
        .filter(|&d| d <= u32::MAX as usize)
        .ok_or_else(|| InputError::new(path, format!("dimension {d} is too large")))
}

fn boolean(value: &Value, path: &str) -> Result<bool> {
    value
        .as_bool()
        .ok_or_else(|| InputError::new(path, "expected true or false"))
}

fn string<'a>(value: &'a Value, path: &str) -> Result<&'a str> {
    value
        .as_str()
        .ok_or_else(|| InputError::new(path, "expected a string"))
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

/// A `{"degree": rank, ...}` object. Degrees must be at least `min_degree`.
pub fn parse_ranks(value: &Value, path: &str, min_degree: usize) -> Result<GradedRanks> {
    let obj = object(value, path)?;
    let mut ranks = GradedRanks::new();
    for (key, v) in obj {
        let field = join(path, key);
        let degree: usize = key
            .parse()
            .map_err(|_| InputError::new(&field, "degree keys must be positive integers"))?;
        if degree < min_degree {
            return Err(InputError::new(
                &field,
                format!("degree must be at least {min_degree}"),
            ));
        }
        let rank = natural(v, &field)?;
        ranks.add_rank(degree, &rank);
    }
    Ok(ranks)
}

/// A space document: `{"kind": "contractible" | "sphere" | "wedge" |
/// "elliptic_ranks", ...}`. Singleton wedges come back as spheres.
pub fn parse_space_model(value: &Value, path: &str) -> Result<SpaceModel> {
    let obj = object(value, path)?;
    let kind_path = join(path, "kind");
    let kind = string(required(obj, path, "kind")?, &kind_path)?;
    match kind {
        "contractible" => {
            only_keys(obj, path, &["kind"])?;
            Ok(SpaceModel::Contractible)
        }
        "sphere" => {
            only_keys(obj, path, &["kind", "dim"])?;
            let dim = dimension(required(obj, path, "dim")?, &join(path, "dim"))?;
            Ok(SpaceModel::Sphere(dim))
        }
        "wedge" => {
            only_keys(obj, path, &["kind", "dims"])?;
            let dims_path = join(path, "dims");
            let items = array(required(obj, path, "dims")?, &dims_path)?;
            if items.is_empty() {
                return Err(InputError::new(
                    &dims_path,
                    "a wedge needs at least one sphere",
                ));
            }
            let dims = items
                .iter()
                .enumerate()
                .map(|(i, v)| dimension(v, &format!("{dims_path}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(SpaceModel::WedgeOfSpheres(Wedge::from_dims(dims)).normalized())
        }
        "elliptic_ranks" => {
            only_keys(obj, path, &["kind", "ranks"])?;
            let ranks = parse_ranks(required(obj, path, "ranks")?, &join(path, "ranks"), 2)?;
            Ok(SpaceModel::EllipticRanks(ranks))
        }
        other => Err(InputError::new(
            &kind_path,
            format!(
                "unknown kind {other:?}; expected contractible, sphere, wedge or elliptic_ranks"
            ),
        )),
    }
}

/// Absent monodromy means unverified.
pub fn parse_monodromy(value: Option<&Value>, path: &str) -> Result<MonodromyHypothesis> {
    let Some(value) = value else {
        return Ok(MonodromyHypothesis::Unverified);
    };
    let obj = object(value, path)?;
    let kind_path = join(path, "kind");
    match string(required(obj, path, "kind")?, &kind_path)? {
        "identity_on_rational_homotopy" => {
            only_keys(obj, path, &["kind"])?;
            Ok(MonodromyHypothesis::IdentityOnRationalHomotopy)
        }
        "unverified" => {
            only_keys(obj, path, &["kind"])?;
            Ok(MonodromyHypothesis::Unverified)
        }
        "finite_order" => {
            only_keys(obj, path, &["kind", "m", "nilpotent_action", "nilpotence_evidence"])?;
            let m = small(required(obj, path, "m")?, &join(path, "m"), 0)?;
            let nilpotent_action = boolean(
                required(obj, path, "nilpotent_action")?,
                &join(path, "nilpotent_action"),
            )?;
            let evidence_path = join(path, "nilpotence_evidence");
            let evidence = match obj.get("nilpotence_evidence") {
                None => ActionEvidence::Homotopy,
                Some(v) => match string(v, &evidence_path)? {
                    "homotopy" => ActionEvidence::Homotopy,
                    "homology" => ActionEvidence::Homology,
                    other => {
                        return Err(InputError::new(
                            &evidence_path,
                            format!("expected \"homotopy\" or \"homology\", got {other:?}"),
                        ))
                    }
                },
            };
            Ok(MonodromyHypothesis::FiniteHomotopyOrder {
                m,
                nilpotent_action,
                evidence,
            })
        }
        other => Err(InputError::new(
            &kind_path,
            format!(
                "unknown kind {other:?}; expected identity_on_rational_homotopy, finite_order or unverified"
            ),
        )),
    }
}

fn optional_model(obj: &Map<String, Value>, key: &str) -> Result<Option<SpaceModel>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => parse_space_model(v, key).map(Some),
    }
}

/// `{ambient_dim, page, fibre?, monodromy?, flags?}`. Missing flags are
/// read as not asserted.
pub fn parse_openbook(value: &Value) -> Result<OpenBookSpec> {
    let obj = object(value, "")?;
    only_keys(
        obj,
        "",
        &["ambient_dim", "page", "fibre", "monodromy", "flags"],
    )?;
    let ambient_dim = small(required(obj, "", "ambient_dim")?, "ambient_dim", 0)? as usize;
    let page = parse_space_model(required(obj, "", "page")?, "page")?;
    let fibre = optional_model(obj, "fibre")?;
    let monodromy = parse_monodromy(obj.get("monodromy"), "monodromy")?;
    let mut spec = OpenBookSpec::new(ambient_dim, page, fibre, monodromy);
    let flag_names = [
        "page_simply_connected",
        "boundary_nilpotent_connected",
        "total_simply_connected",
    ];
    let mut flags = [false; 3];
    if let Some(v) = obj.get("flags") {
        let f = object(v, "flags")?;
        only_keys(f, "flags", &flag_names)?;
        for (slot, name) in flags.iter_mut().zip(flag_names) {
            if let Some(b) = f.get(name) {
                *slot = boolean(b, &join("flags", name))?;
            }
        }
    }
    [
        spec.page_simply_connected,
        spec.boundary_nilpotent_connected,
        spec.total_simply_connected,
    ] = flags;
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BrieskornJob {
    pub exponents: BrieskornExponents,
    pub monodromy: Option<MonodromyHypothesis>,
    pub fibre: Option<SpaceModel>,
}

/// `{exponents: [...], n, monodromy?, fibre?}`.
pub fn parse_brieskorn(value: &Value) -> Result<BrieskornJob> {
    let obj = object(value, "")?;
    only_keys(obj, "", &["exponents", "n", "monodromy", "fibre"])?;
    let n = small(required(obj, "", "n")?, "n", 1)? as usize;
    let items = array(required(obj, "", "exponents")?, "exponents")?;
    if items.len() != n + 1 {
        return Err(InputError::new(
            "exponents",
            format!("expected n + 1 = {} exponents, got {}", n + 1, items.len()),
        ));
    }
    let exponents = items
        .iter()
        .enumerate()
        .map(|(i, v)| small(v, &format!("exponents[{i}]"), 2))
        .collect::<Result<Vec<_>>>()?;
    let exponents = BrieskornExponents::new(exponents, n)
        .map_err(|e| InputError::new("exponents", e.to_string()))?;
    let monodromy = match obj.get("monodromy") {
        None => None,
        Some(v) => Some(parse_monodromy(Some(v), "monodromy")?),
    };
    Ok(BrieskornJob {
        exponents,
        monodromy,
        fibre: optional_model(obj, "fibre")?,
    })
}

/// `{matrix: [[int, ...], ...]}`, square and nonempty.
pub fn parse_variation(value: &Value) -> Result<VariationMatrix> {
    let obj = object(value, "")?;
    only_keys(obj, "", &["matrix"])?;
    let rows = array(required(obj, "", "matrix")?, "matrix")?;
    if rows.is_empty() {
        return Err(InputError::new(
            "matrix",
            "matrix must have at least one row",
        ));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let path = format!("matrix[{i}]");
        let row = array(row, &path)?;
        if row.len() != rows.len() {
            return Err(InputError::new(
                &path,
                format!(
                    "matrix must be square: row has {} entries, expected {}",
                    row.len(),
                    rows.len()
                ),
            ));
        }
        parsed.push(
            row.iter()
                .enumerate()
                .map(|(j, v)| integer(v, &format!("{path}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    VariationMatrix::new(parsed).map_err(|e| InputError::new("matrix", e.to_string()))
}

/// `{generators: {"degree": rank, ...}}`.
pub fn parse_generators(value: &Value) -> Result<GradedRanks> {
    let obj = object(value, "")?;
    only_keys(obj, "", &["generators"])?;
    parse_ranks(required(obj, "", "generators")?, "generators", 1)
}
