//! JSON, CSV and table renderings of core values.

use std::fmt::{Display, Write as _};
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use openbook_core::{
    ActionEvidence, DichotomyVerdict, GradedRanks, MonodromyHypothesis, OpenBookSpec, SpaceModel,
    Violation,
};

/// An exact JSON integer, however large.
pub fn exact_number(n: &impl Display) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn float(x: Option<f64>) -> Value {
    x.and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

pub fn ranks_json(ranks: &GradedRanks) -> Value {
    Value::Object(
        ranks
            .iter()
            .map(|(d, r)| (d.to_string(), exact_number(r)))
            .collect::<Map<_, _>>(),
    )
}

pub fn space_model_json(model: &SpaceModel) -> Value {
    match model {
        SpaceModel::Contractible => json!({"kind": "contractible"}),
        SpaceModel::Sphere(d) => json!({"kind": "sphere", "dim": d}),
        SpaceModel::WedgeOfSpheres(w) => {
            json!({"kind": "wedge", "dims": w.dims().collect::<Vec<_>>()})
        }
        SpaceModel::EllipticRanks(r) => json!({"kind": "elliptic_ranks", "ranks": ranks_json(r)}),
    }
}

pub fn monodromy_json(m: &MonodromyHypothesis) -> Value {
    match m {
        MonodromyHypothesis::IdentityOnRationalHomotopy => {
            json!({"kind": "identity_on_rational_homotopy"})
        }
        MonodromyHypothesis::FiniteHomotopyOrder {
            m,
            nilpotent_action,
            evidence,
        } => json!({
            "kind": "finite_order",
            "m": m,
            "nilpotent_action": nilpotent_action,
            "nilpotence_evidence": match evidence {
                ActionEvidence::Homotopy => "homotopy",
                ActionEvidence::Homology => "homology",
            },
        }),
        MonodromyHypothesis::Unverified => json!({"kind": "unverified"}),
    }
}

pub fn spec_json(spec: &OpenBookSpec) -> Value {
    json!({
        "ambient_dim": spec.ambient_dim,
        "page": space_model_json(&spec.page),
        "fibre": spec.fibre.as_ref().map_or(Value::Null, space_model_json),
        "monodromy": monodromy_json(&spec.monodromy),
        "flags": {
            "page_simply_connected": spec.page_simply_connected,
            "boundary_nilpotent_connected": spec.boundary_nilpotent_connected,
            "total_simply_connected": spec.total_simply_connected,
        },
    })
}

pub fn issue_json(code: &str, message: &impl Display) -> Value {
    json!({"code": code, "message": message.to_string()})
}

pub fn violation_json(v: &Violation) -> Value {
    issue_json(v.code(), v)
}

pub fn verdict_json(verdict: &DichotomyVerdict) -> Value {
    match verdict {
        DichotomyVerdict::Elliptic { l, ranks } => {
            json!({"elliptic": {"l": l, "ranks": ranks_json(ranks)}})
        }
        DichotomyVerdict::Hyperbolic { reason } => json!({"hyperbolic": {"reason": reason.code()}}),
        DichotomyVerdict::NotClassifiable { missing } => json!({
            "not_classifiable": {"missing": missing.iter().map(violation_json).collect::<Vec<_>>()}
        }),
    }
}

pub fn verdict_line(verdict: &DichotomyVerdict) -> String {
    match verdict {
        DichotomyVerdict::Elliptic { l, .. } => format!("rationally elliptic, fibre S^{l}"),
        DichotomyVerdict::Hyperbolic { reason } => {
            format!("rationally hyperbolic ({})", reason.code())
        }
        DichotomyVerdict::NotClassifiable { missing } => {
            format!("not classifiable ({} violation(s))", missing.len())
        }
    }
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

/// `header` followed by one `a,b` row per pair.
pub fn csv<A: Display, B: Display>(
    header: (&str, &str),
    rows: impl IntoIterator<Item = (A, B)>,
) -> String {
    let mut out = format!("{},{}\n", header.0, header.1);
    for (a, b) in rows {
        writeln!(out, "{a},{b}").expect("writing to a String");
    }
    out
}

/// Two right-aligned columns under a header.
pub fn table<A: Display, B: Display>(
    header: (&str, &str),
    rows: impl IntoIterator<Item = (A, B)>,
) -> String {
    let rows: Vec<(String, String)> = rows
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let w0 = rows
        .iter()
        .map(|r| r.0.len())
        .chain([header.0.len()])
        .max()
        .unwrap_or(0);
    let w1 = rows
        .iter()
        .map(|r| r.1.len())
        .chain([header.1.len()])
        .max()
        .unwrap_or(0);
    let mut out = format!("{:>w0$}  {:>w1$}\n", header.0, header.1);
    for (a, b) in rows {
        writeln!(out, "{a:>w0$}  {b:>w1$}").expect("writing to a String");
    }
    out
}

pub fn ranks_table(ranks: &GradedRanks) -> String {
    table(("degree", "rank"), ranks.iter())
}

pub fn ranks_csv(ranks: &GradedRanks) -> String {
    csv(("degree", "rank"), ranks.iter())
}
