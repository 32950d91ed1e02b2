//! JSON artifacts. Objects use sorted keys, so equal inputs give byte-identical output.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::autos::{realize_graph, StandardAutomorphism};
use crate::decomposer::{AutomorphismSpec, DecomposeError, SpecImage, StandardCertificate};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Token};
use crate::liealg::AdjointAlgebra;
use crate::matrix::Matrix;
use crate::rings::{FiniteRing, Ring, RingMap};
use crate::roots::{DiagramSymmetry, RootSystem};

/// `{ kind, rank, roots, cartan, symmetries }`.
pub fn roots_json(sys: &RootSystem) -> Value {
    json!({
        "kind": sys.kind().letter().to_string(),
        "rank": sys.rank(),
        "roots": sys.roots(),
        "cartan": sys.cartan(),
        "symmetries": sys.diagram_symmetries().iter().map(|d| d.permutation.clone()).collect::<Vec<_>>(),
    })
}

/// Key for a root coefficient vector, e.g. `"1,1"` or `"-1,0"`.
pub fn root_key(coeffs: &[i64]) -> String {
    coeffs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Every `X_α` as a row-major integer matrix keyed by root.
pub fn adjoint_json(alg: &AdjointAlgebra) -> Value {
    let sys = alg.sys();
    let n = alg.dim();
    let matrices: BTreeMap<String, Vec<Vec<i64>>> = (0..sys.num_roots())
        .map(|a| {
            let dense = alg.adjoint_matrix(a).to_dense();
            (root_key(sys.root(a)), dense.chunks(n).map(<[i64]>::to_vec).collect())
        })
        .collect();
    json!({
        "system": sys.name(),
        "dim": n,
        "basis": (0..sys.num_roots()).map(|a| json!(sys.root(a))).chain((1..=sys.rank()).map(|i| json!(format!("h{i}")))).collect::<Vec<_>>(),
        "matrices": matrices,
    })
}

pub fn matrix_json(ring: &FiniteRing, m: &Matrix<u32>) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|&x| ring.encode(x)).collect())).collect())
}

pub fn parse_matrix(ring: &FiniteRing, v: &Value) -> Result<Matrix<u32>> {
    let rows = v.as_array().ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Json("matrix row must be an array".into()))?
                .iter()
                .map(|x| ring.decode(x))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// `{ ring, matrix, inverse, word? }`.
pub fn element_json(sys: &RootSystem, ring: &FiniteRing, g: &GroupElement<u32>) -> Value {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(ring.descriptor().to_string()));
    obj.insert("matrix".into(), matrix_json(ring, &g.matrix));
    obj.insert("inverse".into(), matrix_json(ring, &g.inverse));
    if let Some(w) = &g.word {
        let word: Vec<Value> = w.iter().map(|t| json!({ "root": sys.root(t.root), "param": ring.encode(t.param) })).collect();
        obj.insert("word".into(), Value::Array(word));
    }
    Value::Object(obj)
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing field {key:?}")))
}

fn parse_root(sys: &RootSystem, v: &Value) -> Result<usize> {
    let coeffs: Vec<i64> = serde_json::from_value(v.clone())?;
    sys.require(&coeffs)
}

pub fn parse_element(sys: &RootSystem, ring: &FiniteRing, v: &Value) -> Result<GroupElement<u32>> {
    let matrix = parse_matrix(ring, field(v, "matrix")?)?;
    let inverse = match v.get("inverse") {
        Some(inv) => parse_matrix(ring, inv)?,
        None => crate::linalg::invert(ring, &matrix).ok_or_else(|| Error::NotInvertible("group element".into()))?,
    };
    let word = match v.get("word") {
        Some(Value::Array(ts)) => Some(
            ts.iter()
                .map(|t| Ok(Token { root: parse_root(sys, field(t, "root")?)?, param: ring.decode(field(t, "param")?)? }))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    if !matrix.mul(ring, &inverse).is_identity(ring) {
        return Err(Error::NotInvertible("stored inverse is wrong".into()));
    }
    Ok(GroupElement { matrix, inverse, word })
}

fn ring_map_json(map: &RingMap) -> Value {
    let r = &map.source;
    json!({
        "generators": r.spanning_parameters().iter().map(|&t| json!([r.encode(t), r.encode(map.apply(t))])).collect::<Vec<_>>(),
        "table": map.table.iter().map(|&x| r.encode(x)).collect::<Vec<_>>(),
    })
}

/// `{ kind: "ring" | "inner" | "graph" | "central" | "compose", ... }`.
pub fn automorphism_json(sys: &RootSystem, ring: &FiniteRing, auto: &StandardAutomorphism) -> Value {
    match auto {
        StandardAutomorphism::Ring(map) => {
            let mut v = ring_map_json(map);
            v["kind"] = json!("ring");
            v
        }
        StandardAutomorphism::Inner(g) => json!({ "kind": "inner", "conjugator": element_json(sys, ring, g) }),
        StandardAutomorphism::Graph(data) => json!({
            "kind": "graph",
            "symmetries": data.terms.iter().map(|t| t.symmetry.permutation.clone()).collect::<Vec<_>>(),
            "idempotents": data.terms.iter().map(|t| ring.encode(t.idempotent)).collect::<Vec<_>>(),
            "signs": data.terms.iter().map(|t| t.signs.clone()).collect::<Vec<_>>(),
        }),
        StandardAutomorphism::Central { note } => json!({ "kind": "central", "note": note }),
        StandardAutomorphism::Compose(parts) => json!({
            "kind": "compose",
            "parts": parts.iter().map(|p| automorphism_json(sys, ring, p)).collect::<Vec<_>>(),
        }),
    }
}

pub fn parse_automorphism(alg: &AdjointAlgebra, ring: &FiniteRing, v: &Value) -> Result<StandardAutomorphism> {
    let sys = alg.sys();
    let kind = field(v, "kind")?.as_str().ok_or_else(|| Error::Json("kind must be a string".into()))?;
    match kind {
        "ring" => {
            // values on the spanning parameters determine the map additively
            let pairs: Vec<(u32, u32)> = field(v, "generators")?
                .as_array()
                .ok_or_else(|| Error::Json("generators must be an array".into()))?
                .iter()
                .map(|p| Ok((ring.decode(&p[0])?, ring.decode(&p[1])?)))
                .collect::<Result<_>>()?;
            let basis = ring.additive_basis();
            let image = |g: u32| pairs.iter().find(|p| p.0 == g).map(|p| p.1).ok_or_else(|| Error::Json("ring map misses a generator".into()));
            let on_gens = basis.generators.iter().map(|&g| image(g)).collect::<Result<Vec<_>>>()?;
            let table = ring
                .elements()
                .map(|x| {
                    basis.coords[x as usize].iter().zip(&on_gens).fold(ring.zero(), |acc, (&c, &y)| ring.add_raw(acc, ring.mul_raw(ring.from_i64(c as i64), y)))
                })
                .collect();
            StandardAutomorphism::ring(RingMap { source: ring.clone(), target: ring.clone(), table })
        }
        "inner" => StandardAutomorphism::inner(alg, ring, parse_element(sys, ring, field(v, "conjugator")?)?),
        "graph" => {
            let syms: Vec<Vec<usize>> = serde_json::from_value(field(v, "symmetries")?.clone())?;
            let idems = field(v, "idempotents")?.as_array().ok_or_else(|| Error::Json("idempotents must be an array".into()))?;
            if syms.len() != idems.len() {
                return Err(Error::Json("one idempotent per symmetry".into()));
            }
            let terms = syms
                .into_iter()
                .zip(idems)
                .map(|(p, e)| Ok((DiagramSymmetry { permutation: p }, ring.decode(e)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(StandardAutomorphism::Graph(realize_graph(alg, ring, &terms)?))
        }
        "central" => Ok(StandardAutomorphism::central()),
        "compose" => Ok(StandardAutomorphism::Compose(
            field(v, "parts")?
                .as_array()
                .ok_or_else(|| Error::Json("parts must be an array".into()))?
                .iter()
                .map(|p| parse_automorphism(alg, ring, p))
                .collect::<Result<_>>()?,
        )),
        other => Err(Error::Json(format!("unknown automorphism kind {other:?}"))),
    }
}

/// `{ system, ring, images: [{ root, param, matrix, inverse? }] }`.
pub fn spec_json(sys: &RootSystem, spec: &AutomorphismSpec) -> Value {
    let r = &spec.ring;
    let images: Vec<Value> = spec
        .images
        .iter()
        .map(|(&(a, t), img)| {
            let mut o = Map::new();
            o.insert("root".into(), json!(sys.root(a)));
            o.insert("param".into(), r.encode(t));
            o.insert("matrix".into(), matrix_json(r, &img.matrix));
            if let Some(inv) = &img.inverse {
                o.insert("inverse".into(), matrix_json(r, inv));
            }
            Value::Object(o)
        })
        .collect();
    json!({ "system": spec.system, "ring": r.descriptor().to_string(), "images": images })
}

pub fn parse_spec(v: &Value) -> Result<AutomorphismSpec> {
    let system = field(v, "system")?.as_str().ok_or_else(|| Error::Json("system must be a string".into()))?;
    let sys = RootSystem::parse(system)?;
    let ring = FiniteRing::parse(field(v, "ring")?.as_str().ok_or_else(|| Error::Json("ring must be a string".into()))?)?;
    let mut images = BTreeMap::new();
    for img in field(v, "images")?.as_array().ok_or_else(|| Error::Json("images must be an array".into()))? {
        let a = parse_root(&sys, field(img, "root")?)?;
        let t = ring.decode(field(img, "param")?)?;
        let matrix = parse_matrix(&ring, field(img, "matrix")?)?;
        let inverse = img.get("inverse").map(|m| parse_matrix(&ring, m)).transpose()?;
        if images.insert((a, t), SpecImage { matrix, inverse }).is_some() {
            return Err(Error::Json(format!("duplicate image for root {:?}", sys.root(a))));
        }
    }
    Ok(AutomorphismSpec { system: sys.name(), ring, images })
}

pub fn certificate_json(sys: &RootSystem, cert: &StandardCertificate) -> Value {
    let r = &cert.ring;
    json!({
        "system": cert.system,
        "ring": r.descriptor().to_string(),
        "graph": automorphism_json(sys, r, &StandardAutomorphism::Graph(cert.graph.clone())),
        "conjugator": element_json(sys, r, &cert.conjugator),
        "ring_map": ring_map_json(&cert.ring_map),
        "central": StandardAutomorphism::central_note(),
        "factors": cert.factors.iter().map(|f| json!({
            "ring": f.ring,
            "symmetry": f.symmetry.permutation,
            "method": f.method,
            "equations": f.equations,
        })).collect::<Vec<_>>(),
        "kernel_transport": cert.transport,
        "replay": { "checked": cert.replayed, "exact": true },
    })
}

pub fn failure_json(err: &DecomposeError) -> Value {
    json!({ "stage": err.stage.name(), "error": err.message, "witness": err.witness })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
