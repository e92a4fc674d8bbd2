//! JSON / TSV / DOT renderings. Rationals are JSON integers when integral and
//! "p/q" strings otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::character::{Character, FiltrationMultiset};
use crate::crystal::{CrystalGraph, NormalizedCrystal};
use crate::path::Path;
use crate::root_data::Weight;
use crate::Q;

pub fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        json!(q.to_integer())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Coordinates on Λ_0..Λ_n, followed by the δ coefficient when the lattice has one.
pub fn weight_json(w: &Weight) -> Value {
    let mut v: Vec<Value> = w.coords().iter().map(q_json).collect();
    if w.lattice().has_delta() {
        v.push(q_json(&w.delta()));
    }
    Value::Array(v)
}

/// ϖ-coefficients of a classical weight (drops the Λ_0 and δ slots).
pub fn varpi_json(w: &Weight) -> Value {
    Value::Array(w.coords()[1..].iter().map(q_json).collect())
}

pub fn character_json(chi: &Character) -> Value {
    Value::Array(
        chi.iter()
            .map(|(w, c)| json!({ "weight": weight_json(w), "coeff": c }))
            .collect(),
    )
}

pub fn poly_json(p: &BTreeMap<i64, i64>) -> Value {
    let m: serde_json::Map<String, Value> =
        p.iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
    Value::Object(m)
}

pub fn path_json(p: &Path) -> Value {
    let s = p.breakpoints();
    Value::Array(
        p.directions()
            .iter()
            .enumerate()
            .map(|(k, d)| json!({ "direction": weight_json(d), "sigma": format!("{}/{}", s[k].numer(), s[k].denom()) }))
            .collect(),
    )
}

/// Stable id: first 16 hex digits of SHA-256 over the canonical expression.
pub fn node_hash(p: &Path) -> String {
    let mut text = String::new();
    for (d, s) in p.directions().iter().zip(p.breakpoints()) {
        let _ = write!(text, "{}@{};", d.fmt_short(), s);
    }
    let digest = Sha256::digest(text.as_bytes());
    digest
        .iter()
        .take(8)
        .map(|b| format!("{:02x}", b))
        .collect()
}

pub fn filtration_json(fm: &FiltrationMultiset) -> Value {
    Value::Array(
        fm.iter()
            .map(|(w, m, c)| json!({ "mu": varpi_json(w), "m": m, "mult": c }))
            .collect(),
    )
}

pub fn filtration_tsv(fm: &FiltrationMultiset) -> String {
    let mut out = String::from("mu\tm\tmult\n");
    for (w, m, c) in fm.iter() {
        let _ = writeln!(out, "{}\t{}\t{}", w.fmt_short(), m, c);
    }
    out
}

pub fn character_tsv(chi: &Character) -> String {
    let mut out = String::from("weight\tcoeff\n");
    for (w, c) in chi.iter() {
        let _ = writeln!(out, "{}\t{}", w.fmt_short(), c);
    }
    out
}

pub fn graph_dot(g: &CrystalGraph, name: &str) -> String {
    let mut out = format!("digraph \"{}\" {{\n", name);
    for p in g.nodes() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\"];",
            node_hash(p),
            p.endpoint().fmt_short()
        );
    }
    for (u, i, v) in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            node_hash(g.node(u)),
            node_hash(g.node(v)),
            i
        );
    }
    out.push_str("}\n");
    out
}

pub fn graph_edges_json(g: &CrystalGraph) -> Value {
    Value::Array(
        g.edges()
            .into_iter()
            .map(|(u, i, v)| json!({ "from": node_hash(g.node(u)), "i": i, "to": node_hash(g.node(v)) }))
            .collect(),
    )
}

/// Nodes with wt_P̂ and Deg, plus f̃-edges.
pub fn normalized_crystal_json(nc: &NormalizedCrystal, with_paths: bool) -> Value {
    let nodes: Vec<Value> = (0..nc.len())
        .map(|u| {
            let mut v = json!({
                "id": node_hash(nc.path(u)),
                "wt": weight_json(&nc.wt_phat(u)),
                "deg": nc.degree(u),
            });
            if with_paths {
                v["path"] = path_json(nc.path(u));
            }
            v
        })
        .collect();
    json!({
        "d_lambda": nc.d_lambda(),
        "size": nc.len(),
        "nodes": nodes,
        "edges": graph_edges_json(nc.graph()),
    })
}

pub fn normalized_crystal_tsv(nc: &NormalizedCrystal) -> String {
    let mut out = String::from("id\twt\tdeg\n");
    for u in 0..nc.len() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            node_hash(nc.path(u)),
            nc.wt_phat(u).fmt_short(),
            nc.degree(u)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::RootSystem;

    #[test]
    fn rationals_and_weights() {
        assert_eq!(q_json(&Q::new(3, 1)), json!(3));
        assert_eq!(q_json(&Q::new(-1, 2)), json!("-1/2"));
        let rs = RootSystem::from_letter('A', 1).unwrap();
        assert_eq!(weight_json(&rs.varpi(1)), json!([-1, 1, 0]));
        assert_eq!(varpi_json(&rs.varpi(1)), json!([1]));
    }

    #[test]
    fn hash_is_stable_and_distinguishes() {
        let rs = RootSystem::from_letter('A', 1).unwrap();
        let a = Path::straight(rs.varpi(1));
        let b = Path::straight(-&rs.varpi(1));
        assert_eq!(node_hash(&a), node_hash(&a.clone()));
        assert_ne!(node_hash(&a), node_hash(&b));
        assert_eq!(node_hash(&a).len(), 16);
    }
}
