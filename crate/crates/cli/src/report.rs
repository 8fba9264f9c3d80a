//! JSON views of library results, and a plain-text table renderer.

use raagpath_core::certify::{Certificate, Evidence, NonInjectiveEvidence, PeelStep, Verdict};
use raagpath_core::cover::Walk;
use raagpath_core::path::{LiftReport, Path};
use raagpath_core::{Graph, GraphMap, Vertex, VertexSet, Word};
use serde_json::{json, Map, Value};

pub fn names(g: &Graph, vs: impl IntoIterator<Item = Vertex>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

pub fn set_names(g: &Graph, s: &VertexSet) -> Vec<String> {
    names(g, s.iter().copied())
}

pub fn path_names(g: &Graph, p: &Path) -> Vec<String> {
    names(g, p.vertices().iter().copied())
}

pub fn word_text(g: &Graph, w: &Word) -> String {
    w.to_text(g)
}

pub fn walk_name(g: &Graph, w: &Walk) -> String {
    w.name(g)
}

pub fn map_summary(f: &GraphMap) -> Value {
    let (d, c) = (f.domain(), f.codomain());
    let fibers: Map<String, Value> = c
        .vertices()
        .map(|v| {
            (
                c.name(v).to_string(),
                json!(names(d, f.fiber(v).iter().copied())),
            )
        })
        .collect();
    json!({
        "domain_vertices": d.order(),
        "domain_edges": d.edge_count(),
        "codomain_vertices": c.order(),
        "codomain_edges": c.edge_count(),
        "immersion": f.is_immersion(),
        "covering": f.is_covering(),
        "surjective": f.is_surjective(),
        "domain_is_forest": d.is_forest(),
        "fibers": fibers,
    })
}

pub fn lift_report(f: &GraphMap, r: &LiftReport) -> Value {
    let (d, c) = (f.domain(), f.codomain());
    let failures: Vec<Value> = r
        .failures()
        .map(|(start, fail)| {
            json!({
                "start": d.name(start),
                "path": path_names(c, &fail.path),
                "lifted": names(d, fail.lifted.iter().copied()),
            })
        })
        .collect();
    json!({
        "holds": r.holds,
        "starts": r.per_start.len(),
        "maximal_paths_lifted": r.per_start.iter().map(|s| s.maximal_lifted).sum::<usize>(),
        "failures": failures,
    })
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::CertifiedInjective => "certified_injective",
        Verdict::CertifiedNonInjective => "certified_non_injective",
        Verdict::Unknown => "unknown",
    }
}

fn peel_step(s: &PeelStep) -> Value {
    json!({
        "vertex": s.vertex,
        "image": s.image,
        "link_order": s.link_order,
        "lifts": s.lifts,
        "orders_tried": s.orders_tried,
        "exhaustive": s.exhaustive,
    })
}

pub fn noninjective_evidence(ev: &NonInjectiveEvidence, gamma: &Graph) -> Value {
    let e = &ev.enlarged;
    let (l1, g) = (e.domain(), e.codomain());
    json!({
        "kind": "lift_failure",
        "base_set": ev.base_set.iter().map(|w| walk_name(gamma, w)).collect::<Vec<_>>(),
        "sigma": ev.sigma.iter().map(|s| walk_name(gamma, s.loop_walk())).collect::<Vec<_>>(),
        "enlarged": {
            "vertices": l1.names(),
            "edges": l1.edges().map(|(u, v)| [l1.name(u), l1.name(v)]).collect::<Vec<_>>(),
            "assignment": l1.vertices().map(|v| (l1.name(v).to_string(), json!(g.name(e.image(v))))).collect::<Map<_, _>>(),
        },
        "vertex": l1.name(ev.vertex),
        "path": path_names(g, &ev.path),
        "witness": word_text(g, &ev.witness),
    })
}

pub fn certificate(f: &GraphMap, c: &Certificate) -> Value {
    let evidence = match &c.evidence {
        Evidence::Peeling(steps) => json!({
            "kind": "peeling",
            "steps": steps.iter().map(peel_step).collect::<Vec<_>>(),
        }),
        Evidence::EmptyFiber { vertex } => json!({ "kind": "empty_fiber", "vertex": vertex }),
        Evidence::LiftFailure(ev) => noninjective_evidence(ev, f.codomain()),
        Evidence::None => json!({ "kind": "none" }),
    };
    json!({ "verdict": verdict_name(c.verdict), "evidence": evidence })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Renders `value` as text: its `rows` array (or the value itself, if it is
/// an array of objects) as a column table, anything else as key/value lines.
pub fn table(value: &Value) -> String {
    let rows = match value {
        Value::Array(a) => Some(a),
        Value::Object(o) => o.get("rows").and_then(Value::as_array),
        _ => None,
    };
    let mut out = String::new();
    if let Value::Object(o) = value {
        for (k, v) in o.iter().filter(|(k, _)| k.as_str() != "rows") {
            out.push_str(&format!("{k}: {}\n", cell(v)));
        }
    }
    let Some(rows) = rows else {
        if !matches!(value, Value::Object(_)) {
            out.push_str(&cell(value));
            out.push('\n');
        }
        return out;
    };
    let mut header: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(o) = r {
            for k in o.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            header
                .iter()
                .map(|k| r.get(k).map(cell).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| {
            body.iter()
                .map(|r| r[i].len())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    out.push_str(&line(&header));
    for r in &body {
        out.push_str(&line(r));
    }
    out
}
