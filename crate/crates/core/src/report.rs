//! The JSON analysis report.
//!
//! Field order is fixed by the struct definitions and every collection
//! is sorted, so serializing the same presentation twice yields
//! byte-identical output.

use serde::Serialize;


use crate::presentation::Presentation;
use crate::quotient;
use crate::regularity::{self, Fibre, Trilean};
use crate::verdict::{self, CkStatus, ConditionS, Simplicity};

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub graph: String,
    pub levels: Vec<u32>,
    pub vertices: Vec<VertexReport>,
    pub falpha: Vec<FalphaSummary>,
    pub condition_v: ConditionVJson,
    pub condition_s: ConditionSJson,
    pub ck_uniqueness: Vec<CkJson>,
    pub simplicity: SimplicityJson,
    pub version: String,
    pub bounds: Bounds,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VertexReport {
    pub name: String,
    pub per_level: Vec<LevelReport>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelReport {
    pub level: u32,
    pub is_source: bool,
    pub is_source_regular: bool,
    pub fibre: FibreJson,
    pub is_regular: serde_json::Value,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FibreJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessJson {
    pub cycle: String,
    pub seed: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FalphaSummary {
    pub level: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub cycles_without_entry: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionVJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VWitnessJson>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VWitnessJson {
    pub level: u32,
    pub generator: String,
    pub vertex: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionSJson {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CkJson {
    pub level: u32,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimplicityJson {
    pub status: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub class_bound: usize,
}

fn fibre_json(pres: &Presentation, fibre: &Fibre) -> FibreJson {
    match fibre {
        Fibre::Finite(members) => {
            let mut names: Vec<String> = members.iter().map(|m| m.display(pres)).collect();
            names.sort();
            FibreJson {
                kind: "finite".into(),
                members: Some(names),
                witness: None,
                bound: None,
            }
        }
        Fibre::Infinite(w) => FibreJson {
            kind: "infinite".into(),
            members: None,
            witness: Some(WitnessJson {
                cycle: w.cycle.display(pres),
                seed: w.seed.display(pres),
            }),
            bound: None,
        },
        Fibre::Unknown { bound } => FibreJson {
            kind: "unknown".into(),
            members: None,
            witness: None,
            bound: Some(*bound),
        },
    }
}

fn trilean_json(t: Trilean) -> serde_json::Value {
    match t {
        Trilean::True => serde_json::Value::Bool(true),
        Trilean::False => serde_json::Value::Bool(false),
        Trilean::Unknown => serde_json::Value::String("unknown".into()),
    }
}

/// Runs the full per-vertex, per-level analysis plus the verdict.
/// `level` restricts the vertex tables and quotient summaries.
pub fn analyze(pres: &Presentation, bound: usize, level: Option<u32>) -> AnalysisReport {
    let top = pres.max_level();
    let levels: Vec<u32> = match level {
        Some(k) => vec![k],
        None => (0..=top).collect(),
    };
    let mut vertex_names: Vec<String> = pres
        .vertices()
        .map(|v| pres.vertex_name(v).to_string())
        .collect();
    vertex_names.sort();
    let vertices = vertex_names
        .iter()
        .map(|name| {
            let v = pres.vertex_id(name).expect("listed vertex");
            let per_level = levels
                .iter()
                .map(|&k| {
                    let fib = regularity::fibre(pres, v, k, bound);
                    let is_source = regularity::is_alpha_source(pres, v, k);
                    let is_source_regular = regularity::is_alpha_source_regular(pres, v, k);
                    let row_finite = match &fib {
                        Fibre::Finite(_) => Trilean::True,
                        Fibre::Infinite(_) => Trilean::False,
                        Fibre::Unknown { .. } => Trilean::Unknown,
                    };
                    let is_regular =
                        Trilean::from_bool(is_source_regular).and(row_finite);
                    LevelReport {
                        level: k,
                        is_source,
                        is_source_regular,
                        fibre: fibre_json(pres, &fib),
                        is_regular: trilean_json(is_regular),
                    }
                })
                .collect();
            VertexReport {
                name: name.clone(),
                per_level,
            }
        })
        .collect();
    let falpha = levels
        .iter()
        .map(|&k| {
            let d = quotient::falpha(pres, k);
            let cycles = quotient::cycles_without_entry(&d);
            FalphaSummary {
                level: k,
                vertex_count: d.vertices.len(),
                edge_count: d.edges.len(),
                cycles_without_entry: cycles
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|&j| pres.gen_name(d.edges[j].rep).to_string())
                            .collect()
                    })
                    .collect(),
            }
        })
        .collect();
    let verdict = verdict::ck_verdict(pres, bound);
    AnalysisReport {
        graph: pres.name().to_string(),
        levels,
        vertices,
        falpha,
        condition_v: ConditionVJson {
            holds: verdict.condition_v.holds,
            witness: verdict.condition_v.witness.as_ref().map(|w| VWitnessJson {
                level: w.level,
                generator: pres.gen_name(w.gen).to_string(),
                vertex: pres.vertex_name(w.vertex).to_string(),
            }),
        },
        condition_s: condition_s_json(&verdict.condition_s),
        ck_uniqueness: verdict
            .ck_levels
            .iter()
            .map(|(k, s)| {
                let (status, reason) = ck_json(s);
                CkJson {
                    level: *k,
                    status,
                    reason,
                }
            })
            .collect(),
        simplicity: SimplicityJson {
            status: match verdict.simplicity {
                Simplicity::Simple => "Simple".into(),
                Simplicity::Unknown => "Unknown".into(),
            },
        },
        version: crate::VERSION.to_string(),
        bounds: Bounds { class_bound: bound },
        warnings: verdict.warnings,
    }
}

pub fn condition_s_json(s: &ConditionS) -> ConditionSJson {
    match s {
        ConditionS::SatisfiedViaTheorem => ConditionSJson {
            status: "SatisfiedViaTheorem".into(),
            detail: None,
        },
        ConditionS::FailedV => ConditionSJson {
            status: "FailedV".into(),
            detail: None,
        },
        ConditionS::CycleWithoutEntry { level, cycle } => ConditionSJson {
            status: "CycleWithoutEntry".into(),
            detail: Some(format!("level {}: [{}]", level, cycle.join(" "))),
        },
        ConditionS::Unknown => ConditionSJson {
            status: "Unknown".into(),
            detail: None,
        },
    }
}

pub fn ck_json(s: &CkStatus) -> (String, Option<String>) {
    match s {
        CkStatus::HoldsViaTheorem => ("HoldsViaTheorem".into(), None),
        CkStatus::Inapplicable(r) => ("Inapplicable".into(), Some(r.clone())),
        CkStatus::Unknown(r) => ("Unknown".into(), Some(r.clone())),
    }
}

/// DOT rendering of a quotient digraph: component member lists label
/// the nodes, representative generators label the edges.
pub fn falpha_dot(pres: &Presentation, d: &quotient::QuotientDigraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph falpha_{} {{\n", d.level));
    for (i, comp) in d.vertices.iter().enumerate() {
        let members: Vec<&str> = comp.iter().map(|&v| pres.vertex_name(v)).collect();
        out.push_str(&format!(
            "  c{} [label=\"{{{}}}\"];\n",
            i,
            members.join(",")
        ));
    }
    for e in &d.edges {
        out.push_str(&format!(
            "  c{} -> c{} [label=\"{}\"];\n",
            e.source,
            e.range,
            pres.gen_name(e.rep)
        ));
    }
    out.push_str("}\n");
    out
}

/// Plain-text rendering of the analysis.
pub fn render_text(pres: &Presentation, report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "graph {} ({} vertices, {} generators, max level {})\n",
        report.graph,
        pres.vertex_count(),
        pres.gen_count(),
        pres.max_level()
    ));
    if pres.is_finite_analogue() {
        out.push_str("note: finite analogue of an infinite graph\n");
    }
    for v in &report.vertices {
        out.push_str(&format!("vertex {}:\n", v.name));
        for l in &v.per_level {
            let fibre = match l.fibre.kind.as_str() {
                "finite" => format!(
                    "finite {{{}}}",
                    l.fibre.members.as_deref().unwrap_or(&[]).join(", ")
                ),
                "infinite" => {
                    let w = l.fibre.witness.as_ref().unwrap();
                    format!("infinite (pump cycle {} on seed {})", w.cycle, w.seed)
                }
                _ => format!("unknown at bound {}", l.fibre.bound.unwrap_or(0)),
            };
            out.push_str(&format!(
                "  level {}: source={} sourceRegular={} regular={} fibre={}\n",
                l.level, l.is_source, l.is_source_regular, l.is_regular, fibre
            ));
        }
    }
    for f in &report.falpha {
        out.push_str(&format!(
            "F_{}: {} vertices, {} edges, {} cycle(s) without entry\n",
            f.level,
            f.vertex_count,
            f.edge_count,
            f.cycles_without_entry.len()
        ));
    }
    out.push_str(&format!(
        "condition (V): {}\n",
        if report.condition_v.holds {
            "holds".to_string()
        } else {
            let w = report.condition_v.witness.as_ref().unwrap();
            format!(
                "fails (level {}, generator {}, vertex {})",
                w.level, w.generator, w.vertex
            )
        }
    ));
    out.push_str(&format!(
        "condition (S): {}{}\n",
        report.condition_s.status,
        report
            .condition_s
            .detail
            .as_ref()
            .map(|d| format!(" ({})", d))
            .unwrap_or_default()
    ));
    for ck in &report.ck_uniqueness {
        out.push_str(&format!(
            "uniqueness at level {}: {}{}\n",
            ck.level,
            ck.status,
            ck.reason
                .as_ref()
                .map(|r| format!(" ({})", r))
                .unwrap_or_default()
        ));
    }
    out.push_str(&format!("simplicity: {}\n", report.simplicity.status));
    for w in &report.warnings {
        out.push_str(&format!("warning: {}\n", w));
    }
    out
}
