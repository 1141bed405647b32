//! Conditions (V) and (S) and the uniqueness / simplicity verdicts.
//!
//! Condition (V) asks, per level, that from every tail stage of a
//! length-ω^k path one can connect back to each vertex of its component
//! through lower levels. The sufficient check for condition (S) is that
//! (V) holds and no quotient digraph has an entry-less cycle; it is
//! one-directional, so failure of the check is reported as such and
//! never as failure of (S) itself.

use crate::path::{self, Path};
use crate::presentation::{GenId, Presentation, VertexId};
use crate::quotient;
use crate::regularity::{self, Trilean};

/// Witness of a condition (V) failure: no tail stage of `gen` connects
/// to `vertex` within the component at `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VWitness {
    pub level: u32,
    pub gen: GenId,
    pub vertex: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionV {
    pub holds: bool,
    pub witness: Option<VWitness>,
}

/// Outcome of the condition (S) sufficient check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionS {
    SatisfiedViaTheorem,
    FailedV,
    /// The sufficient check failed: some quotient digraph has a cycle
    /// with no entry (given as generator names). This does not assert
    /// that condition (S) itself fails.
    CycleWithoutEntry { level: u32, cycle: Vec<String> },
    Unknown,
}

/// Per-level uniqueness status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CkStatus {
    HoldsViaTheorem,
    Inapplicable(String),
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    Unknown,
}

/// The assembled verdict.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub condition_v: ConditionV,
    pub condition_s: ConditionS,
    /// Theorem instance per level k = 0..=K, asserting uniqueness for
    /// the algebra of paths shorter than ω^{k+1}.
    pub ck_levels: Vec<(u32, CkStatus)>,
    /// The top-level entry: the statement about the whole algebra.
    pub overall: CkStatus,
    pub simplicity: Simplicity,
    pub warnings: Vec<String>,
}

/// Condition (V): for every level k with length-ω^k paths, every
/// generator g of level k and every vertex v in the component of r(g),
/// some tail vertex of g reaches v through levels < k (arc direction:
/// a path f with s(f) at the tail vertex and r(f) = v).
pub fn check_condition_v(pres: &Presentation) -> ConditionV {
    for k in 0..=pres.max_level() {
        let comps = quotient::components(pres, k);
        for g in pres.gens_at_level(k) {
            let gp = Path::generator(pres, g);
            let tails = path::tail_vertices(pres, &gp);
            let comp = &comps[quotient::component_of(&comps, pres.gen(g).range)];
            for &v in comp {
                let reach = pres.reach_below(v, k);
                if !tails.iter().any(|w| reach.contains(w)) {
                    return ConditionV {
                        holds: false,
                        witness: Some(VWitness {
                            level: k,
                            gen: g,
                            vertex: v,
                        }),
                    };
                }
            }
        }
    }
    ConditionV {
        holds: true,
        witness: None,
    }
}

/// The sufficient check for condition (S): condition (V) plus an entry
/// for every cycle of every quotient digraph up to the maximal level.
pub fn check_condition_s(pres: &Presentation) -> ConditionS {
    let v = check_condition_v(pres);
    if !v.holds {
        return ConditionS::FailedV;
    }
    for k in 0..=pres.max_level() {
        let d = quotient::falpha(pres, k);
        let cwe = quotient::cycles_without_entry(&d);
        if let Some(cycle) = cwe.first() {
            return ConditionS::CycleWithoutEntry {
                level: k,
                cycle: cycle
                    .iter()
                    .map(|&j| pres.gen_name(d.edges[j].rep).to_string())
                    .collect(),
            };
        }
    }
    ConditionS::SatisfiedViaTheorem
}

/// Applies the uniqueness theorem per level and assembles the verdict.
///
/// The instance at level k requires: no vertex is 1-regular, condition
/// (S) via the sufficient check, and no vertex is a k-source. The
/// overall verdict is the instance at the maximal level present.
pub fn ck_verdict(pres: &Presentation, bound: usize) -> Verdict {
    let condition_v = check_condition_v(pres);
    let condition_s = check_condition_s(pres);
    let top = pres.max_level();

    // 1-regularity scan, shared by all levels
    let mut one_regular: Option<VertexId> = None;
    let mut one_regular_unknown: Option<VertexId> = None;
    let mut regular_by_vertex = Vec::new();
    for v in pres.vertices() {
        let r = regularity::is_alpha_regular(pres, v, 1, bound);
        regular_by_vertex.push((v, r));
        match r {
            Trilean::True if one_regular.is_none() => one_regular = Some(v),
            Trilean::Unknown if one_regular_unknown.is_none() => {
                one_regular_unknown = Some(v)
            }
            _ => {}
        }
    }

    let mut warnings = Vec::new();
    if one_regular.is_none() {
        for k in 2..=top {
            for v in pres.vertices() {
                if regularity::is_alpha_regular(pres, v, k, bound) == Trilean::True {
                    warnings.push(format!(
                        "vertex {} is {}-regular but not 1-regular; the theorem's \
                         hypothesis is stated with the constant 1",
                        pres.vertex_name(v),
                        k
                    ));
                }
            }
        }
    }

    let status_at = |k: u32| -> CkStatus {
        if let Some(v) = one_regular {
            return CkStatus::Inapplicable(format!(
                "vertex {} is 1-regular",
                pres.vertex_name(v)
            ));
        }
        if let Some(v) = one_regular_unknown {
            return CkStatus::Unknown(format!(
                "1-regularity of vertex {} undecided at bound {}",
                pres.vertex_name(v),
                bound
            ));
        }
        match &condition_s {
            ConditionS::SatisfiedViaTheorem => {}
            ConditionS::FailedV => {
                return CkStatus::Inapplicable(
                    "condition (S) sufficient check failed: condition (V) fails".into(),
                )
            }
            ConditionS::CycleWithoutEntry { level, .. } => {
                return CkStatus::Inapplicable(format!(
                    "condition (S) sufficient check failed: cycle without entry at level {}",
                    level
                ))
            }
            ConditionS::Unknown => {
                return CkStatus::Unknown("condition (S) check undecided".into())
            }
        }
        if let Some(v) = pres
            .vertices()
            .find(|&v| regularity::is_alpha_source(pres, v, k))
        {
            return CkStatus::Inapplicable(format!(
                "vertex {} is a {}-source",
                pres.vertex_name(v),
                k
            ));
        }
        CkStatus::HoldsViaTheorem
    };

    let ck_levels: Vec<(u32, CkStatus)> = (0..=top).map(|k| (k, status_at(k))).collect();
    let overall = ck_levels.last().expect("at least level 0").1.clone();
    let simplicity = if overall == CkStatus::HoldsViaTheorem && pres.vertex_count() == 1 {
        Simplicity::Simple
    } else {
        Simplicity::Unknown
    };
    Verdict {
        condition_v,
        condition_s,
        ck_levels,
        overall,
        simplicity,
        warnings,
    }
}
