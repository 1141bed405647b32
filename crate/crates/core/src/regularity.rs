//! Per-vertex regularity analysis and exhaustive-set algorithms.
//!
//! A vertex is a k-source when no length-ω^k path ends there, k
//! source-regular when no sub-level extension runs into a k-source, and
//! k row-finite when the fibre of length-ω^k paths into it is finite.
//! The fibre is enumerated up to path equality; infinitude is certified
//! by a pumping pair (a cycle c and a seed σ with c·σ ≠ σ), and residual
//! cases are reported as unknown together with the bound that was used.

use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::path::{self, Extension, Path};
use crate::presentation::{GenId, Presentation, VertexId};
use crate::quotient;

/// Three-valued answer for the semi-decided questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    True,
    False,
    Unknown,
}

impl Trilean {
    pub fn from_bool(b: bool) -> Trilean {
        if b {
            Trilean::True
        } else {
            Trilean::False
        }
    }

    pub fn and(self, other: Trilean) -> Trilean {
        match (self, other) {
            (Trilean::False, _) | (_, Trilean::False) => Trilean::False,
            (Trilean::Unknown, _) | (_, Trilean::Unknown) => Trilean::Unknown,
            _ => Trilean::True,
        }
    }
}

/// Certificate that a fibre is infinite: `cycle` is a nonempty path at
/// some vertex on the way to the fibre's vertex, `seed` a length-ω^k
/// path there, and cycle·seed ≠ seed, so the pumped family
/// cycleⁿ·seed is pairwise distinct.
#[derive(Debug, Clone)]
pub struct InfiniteWitness {
    pub cycle: Path,
    pub seed: Path,
}

/// Result of enumerating `vΛ^{ω^k}`.
#[derive(Debug, Clone)]
pub enum Fibre {
    Finite(Vec<Path>),
    Infinite(InfiniteWitness),
    Unknown { bound: usize },
}

/// True when no path of length ω^k ends at `v`: no level-k generator
/// has its range source-reachable from `v` through lower levels.
pub fn is_alpha_source(pres: &Presentation, v: VertexId, k: u32) -> bool {
    let reach = pres.reach_below(v, k);
    !pres
        .gens_at_level(k)
        .any(|g| reach.contains(&pres.gen(g).range))
}

/// True when every vertex reachable from `v` through levels < k
/// (including `v`) admits a length-ω^k path.
pub fn is_alpha_source_regular(pres: &Presentation, v: VertexId, k: u32) -> bool {
    pres.reach_below(v, k)
        .iter()
        .all(|&w| !is_alpha_source(pres, w, k))
}

/// Enumerates the length-ω^k fibre at `v` up to path equality.
///
/// Classes are grown from the level-k generators by composing lower
/// level letters on the range side; the walk is closed under that
/// operation, so an exhausted worklist proves the fibre finite. When
/// `bound` classes are exceeded, a pumping certificate is searched for;
/// if none is found the result is `Unknown`.
pub fn fibre(pres: &Presentation, v: VertexId, k: u32, bound: usize) -> Fibre {
    if k == 0 {
        let edges: Vec<Path> = pres
            .gens_at_level(0)
            .filter(|&g| pres.gen(g).range == v)
            .map(|g| Path::generator(pres, g))
            .collect();
        return Fibre::Finite(edges);
    }
    let comps = quotient::components(pres, k);
    let comp = quotient::component_of(&comps, v);
    let mut classes: Vec<Path> = Vec::new();
    let mut work: Vec<usize> = Vec::new();
    for p in pres.gens_at_level(k) {
        if comps[comp].contains(&pres.gen(p).range) {
            let cand = Path::generator(pres, p);
            if !classes.iter().any(|c| path::equals(pres, c, &cand)) {
                classes.push(cand);
                work.push(classes.len() - 1);
            }
        }
    }
    let mut overflow = false;
    'bfs: while let Some(i) = work.pop() {
        let x = classes[i].clone();
        for g in pres.gens_below_level(k) {
            if pres.gen(g).source != x.range() {
                continue;
            }
            let y = path::compose(pres, &Path::generator(pres, g), &x)
                .expect("source matched range");
            if !classes.iter().any(|c| path::equals(pres, c, &y)) {
                if classes.len() >= bound {
                    overflow = true;
                    break 'bfs;
                }
                classes.push(y);
                work.push(classes.len() - 1);
            }
        }
    }
    if !overflow {
        let mut members: Vec<Path> = classes
            .into_iter()
            .filter(|c| c.range() == v)
            .collect();
        members.sort_by_key(|m| m.display(pres));
        return Fibre::Finite(members);
    }
    match infinite_witness(pres, v, k, &classes) {
        Some(w) => Fibre::Infinite(w),
        None => Fibre::Unknown { bound },
    }
}

/// Searches the discovered classes for a pumping pair. The pump is
/// re-verified for enough rounds to rule out a periodic orbit: if the
/// orbit of σ under c is finite, c^d·σ = σ already holds for a small d,
/// so surviving all rounds certifies a pairwise-distinct family.
fn infinite_witness(
    pres: &Presentation,
    v: VertexId,
    k: u32,
    classes: &[Path],
) -> Option<InfiniteWitness> {
    let reachable = pres.reach_below(v, k);
    for &w in &reachable {
        for cycle in short_cycles(pres, w, k, 3) {
            for seed in classes.iter().filter(|c| c.range() == w) {
                let rounds = pump_rounds(pres, seed);
                let mut x = seed.clone();
                let mut distinct = true;
                for _ in 0..rounds {
                    x = path::compose(pres, &cycle, &x).expect("cycle returns to w");
                    if path::equals(pres, &x, seed) {
                        distinct = false;
                        break;
                    }
                }
                if distinct {
                    return Some(InfiniteWitness {
                        cycle,
                        seed: seed.clone(),
                    });
                }
            }
        }
    }
    None
}

fn pump_rounds(pres: &Presentation, seed: &Path) -> usize {
    let chain = seed.blocks().iter().find_map(|b| match b {
        path::Block::Limit { tail, .. } => pres.lasso(*tail),
        path::Block::Edge(_) => None,
    });
    let base = chain.map(|l| l.rho + l.cycle + 2).unwrap_or(8);
    base.max(8).min(64)
}

/// Nonempty cycle paths at `w` over generators of level < k, up to
/// `max_len` letters, shortest first.
fn short_cycles(pres: &Presentation, w: VertexId, k: u32, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<GenId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for word in &frontier {
            let at = match word.last() {
                Some(&g) => pres.gen(g).source,
                None => w,
            };
            for g in pres.gens_below_level(k) {
                if pres.gen(g).range != at {
                    continue;
                }
                let mut ext = word.clone();
                ext.push(g);
                if pres.gen(g).source == w {
                    out.push(Path::from_word(pres, &ext).expect("composable by construction"));
                }
                next.push(ext);
            }
        }
        frontier = next;
    }
    out
}

/// Row-finiteness through the fibre enumeration.
pub fn is_alpha_row_finite(pres: &Presentation, v: VertexId, k: u32, bound: usize) -> Trilean {
    match fibre(pres, v, k, bound) {
        Fibre::Finite(_) => Trilean::True,
        Fibre::Infinite(_) => Trilean::False,
        Fibre::Unknown { .. } => Trilean::Unknown,
    }
}

/// k-regular = k source-regular and k row-finite.
pub fn is_alpha_regular(pres: &Presentation, v: VertexId, k: u32, bound: usize) -> Trilean {
    Trilean::from_bool(is_alpha_source_regular(pres, v, k))
        .and(is_alpha_row_finite(pres, v, k, bound))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExhaustiveError {
    #[error("set member has range {0}, not the requested vertex")]
    MemberOutsideFibre(String),
    #[error("split_exhaustive preconditions violated: {0}")]
    Precondition(String),
}

/// Removes members that properly extend another member (and duplicate
/// values); exhaustiveness is preserved by the removals.
pub fn minimalize(pres: &Presentation, set: &[Path]) -> Vec<Path> {
    let mut out: Vec<Path> = Vec::new();
    'outer: for f in set {
        let mut i = 0;
        while i < out.len() {
            match path::compare_extensions(pres, f, &out[i]) {
                Extension::Equal | Extension::ProperlyExtends => continue 'outer,
                Extension::ProperPrefixOf => {
                    out.remove(i);
                }
                Extension::Disjoint => i += 1,
            }
        }
        out.push(f.clone());
    }
    out
}

/// The two halves `F_e = (F \ eΛ) ∪ {e}` and `F^e = {g : eg ∈ F}` of a
/// minimal exhaustive set.
pub fn split_exhaustive(
    pres: &Presentation,
    set: &[Path],
    e: &Path,
) -> Result<(Vec<Path>, Vec<Path>), ExhaustiveError> {
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            if path::compare_extensions(pres, a, b) != Extension::Disjoint {
                return Err(ExhaustiveError::Precondition(
                    "set is not minimal".into(),
                ));
            }
        }
    }
    if set.iter().any(|f| f.range() != e.range()) {
        return Err(ExhaustiveError::Precondition(
            "set and path have different range vertices".into(),
        ));
    }
    let le = path::length(pres, e);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut hit = false;
    for f in set {
        match path::compare_extensions(pres, f, e) {
            Extension::Equal => {
                hit = true;
                upper.push(Path::identity(e.source(pres)));
            }
            Extension::ProperlyExtends => {
                hit = true;
                let (_, q) = path::split(pres, f, &le).expect("e is a prefix of f");
                upper.push(q);
            }
            Extension::ProperPrefixOf | Extension::Disjoint => lower.push(f.clone()),
        }
    }
    if !hit {
        return Err(ExhaustiveError::Precondition(
            "the set does not meet eΛ".into(),
        ));
    }
    lower.push(e.clone());
    Ok((lower, upper))
}

/// Decides exhaustiveness of a finite `F ⊆ vΛ` by the recursive
/// descent: minimalize, split every member at the least ω-power present
/// and compare the fixed-level layer against the fibre; the layers below
/// recurse at the sources.
pub fn is_exhaustive(
    pres: &Presentation,
    v: VertexId,
    set: &[Path],
    bound: usize,
) -> Result<Trilean, ExhaustiveError> {
    for f in set {
        if f.range() != v {
            return Err(ExhaustiveError::MemberOutsideFibre(
                pres.vertex_name(f.range()).to_string(),
            ));
        }
    }
    Ok(exhaustive_rec(pres, v, set.to_vec(), bound))
}

fn exhaustive_rec(pres: &Presentation, v: VertexId, set: Vec<Path>, bound: usize) -> Trilean {
    let set = minimalize(pres, &set);
    if set.is_empty() {
        return Trilean::False;
    }
    if set.iter().any(|f| f.is_identity()) {
        return Trilean::True;
    }
    let min_len = set
        .iter()
        .map(|f| path::length(pres, f))
        .min()
        .expect("set is nonempty");
    let a = min_len.terms()[0]
        .0
        .as_nat()
        .expect("generator levels are finite") as u32;
    let wa = Ordinal::omega_pow(&Ordinal::from_nat(a as u64));
    // the fixed-level layer must be the whole fibre at a regular vertex
    if !is_alpha_source_regular(pres, v, a) {
        return Trilean::False;
    }
    let fib = match fibre(pres, v, a, bound) {
        Fibre::Finite(members) => members,
        Fibre::Infinite(_) => return Trilean::False,
        Fibre::Unknown { .. } => return Trilean::Unknown,
    };
    let mut layer: Vec<(Path, Vec<Path>)> = Vec::new();
    for f in &set {
        let (p, q) = path::split(pres, f, &wa).expect("ω^a ≤ every length in the set");
        match layer
            .iter_mut()
            .find(|(rep, _)| path::equals(pres, rep, &p))
        {
            Some((_, tails)) => tails.push(q),
            None => layer.push((p, vec![q])),
        }
    }
    if layer.len() != fib.len()
        || !fib
            .iter()
            .all(|m| layer.iter().any(|(rep, _)| path::equals(pres, rep, m)))
    {
        return Trilean::False;
    }
    let mut acc = Trilean::True;
    for (rep, tails) in layer {
        let s = rep.source(pres);
        acc = acc.and(exhaustive_rec(pres, s, tails, bound));
        if acc == Trilean::False {
            return Trilean::False;
        }
    }
    acc
}
