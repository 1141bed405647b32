//! Connected components, tail equivalence, the quotient digraphs, and
//! non-returning path machinery.
//!
//! At level k the vertices are grouped by weak connectivity through
//! generators of level < k, and the length-ω^k paths are grouped by
//! tail equivalence (sharing some tail value). The result is an
//! ordinary digraph per level; its cycle/entry structure drives the
//! sufficient check for condition (S) and the construction of long
//! non-returning paths.

use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::path::{self, Path};
use crate::presentation::{GenId, Presentation, VertexId};

/// Weakly connected components of the vertex set under arcs of
/// generators of level < k. Components and their members are sorted.
pub fn components(pres: &Presentation, k: u32) -> Vec<Vec<VertexId>> {
    let n = pres.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for g in pres.gens_below_level(k) {
        let d = pres.gen(g);
        let (a, b) = (
            find(&mut parent, d.source.0 as usize),
            find(&mut parent, d.range.0 as usize),
        );
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        match root_of[r] {
            Some(gi) => groups[gi].push(VertexId(x as u32)),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![VertexId(x as u32)]);
            }
        }
    }
    groups.sort_by_key(|g| g[0]);
    groups
}

/// Index of the component containing `v`.
pub fn component_of(comps: &[Vec<VertexId>], v: VertexId) -> usize {
    comps
        .iter()
        .position(|c| c.contains(&v))
        .expect("every vertex lies in a component")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("generators have different levels")]
    LevelMismatch,
    #[error("a cycle without entry blocks the construction: {0}")]
    CycleWithoutEntry(String),
    #[error("no edge of the quotient ends at the requested vertex")]
    NoIncomingEdge,
    #[error("no non-returning path found within the search bound")]
    NotFound,
    #[error("not constructible: {0}")]
    NotConstructible(String),
    #[error("path length is not of the form ω^k·n")]
    BadLength,
}

/// Tail equivalence of two same-level generators: some tail value of
/// one equals some tail value of the other.
pub fn tail_equiv(pres: &Presentation, f: GenId, g: GenId) -> Result<bool, QuotientError> {
    if pres.level(f) != pres.level(g) {
        return Err(QuotientError::LevelMismatch);
    }
    if f == g {
        return Ok(true);
    }
    let tf = path::tail_states(pres, &Path::generator(pres, f));
    let tg = path::tail_states(pres, &Path::generator(pres, g));
    Ok(tf
        .iter()
        .any(|a| tg.iter().any(|b| path::equals(pres, a, b))))
}

/// One edge of a quotient digraph: a tail-equivalence class of level-k
/// generators with component endpoints.
#[derive(Debug, Clone)]
pub struct EdgeClass {
    pub rep: GenId,
    pub members: Vec<GenId>,
    pub range: usize,
    pub source: usize,
}

/// The quotient digraph at one level.
#[derive(Debug, Clone)]
pub struct QuotientDigraph {
    pub level: u32,
    pub vertices: Vec<Vec<VertexId>>,
    pub edges: Vec<EdgeClass>,
}

/// Builds the level-k quotient: component vertices, tail-equivalence
/// classes of the level-k generators as edges. Every longer length-ω^k
/// path is tail-equivalent to its final generator, so generators
/// represent all edges.
pub fn falpha(pres: &Presentation, k: u32) -> QuotientDigraph {
    let comps = components(pres, k);
    let mut edges: Vec<EdgeClass> = Vec::new();
    for g in pres.gens_at_level(k) {
        match edges
            .iter_mut()
            .find(|c| tail_equiv(pres, c.rep, g).unwrap_or(false))
        {
            Some(class) => {
                class.members.push(g);
                if pres.gen_name(g) < pres.gen_name(class.rep) {
                    class.rep = g;
                }
            }
            None => {
                let d = pres.gen(g);
                edges.push(EdgeClass {
                    rep: g,
                    members: vec![g],
                    range: component_of(&comps, d.range),
                    source: component_of(&comps, d.source),
                });
            }
        }
    }
    edges.sort_by(|a, b| pres.gen_name(a.rep).cmp(pres.gen_name(b.rep)));
    QuotientDigraph {
        level: k,
        vertices: comps,
        edges,
    }
}

/// Elementary cycles (edges composable in paper order, sources pairwise
/// distinct) that admit no entry. An entry to a cycle is an edge, other
/// than the cycle edge there, sharing a range with some cycle edge.
pub fn cycles_without_entry(d: &QuotientDigraph) -> Vec<Vec<usize>> {
    let mut result = Vec::new();
    for cycle in elementary_cycles(d) {
        let has_entry = cycle.iter().any(|&j| {
            let rj = d.edges[j].range;
            d.edges
                .iter()
                .enumerate()
                .any(|(x, e)| x != j && e.range == rj)
        });
        if !has_entry {
            result.push(cycle);
        }
    }
    result
}

/// Vertex-simple cycles as edge-index sequences μ₁…μₙ with
/// s(μ_j) = r(μ_{j+1}) and s(μₙ) = r(μ₁). Each cycle is produced once,
/// anchored at its minimal vertex.
fn elementary_cycles(d: &QuotientDigraph) -> Vec<Vec<usize>> {
    let mut cycles = Vec::new();
    let vn = d.vertices.len();
    for start in 0..vn {
        // search backwards: extend the path at its source end
        let mut stack: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
        stack.push((Vec::new(), {
            let mut seen = vec![false; vn];
            seen[start] = true;
            seen
        }));
        while let Some((path_edges, seen)) = stack.pop() {
            let at = match path_edges.last() {
                Some(&j) => d.edges[j].source,
                None => start,
            };
            for (j, e) in d.edges.iter().enumerate() {
                if e.range != at {
                    continue;
                }
                if e.source == start && !path_edges.is_empty() || e.source == start && at == start {
                    let mut cycle = path_edges.clone();
                    cycle.push(j);
                    cycles.push(cycle);
                    continue;
                }
                if e.source < start || seen[e.source] {
                    continue;
                }
                let mut cycle = path_edges.clone();
                cycle.push(j);
                let mut seen2 = seen.clone();
                seen2[e.source] = true;
                stack.push((cycle, seen2));
            }
        }
    }
    cycles
}

/// A path μ₁…μ_m in the quotient with range `w`, m ≥ n, whose last edge
/// differs from every earlier edge. Exists whenever every cycle has an
/// entry; found by depth-bounded backward search.
pub fn digraph_nonreturning(
    d: &QuotientDigraph,
    w: usize,
    n: usize,
) -> Result<Vec<usize>, QuotientError> {
    let cwe = cycles_without_entry(d);
    if !cwe.is_empty() {
        return Err(QuotientError::CycleWithoutEntry(format!(
            "cycle through edge index {}",
            cwe[0][0]
        )));
    }
    if !d.edges.iter().any(|e| e.range == w) {
        return Err(QuotientError::NoIncomingEdge);
    }
    let cap = n + d.edges.len() + d.vertices.len() + 4;
    fn dfs(
        d: &QuotientDigraph,
        at: usize,
        seq: &mut Vec<usize>,
        n: usize,
        cap: usize,
    ) -> bool {
        if seq.len() >= n {
            let last = *seq.last().unwrap();
            if seq[..seq.len() - 1].iter().all(|&j| j != last) {
                return true;
            }
        }
        if seq.len() >= cap {
            return false;
        }
        for (j, e) in d.edges.iter().enumerate() {
            if e.range != at {
                continue;
            }
            seq.push(j);
            if dfs(d, e.source, seq, n, cap) {
                return true;
            }
            seq.pop();
        }
        false
    }
    let mut seq = Vec::new();
    if dfs(d, w, &mut seq, n.max(1), cap) {
        Ok(seq)
    } else {
        Err(QuotientError::NotFound)
    }
}

/// Breadth-first connector search: the shortest path f (as a generator
/// word, possibly empty) with r(f) = `target` and s(f) = some wanted
/// vertex, through generators of level < k.
fn connector(
    pres: &Presentation,
    target: VertexId,
    wanted: VertexId,
    k: u32,
) -> Option<Vec<GenId>> {
    use std::collections::VecDeque;
    let mut prev: Vec<Option<(VertexId, GenId)>> = vec![None; pres.vertex_count()];
    let mut seen = vec![false; pres.vertex_count()];
    let mut queue = VecDeque::new();
    seen[target.0 as usize] = true;
    queue.push_back(target);
    while let Some(u) = queue.pop_front() {
        if u == wanted {
            let mut word = Vec::new();
            let mut cur = u;
            while let Some((back, g)) = prev[cur.0 as usize] {
                word.push(g);
                cur = back;
            }
            word.reverse();
            return Some(word);
        }
        for g in pres.gens_below_level(k) {
            let dgen = pres.gen(g);
            if dgen.range == u && !seen[dgen.source.0 as usize] {
                seen[dgen.source.0 as usize] = true;
                prev[dgen.source.0 as usize] = Some((u, g));
                queue.push_back(dgen.source);
            }
        }
    }
    None
}

/// Assembles a non-returning path of length ω^k·m, m ≥ n, with range
/// `v`: a non-returning quotient path [g₁]…[g_m] is lifted by choosing,
/// per step, a tail g_j^{β_j} and a connector h_j given by the
/// condition (V) search, and u = p₁…p_m with p_j = h_j·g_j^{β_j}.
pub fn build_nonreturning(
    pres: &Presentation,
    v: VertexId,
    n: usize,
    k: u32,
) -> Result<Path, QuotientError> {
    let d = falpha(pres, k);
    let comps = &d.vertices;
    let w = component_of(comps, v);
    let class_path = digraph_nonreturning(&d, w, n)?;
    let omega_k = Ordinal::omega_pow(&Ordinal::from_nat(k as u64));
    let mut pieces: Vec<Path> = Vec::new();
    let mut target = v;
    for &cls in &class_path {
        let rep = d.edges[cls].rep;
        let gen_path = Path::generator(pres, rep);
        let mut found = None;
        for tau in path::tail_states(pres, &gen_path) {
            if let Some(word) = connector(pres, target, tau.range(), k) {
                let h = if word.is_empty() {
                    Path::identity(target)
                } else {
                    Path::from_word(pres, &word).expect("connector word is composable")
                };
                found = Some((h, tau));
                break;
            }
        }
        let Some((h, tau)) = found else {
            return Err(QuotientError::NotConstructible(format!(
                "no connector from a tail of {} to {}",
                pres.gen_name(rep),
                pres.vertex_name(target)
            )));
        };
        let piece = path::compose(pres, &h, &tau).expect("connector meets the tail");
        debug_assert_eq!(path::length(pres, &piece), omega_k);
        target = piece.source(pres);
        pieces.push(piece);
    }
    let mut u = pieces[0].clone();
    for piece in &pieces[1..] {
        u = path::compose(pres, &u, piece).expect("pieces chain up");
    }
    debug_assert_eq!(u.range(), v);
    debug_assert_eq!(
        path::length(pres, &u),
        omega_k.mul(&Ordinal::from_nat(class_path.len() as u64))
    );
    Ok(u)
}

/// A counterexample to the non-returning property: `f · tail ∈ eΛ`.
#[derive(Debug, Clone)]
pub struct Violation {
    pub f: Path,
    pub tail: Path,
}

/// Bounded check of the non-returning property for `e` of length
/// ω^k·n: quantifies f over words of at most `depth` generators with
/// ω^k ≤ d(f) < ω^k·n, and the tail stage over the finite tail-value
/// set of e below ω^k. `None` means no violation within the bound.
pub fn check_nonreturning_bounded(
    pres: &Presentation,
    e: &Path,
    k: u32,
    depth: usize,
) -> Result<Option<Violation>, QuotientError> {
    let len = path::length(pres, e);
    let wk = Ordinal::omega_pow(&Ordinal::from_nat(k as u64));
    let n = match len.terms() {
        [(exp, c)] if *exp == Ordinal::from_nat(k as u64) => *c,
        _ => return Err(QuotientError::BadLength),
    };
    if n == 1 {
        return Ok(None);
    }
    let upper = wk.mul(&Ordinal::from_nat(n));
    // tail values at stages β < ω^k live inside the first block
    let mut tails: Vec<Path> = Vec::new();
    for bt in path::block_tails_of(pres, &e.blocks()[0]) {
        let mut blocks = vec![bt];
        blocks.extend_from_slice(&e.blocks()[1..]);
        let tau = path::path_from_blocks(pres, blocks, e.range());
        if !tails.iter().any(|t| path::equals(pres, t, &tau)) {
            tails.push(tau);
        }
    }
    // candidate prefixes f: words of up to `depth` generators
    let gens: Vec<GenId> = pres.gens().filter(|&g| pres.level(g) <= k).collect();
    let mut stack: Vec<Path> = gens
        .iter()
        .map(|&g| Path::generator(pres, g))
        .collect();
    stack.reverse();
    let mut letters: Vec<usize> = vec![1; stack.len()];
    while let Some(f) = stack.pop() {
        let used = letters.pop().unwrap();
        let lf = path::length(pres, &f);
        if lf >= upper {
            continue;
        }
        if lf >= wk {
            for tau in &tails {
                if f.source(pres) != tau.range() {
                    continue;
                }
                let cand = path::compose(pres, &f, tau).expect("sources matched");
                let (head, _) = path::split(pres, &cand, &len).expect("cand is longer than e");
                if path::equals(pres, &head, e) {
                    return Ok(Some(Violation {
                        f,
                        tail: tau.clone(),
                    }));
                }
            }
        }
        if used < depth {
            for &g in &gens {
                if pres.gen(g).range == f.source(pres) {
                    let ext = path::compose(pres, &f, &Path::generator(pres, g))
                        .expect("range matched");
                    stack.push(ext);
                    letters.push(used + 1);
                }
            }
        }
    }
    Ok(None)
}
