//! Digraph specialization checked against brute-force oracles.
//!
//! For pure level-0 presentations the general machinery must collapse
//! to ordinary digraph combinatorics: the level-0 quotient is the graph
//! itself, exhaustiveness agrees with a prefix-tree oracle, and
//! 0-regularity is the usual no-source condition.

mod common;

use ordgraph::path::{self, Path};
use ordgraph::presentation::{GenId, Presentation};
use ordgraph::quotient;
use ordgraph::regularity::{self, Trilean};
use rand::Rng;

/// Edge words from `v` (range-side first), as plain id sequences.
fn words_from(pres: &Presentation, v: ordgraph::presentation::VertexId, max_len: usize) -> Vec<Vec<GenId>> {
    let mut out: Vec<Vec<GenId>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<GenId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let at = match w.last() {
                Some(&g) => pres.gen(g).source,
                None => v,
            };
            for g in pres.gens_at_level(0) {
                if pres.gen(g).range == at {
                    let mut ext = w.clone();
                    ext.push(g);
                    out.push(ext.clone());
                    next.push(ext);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Prefix-tree oracle: F is exhaustive iff every maximal path from v of
/// length at most max(F) passes through (extends a member of) F.
fn oracle_exhaustive(pres: &Presentation, v: ordgraph::presentation::VertexId, set: &[Vec<GenId>]) -> bool {
    let max_len = set.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut stack: Vec<Vec<GenId>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        let at = match w.last() {
            Some(&g) => pres.gen(g).source,
            None => v,
        };
        let extensions: Vec<GenId> = pres
            .gens_at_level(0)
            .filter(|&g| pres.gen(g).range == at)
            .collect();
        if w.len() == max_len || extensions.is_empty() {
            // maximal: some member must be a prefix of w
            if !set.iter().any(|e| w.len() >= e.len() && w[..e.len()] == e[..]) {
                return false;
            }
            continue;
        }
        for g in extensions {
            let mut ext = w.clone();
            ext.push(g);
            stack.push(ext);
        }
    }
    true
}

fn word_path(pres: &Presentation, v: ordgraph::presentation::VertexId, w: &[GenId]) -> Path {
    if w.is_empty() {
        Path::identity(v)
    } else {
        Path::from_word(pres, w).unwrap()
    }
}

#[test]
fn falpha0_is_isomorphic_to_the_digraph() {
    let mut r = common::rng(0xd16);
    for _ in 0..50 {
        let pres = common::random_digraph(&mut r, 5, 8);
        let d = quotient::falpha(&pres, 0);
        assert_eq!(d.vertices.len(), pres.vertex_count());
        assert_eq!(d.edges.len(), pres.gens_at_level(0).count());
        // singleton components in vertex order give the isomorphism
        for (i, comp) in d.vertices.iter().enumerate() {
            assert_eq!(comp.len(), 1);
            assert_eq!(comp[0].0 as usize, i);
        }
        for class in &d.edges {
            assert_eq!(class.members.len(), 1);
            let e = pres.gen(class.rep);
            assert_eq!(d.vertices[class.range][0], e.range);
            assert_eq!(d.vertices[class.source][0], e.source);
        }
    }
}

#[test]
fn exhaustiveness_matches_the_prefix_oracle() {
    let mut r = common::rng(0xe1a);
    let mut agreements = 0;
    for _ in 0..50 {
        let pres = common::random_digraph(&mut r, 5, 8);
        for v in pres.vertices() {
            let mut universe = words_from(&pres, v, 2);
            universe.retain(|w| !w.is_empty());
            if universe.len() > 12 {
                universe.truncate(12);
            }
            let mut candidates: Vec<Vec<Vec<GenId>>> = Vec::new();
            if universe.len() <= 4 {
                // all subsets
                for mask in 0..(1u32 << universe.len()) {
                    let subset: Vec<Vec<GenId>> = universe
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, w)| w.clone())
                        .collect();
                    candidates.push(subset);
                }
            } else {
                candidates.push(Vec::new());
                for i in 0..universe.len() {
                    candidates.push(vec![universe[i].clone()]);
                    for j in i + 1..universe.len() {
                        candidates.push(vec![universe[i].clone(), universe[j].clone()]);
                    }
                }
                for _ in 0..10 {
                    let size = r.gen_range(3..=5.min(universe.len()));
                    let mut pick = universe.clone();
                    let mut subset = Vec::new();
                    for _ in 0..size {
                        subset.push(pick.remove(r.gen_range(0..pick.len())));
                    }
                    candidates.push(subset);
                }
            }
            for subset in candidates {
                let expected = oracle_exhaustive(&pres, v, &subset);
                let paths: Vec<Path> = subset
                    .iter()
                    .map(|w| word_path(&pres, v, w))
                    .collect();
                let got = regularity::is_exhaustive(&pres, v, &paths, 64).unwrap();
                assert_eq!(
                    got,
                    Trilean::from_bool(expected),
                    "vertex {} set {:?}",
                    pres.vertex_name(v),
                    subset
                        .iter()
                        .map(|w| w.iter().map(|&g| pres.gen_name(g)).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                );
                agreements += 1;
            }
        }
    }
    assert!(agreements > 1000, "only {agreements} comparisons");
}

/// True when a directed cycle sits behind `w`, so arbitrarily long
/// paths into `w` exist; otherwise returns the longest path length.
fn backward_supply(d: &quotient::QuotientDigraph, w: usize) -> Result<usize, ()> {
    // vertices that reach w
    let mut reach = vec![false; d.vertices.len()];
    reach[w] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for e in &d.edges {
            if reach[e.range] && !reach[e.source] {
                reach[e.source] = true;
                changed = true;
            }
        }
    }
    // longest path into each reachable vertex; a revisit means a cycle
    fn longest(
        d: &quotient::QuotientDigraph,
        reach: &[bool],
        u: usize,
        open: &mut Vec<bool>,
        memo: &mut Vec<Option<usize>>,
    ) -> Result<usize, ()> {
        if let Some(m) = memo[u] {
            return Ok(m);
        }
        if open[u] {
            return Err(());
        }
        open[u] = true;
        let mut best = 0;
        for e in d.edges.iter().filter(|e| e.range == u && reach[e.range]) {
            best = best.max(1 + longest(d, reach, e.source, open, memo)?);
        }
        open[u] = false;
        memo[u] = Some(best);
        Ok(best)
    }
    let mut open = vec![false; d.vertices.len()];
    let mut memo = vec![None; d.vertices.len()];
    longest(d, &reach, w, &mut open, &mut memo)
}

#[test]
fn nonreturning_outputs_satisfy_the_raeburn_criterion() {
    let mut r = common::rng(0x2ae);
    let mut produced = 0;
    for _ in 0..50 {
        let pres = common::random_digraph(&mut r, 5, 8);
        let d = quotient::falpha(&pres, 0);
        if !quotient::cycles_without_entry(&d).is_empty() {
            continue;
        }
        for w in 0..d.vertices.len() {
            for n in 1..=3 {
                match quotient::digraph_nonreturning(&d, w, n) {
                    Ok(seq) => {
                        assert!(seq.len() >= n);
                        let last = *seq.last().unwrap();
                        assert!(seq[..seq.len() - 1].iter().all(|&j| j != last));
                        assert_eq!(d.edges[seq[0]].range, w);
                        for pair in seq.windows(2) {
                            assert_eq!(d.edges[pair[0]].source, d.edges[pair[1]].range);
                        }
                        produced += 1;
                    }
                    Err(quotient::QuotientError::NoIncomingEdge) => {
                        assert!(d.edges.iter().all(|e| e.range != w));
                    }
                    Err(quotient::QuotientError::NotFound) => {
                        // honest only when the backward supply of paths
                        // is finite and too short
                        match backward_supply(&d, w) {
                            Ok(longest) => assert!(
                                longest < n,
                                "paths of length {longest} ≥ {n} exist but were not found"
                            ),
                            Err(()) => panic!(
                                "a backward cycle guarantees length {n}, search failed"
                            ),
                        }
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }
    assert!(produced > 20, "only {produced} paths produced");
}

#[test]
fn zero_regularity_is_the_source_condition() {
    let mut r = common::rng(0x02e6);
    for _ in 0..50 {
        let pres = common::random_digraph(&mut r, 5, 8);
        for v in pres.vertices() {
            let incoming = pres
                .gens_at_level(0)
                .filter(|&g| pres.gen(g).range == v)
                .count();
            let expected = incoming > 0; // finiteness is automatic
            assert_eq!(
                regularity::is_alpha_regular(&pres, v, 0, 64),
                Trilean::from_bool(expected)
            );
            assert_eq!(regularity::is_alpha_source(&pres, v, 0), incoming == 0);
        }
    }
}

/// The ordinal-graph non-returning property (no f with f·e^β ∈ eΛ) and
/// Raeburn's edge criterion (e_j ≠ e_n) genuinely differ: the former
/// asks for a full period, the latter for a repeated last edge. Only
/// one implication holds.
#[test]
fn def_and_raeburn_nonreturning_are_one_sided() {
    let mut r = common::rng(0x0e5);
    let mut both = 0;
    for _ in 0..40 {
        let pres = common::random_digraph(&mut r, 5, 8);
        for v in pres.vertices() {
            for w in words_from(&pres, v, 4) {
                if w.len() < 2 {
                    continue;
                }
                let raeburn = {
                    let last = *w.last().unwrap();
                    w[..w.len() - 1].iter().all(|&j| j != last)
                };
                let e = word_path(&pres, v, &w);
                let check =
                    quotient::check_nonreturning_bounded(&pres, &e, 0, w.len()).unwrap();
                if raeburn {
                    assert!(
                        check.is_none(),
                        "raeburn-non-returning word flagged: {:?}",
                        w.iter().map(|&g| pres.gen_name(g)).collect::<Vec<_>>()
                    );
                    both += 1;
                }
            }
        }
    }
    assert!(both > 50);

    // explicit counterexample to the converse: a·b·c·b repeats its last
    // edge but admits no period, so it is non-returning in the ordinal
    // graph sense
    let pres = ordgraph::presentation::parse_presentation(
        "abcb",
        "vertex p q s\nedge a : q -> p\nedge b : s -> q\nedge c : q -> s",
    )
    .unwrap();
    let w = [
        pres.gen_id("a").unwrap(),
        pres.gen_id("b").unwrap(),
        pres.gen_id("c").unwrap(),
        pres.gen_id("b").unwrap(),
    ];
    let e = Path::from_word(&pres, &w).unwrap();
    let raeburn_ok = false; // e_4 = e_2 = b
    assert!(!raeburn_ok);
    assert!(quotient::check_nonreturning_bounded(&pres, &e, 0, 4)
        .unwrap()
        .is_none());
}
