//! Paths of the ordinal graph generated by a presentation.
//!
//! A path is kept in block normal form: a sequence of blocks whose
//! lengths are non-increasing ω-powers. A block of length 1 is an edge;
//! a block of length ω^k is a pair (prefix, tail) of a path shorter than
//! ω^k and a level-k generator. The pair is not canonical — two pairs can
//! denote the same morphism — so equality is decided by unwinding both
//! tail chains until they meet on a common generator with equal
//! accumulated prefixes. Chains are eventually periodic, which makes the
//! search finite.

use std::collections::HashSet;

use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::presentation::{GenId, Presentation, VertexId};

/// One block of a path in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block {
    /// A level-0 generator, length 1.
    Edge(GenId),
    /// A length-ω^k block: `prefix` (length < ω^k) composed with the
    /// level-k generator `tail`.
    Limit { prefix: Vec<Block>, tail: GenId },
}

/// A morphism of the generated ordinal graph.
///
/// `at` is the range vertex; it carries the vertex of an identity path.
/// Derived `==` is representation equality; morphism equality is
/// [`equals`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    at: VertexId,
    blocks: Vec<Block>,
}

/// Outcome of [`compare_extensions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Equal,
    /// The left path is a proper prefix of the right one.
    ProperPrefixOf,
    /// The left path properly extends the right one.
    ProperlyExtends,
    Disjoint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("paths are not composable: source {0} differs from range {1}")]
    NonComposable(String, String),
    #[error("split position exceeds the path length")]
    SplitBeyondLength,
    #[error("operation undefined on identity paths")]
    IdentityPath,
}

pub fn block_level(pres: &Presentation, b: &Block) -> u32 {
    match b {
        Block::Edge(_) => 0,
        Block::Limit { tail, .. } => pres.level(*tail),
    }
}

pub fn block_length(pres: &Presentation, b: &Block) -> Ordinal {
    Ordinal::omega_pow(&Ordinal::from_nat(block_level(pres, b) as u64))
}

fn block_range(pres: &Presentation, b: &Block) -> VertexId {
    match b {
        Block::Edge(g) => pres.gen(*g).range,
        Block::Limit { prefix, tail } => match prefix.first() {
            Some(first) => block_range(pres, first),
            None => pres.gen(*tail).range,
        },
    }
}

fn block_source(pres: &Presentation, b: &Block) -> VertexId {
    match b {
        Block::Edge(g) => pres.gen(*g).source,
        Block::Limit { tail, .. } => pres.gen(*tail).source,
    }
}

impl Path {
    /// The identity morphism at `v` (length 0).
    pub fn identity(v: VertexId) -> Path {
        Path {
            at: v,
            blocks: Vec::new(),
        }
    }

    /// The path denoted by a single generator.
    pub fn generator(pres: &Presentation, g: GenId) -> Path {
        let block = if pres.level(g) == 0 {
            Block::Edge(g)
        } else {
            Block::Limit {
                prefix: Vec::new(),
                tail: g,
            }
        };
        Path {
            at: pres.gen(g).range,
            blocks: vec![block],
        }
    }

    /// Composes a word of generator names, range-side letter first.
    pub fn from_word(pres: &Presentation, word: &[GenId]) -> Result<Path, PathError> {
        let mut iter = word.iter();
        let Some(&first) = iter.next() else {
            return Err(PathError::IdentityPath);
        };
        let mut acc = Path::generator(pres, first);
        for &g in iter {
            acc = compose(pres, &acc, &Path::generator(pres, g))?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn range(&self) -> VertexId {
        self.at
    }

    pub fn source(&self, pres: &Presentation) -> VertexId {
        match self.blocks.last() {
            Some(b) => block_source(pres, b),
            None => self.at,
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    fn from_blocks(pres: &Presentation, blocks: Vec<Block>, fallback: VertexId) -> Path {
        let at = blocks
            .first()
            .map(|b| block_range(pres, b))
            .unwrap_or(fallback);
        Path { at, blocks }
    }

    /// Rendering with generator names; identities print as `(v)`.
    pub fn display(&self, pres: &Presentation) -> String {
        fn block_str(pres: &Presentation, b: &Block) -> String {
            match b {
                Block::Edge(g) => pres.gen_name(*g).to_string(),
                Block::Limit { prefix, tail } => {
                    if prefix.is_empty() {
                        pres.gen_name(*tail).to_string()
                    } else {
                        let inner: Vec<String> =
                            prefix.iter().map(|p| block_str(pres, p)).collect();
                        format!("({} {})", inner.join(" "), pres.gen_name(*tail))
                    }
                }
            }
        }
        if self.blocks.is_empty() {
            format!("({})", pres.vertex_name(self.at))
        } else {
            self.blocks
                .iter()
                .map(|b| block_str(pres, b))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// Ordinal length of a path: the sum of its block lengths.
pub fn length(pres: &Presentation, e: &Path) -> Ordinal {
    e.blocks
        .iter()
        .fold(Ordinal::zero(), |acc, b| acc.add(&block_length(pres, b)))
}

/// The rule word of a level ≥ 1 generator, as a path.
pub fn word_path(pres: &Presentation, g: GenId) -> Path {
    let rule = pres.gen(g).rule.as_ref().expect("generator has a rule");
    Path::from_word(pres, &rule.word).expect("rule word is nonempty and composable")
}

fn prepend_block(pres: &Presentation, b: Block, blocks: &mut Vec<Block>) {
    match blocks.first() {
        None => blocks.push(b),
        Some(first) => {
            if block_level(pres, &b) >= block_level(pres, first) {
                blocks.insert(0, b);
            } else {
                match &mut blocks[0] {
                    Block::Limit { prefix, .. } => prepend_block(pres, b, prefix),
                    Block::Edge(_) => unreachable!("edge blocks have minimal level"),
                }
            }
        }
    }
}

/// Category composition `e` then `f` (range-side factor first); the
/// result is renormalized, folding trailing low blocks of `e` into the
/// prefix of `f`'s first limit block.
pub fn compose(pres: &Presentation, e: &Path, f: &Path) -> Result<Path, PathError> {
    if e.source(pres) != f.range() {
        return Err(PathError::NonComposable(
            pres.vertex_name(e.source(pres)).to_string(),
            pres.vertex_name(f.range()).to_string(),
        ));
    }
    if e.blocks.is_empty() {
        return Ok(f.clone());
    }
    let mut blocks = f.blocks.clone();
    for b in e.blocks.iter().rev() {
        prepend_block(pres, b.clone(), &mut blocks);
    }
    Ok(Path {
        at: e.at,
        blocks,
    })
}

/// Splits a limit block at 0 < beta < ω^k, unfolding the tail chain as
/// far as the split position requires.
fn split_block(
    pres: &Presentation,
    prefix: &[Block],
    tail: GenId,
    beta: &Ordinal,
) -> (Vec<Block>, Block) {
    let mut prefix: Vec<Block> = prefix.to_vec();
    let mut tail = tail;
    loop {
        let pl = prefix
            .iter()
            .fold(Ordinal::zero(), |acc, b| acc.add(&block_length(pres, b)));
        if *beta <= pl {
            break;
        }
        let rule = pres.gen(tail).rule.as_ref().expect("limit tail has a rule");
        let mut appended = Vec::new();
        for &w in &rule.word {
            appended.push(match pres.level(w) {
                0 => Block::Edge(w),
                _ => Block::Limit {
                    prefix: Vec::new(),
                    tail: w,
                },
            });
        }
        for b in prefix.into_iter().rev() {
            prepend_block(pres, b, &mut appended);
        }
        prefix = appended;
        tail = rule.tail;
    }
    let anchor = match prefix.first() {
        Some(b) => block_range(pres, b),
        None => pres.gen(tail).range,
    };
    let prefix_path = Path::from_blocks(pres, prefix, anchor);
    let (head, rest) = split(pres, &prefix_path, beta).expect("beta ≤ prefix length");
    (
        head.blocks,
        Block::Limit {
            prefix: rest.blocks,
            tail,
        },
    )
}

/// Unique factorization: `e = head · tail` with `length(head) = a`.
pub fn split(pres: &Presentation, e: &Path, a: &Ordinal) -> Result<(Path, Path), PathError> {
    if *a > length(pres, e) {
        return Err(PathError::SplitBeyondLength);
    }
    let mut head: Vec<Block> = Vec::new();
    let mut rest: Vec<Block> = e.blocks.clone();
    let mut rem = a.clone();
    while !rem.is_zero() {
        let first_len = block_length(pres, &rest[0]);
        if rem >= first_len {
            head.push(rest.remove(0));
            rem = first_len.left_sub(&rem).expect("rem ≥ block length");
        } else {
            let (h, t) = match &rest[0] {
                Block::Edge(_) => unreachable!("0 < rem < 1 is impossible"),
                Block::Limit { prefix, tail } => split_block(pres, prefix, *tail, &rem),
            };
            head.extend(h);
            rest[0] = t;
            break;
        }
    }
    let head_path = Path::from_blocks(pres, head, e.at);
    let tail_path = Path::from_blocks(pres, rest, head_path.source(pres));
    Ok((head_path, tail_path))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// One side of the limit-block comparison: the accumulated prefix path
/// after n unfolding steps, with its length.
struct ChainSide<'a> {
    pres: &'a Presentation,
    tail: GenId,
    prefixes: Vec<Path>,
    lambdas: Vec<Ordinal>,
}

impl<'a> ChainSide<'a> {
    fn new(pres: &'a Presentation, prefix: &[Block], tail: GenId) -> ChainSide<'a> {
        let anchor = match prefix.first() {
            Some(b) => block_range(pres, b),
            None => pres.gen(tail).range,
        };
        let p0 = Path::from_blocks(pres, prefix.to_vec(), anchor);
        let l0 = length(pres, &p0);
        ChainSide {
            pres,
            tail,
            prefixes: vec![p0],
            lambdas: vec![l0],
        }
    }

    fn lasso(&self) -> &crate::presentation::Lasso {
        self.pres.lasso(self.tail).expect("limit tail has a chain")
    }

    fn state(&self, n: usize) -> GenId {
        self.lasso().state(n)
    }

    fn phase(&self, n: usize) -> usize {
        let l = self.lasso();
        if n < l.rho {
            n
        } else {
            l.rho + (n - l.rho) % l.cycle
        }
    }

    fn ensure(&mut self, n: usize) {
        while self.prefixes.len() <= n {
            let i = self.prefixes.len() - 1;
            let w = word_path(self.pres, self.state(i));
            let next = compose(self.pres, &self.prefixes[i], &w)
                .expect("chain prefixes stay composable");
            self.lambdas.push(length(self.pres, &next));
            self.prefixes.push(next);
        }
    }
}

/// Equality of two limit blocks of the same length ω^k: the tail chains
/// must meet on a common generator with equal accumulated prefixes.
/// Candidate meeting points are enumerated by merging the two strictly
/// increasing prefix-length sequences; the phase set of the two lassos
/// is finite and repeated phases reduce to earlier ones, so the walk is
/// cut off once it is exhausted.
fn equal_limit(
    pres: &Presentation,
    p1: &[Block],
    t1: GenId,
    p2: &[Block],
    t2: GenId,
) -> bool {
    debug_assert_eq!(pres.level(t1), pres.level(t2));
    if pres.gen(t1).source != pres.gen(t2).source {
        return false;
    }
    let mut s1 = ChainSide::new(pres, p1, t1);
    let mut s2 = ChainSide::new(pres, p2, t2);
    let (l1, l2) = (s1.lasso().clone(), s2.lasso().clone());
    let period = lcm(l1.cycle, l2.cycle);
    let phase_pairs = (l1.rho + l1.cycle) * (l2.rho + l2.cycle);
    let cap1 = l1.rho + period * (phase_pairs + 3) + 4;
    let cap2 = l2.rho + period * (phase_pairs + 3) + 4;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let (mut n, mut m) = (0usize, 0usize);
    while n <= cap1 && m <= cap2 {
        s1.ensure(n);
        s2.ensure(m);
        match s1.lambdas[n].cmp(&s2.lambdas[m]) {
            std::cmp::Ordering::Less => n += 1,
            std::cmp::Ordering::Greater => m += 1,
            std::cmp::Ordering::Equal => {
                if s1.state(n) == s2.state(m) {
                    let phase = (s1.phase(n), s2.phase(m));
                    if seen.insert(phase) && equals(pres, &s1.prefixes[n], &s2.prefixes[m]) {
                        return true;
                    }
                }
                n += 1;
                m += 1;
            }
        }
    }
    false
}

fn equal_block(pres: &Presentation, a: &Block, b: &Block) -> bool {
    match (a, b) {
        (Block::Edge(g), Block::Edge(h)) => g == h,
        (
            Block::Limit { prefix: p1, tail: t1 },
            Block::Limit { prefix: p2, tail: t2 },
        ) => equal_limit(pres, p1, *t1, p2, *t2),
        _ => false,
    }
}

/// Morphism equality in the presented category.
pub fn equals(pres: &Presentation, a: &Path, b: &Path) -> bool {
    if a == b {
        return true;
    }
    if a.range() != b.range() || a.source(pres) != b.source(pres) {
        return false;
    }
    if length(pres, a) != length(pres, b) {
        return false;
    }
    if a.blocks.len() != b.blocks.len() {
        return false;
    }
    a.blocks
        .iter()
        .zip(&b.blocks)
        .all(|(x, y)| equal_block(pres, x, y))
}

/// Trichotomy of the extension order: whether one path is a prefix of
/// the other, they are equal, or their extension sets are disjoint.
pub fn compare_extensions(pres: &Presentation, e: &Path, f: &Path) -> Extension {
    let le = length(pres, e);
    let lf = length(pres, f);
    match le.cmp(&lf) {
        std::cmp::Ordering::Equal => {
            if equals(pres, e, f) {
                Extension::Equal
            } else {
                Extension::Disjoint
            }
        }
        std::cmp::Ordering::Less => {
            let (head, _) = split(pres, f, &le).expect("le < lf");
            if equals(pres, e, &head) {
                Extension::ProperPrefixOf
            } else {
                Extension::Disjoint
            }
        }
        std::cmp::Ordering::Greater => {
            let (head, _) = split(pres, e, &lf).expect("lf < le");
            if equals(pres, f, &head) {
                Extension::ProperlyExtends
            } else {
                Extension::Disjoint
            }
        }
    }
}

/// Every tail value of a single block: `b^γ` for stages 0 ≤ γ < length.
/// For a limit block these come from the explicit prefix and from one
/// full turn of the tail chain's lasso, with suffixes of the rule words.
fn block_tails(pres: &Presentation, b: &Block) -> Vec<Block> {
    match b {
        Block::Edge(g) => vec![Block::Edge(*g)],
        Block::Limit { prefix, tail } => {
            let mut out = Vec::new();
            // stages inside the stored prefix (γ ≤ d(prefix))
            let anchor = match prefix.first() {
                Some(first) => block_range(pres, first),
                None => pres.gen(*tail).range,
            };
            let prefix_path = Path::from_blocks(pres, prefix.clone(), anchor);
            let mut fronts = tail_states(pres, &prefix_path);
            fronts.push(Path::identity(prefix_path.source(pres)));
            for front in fronts {
                out.push(Block::Limit {
                    prefix: front.blocks,
                    tail: *tail,
                });
            }
            // stages inside the chain: suffixes of each rule word around
            // one full lasso turn
            let lasso = pres.lasso(*tail).expect("limit tail has a chain").clone();
            for i in 0..lasso.states.len() {
                let st = lasso.states[i];
                out.push(Block::Limit {
                    prefix: Vec::new(),
                    tail: st,
                });
                let w = word_path(pres, st);
                let next = lasso.state(i + 1);
                let mut suffixes = tail_states(pres, &w);
                suffixes.push(Path::identity(w.source(pres)));
                for suffix in suffixes {
                    out.push(Block::Limit {
                        prefix: suffix.blocks,
                        tail: next,
                    });
                }
            }
            out
        }
    }
}

/// Tail values of a single block, for stage-bounded tail quantification.
pub fn block_tails_of(pres: &Presentation, b: &Block) -> Vec<Block> {
    block_tails(pres, b)
}

/// Assembles a path from normal-form blocks; `fallback` is the range
/// vertex used when `blocks` is empty.
pub fn path_from_blocks(pres: &Presentation, blocks: Vec<Block>, fallback: VertexId) -> Path {
    Path::from_blocks(pres, blocks, fallback)
}

/// One representative per value of `e^β` for 0 ≤ β < length(e),
/// deduplicated with [`equals`]. Identity paths have no tails.
pub fn tail_states(pres: &Presentation, e: &Path) -> Vec<Path> {
    let mut out: Vec<Path> = Vec::new();
    for j in 0..e.blocks.len() {
        let rest = &e.blocks[j + 1..];
        for bt in block_tails(pres, &e.blocks[j]) {
            let mut blocks = vec![bt];
            blocks.extend_from_slice(rest);
            let candidate = Path::from_blocks(pres, blocks, e.at);
            if !out.iter().any(|p| equals(pres, p, &candidate)) {
                out.push(candidate);
            }
        }
    }
    out
}

/// `{ r(e^β) : β < length(e) }`.
pub fn tail_vertices(pres: &Presentation, e: &Path) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::new();
    for t in tail_states(pres, e) {
        let v = t.range();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// The block normal form as (length, single-block path) pairs.
pub fn normal_blocks(
    pres: &Presentation,
    e: &Path,
) -> Result<Vec<(Ordinal, Path)>, PathError> {
    if e.is_identity() {
        return Err(PathError::IdentityPath);
    }
    Ok(e.blocks
        .iter()
        .map(|b| {
            let p = Path::from_blocks(pres, vec![b.clone()], e.at);
            (block_length(pres, b), p)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::builtin;

    fn ord(s: &str) -> Ordinal {
        crate::ordinal::parse_ordinal(s).unwrap()
    }

    #[test]
    fn lengths_and_endpoints() {
        let p = builtin("interval_omega2").unwrap();
        let v = p.vertex_id("v").unwrap();
        let id = Path::identity(v);
        assert!(length(&p, &id).is_zero());
        assert_eq!(id.range(), v);
        assert_eq!(id.source(&p), v);
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        assert_eq!(length(&p, &f), ord("w"));
        let tp = builtin("two_plus_two").unwrap();
        let g = Path::generator(&tp, tp.gen_id("g").unwrap());
        assert_eq!(length(&tp, &g), ord("w"));
        assert_eq!(g.source(&tp), tp.vertex_id("v").unwrap());
        assert_eq!(g.range(), tp.vertex_id("v").unwrap());
    }

    #[test]
    fn fig1_compose_absorbs() {
        let p = builtin("interval_omega2").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let ef = compose(&p, &e, &f).unwrap();
        assert_eq!(length(&p, &ef), ord("w"));
        assert!(equals(&p, &ef, &f));
        // identity law
        let id = Path::identity(e.range());
        assert!(equals(&p, &compose(&p, &id, &e).unwrap(), &e));
    }

    #[test]
    fn two_loop_relation() {
        let p = builtin("two_loop").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let g = Path::generator(&p, p.gen_id("g").unwrap());
        let efg = compose(&p, &compose(&p, &e, &f).unwrap(), &g).unwrap();
        assert!(equals(&p, &efg, &g));
        // but a single e does not absorb
        let eg = compose(&p, &e, &g).unwrap();
        assert!(!equals(&p, &eg, &g));
    }

    #[test]
    fn splits() {
        let p = builtin("interval_omega2").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let (h, t) = split(&p, &f, &Ordinal::zero()).unwrap();
        assert!(h.is_identity() && equals(&p, &t, &f));
        let (h, t) = split(&p, &f, &Ordinal::one()).unwrap();
        assert!(equals(&p, &h, &e));
        assert!(equals(&p, &t, &f));
        assert!(split(&p, &e, &ord("2")).is_err());

        let p = builtin("two_loop").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let g = Path::generator(&p, p.gen_id("g").unwrap());
        let (h, t) = split(&p, &g, &ord("2")).unwrap();
        assert!(equals(&p, &h, &compose(&p, &e, &f).unwrap()));
        assert!(equals(&p, &t, &g));
    }

    #[test]
    fn split_recompose_is_identity() {
        let p = builtin("two_plus_two").unwrap();
        let g = Path::generator(&p, p.gen_id("g").unwrap());
        let h = Path::generator(&p, p.gen_id("h").unwrap());
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let long = compose(&p, &compose(&p, &e, &g).unwrap(), &h).unwrap();
        for a in ["0", "1", "3", "w", "w+2", "w*2"] {
            let a = ord(a);
            let (x, y) = split(&p, &long, &a).unwrap();
            assert_eq!(length(&p, &x), a);
            assert!(equals(&p, &compose(&p, &x, &y).unwrap(), &long));
        }
    }

    #[test]
    fn extension_trichotomy() {
        let p = builtin("interval_omega2").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        assert_eq!(compare_extensions(&p, &e, &e), Extension::Equal);
        assert_eq!(compare_extensions(&p, &e, &f), Extension::ProperPrefixOf);
        assert_eq!(compare_extensions(&p, &f, &e), Extension::ProperlyExtends);
        let tp = builtin("two_plus_two").unwrap();
        let g = Path::generator(&tp, tp.gen_id("g").unwrap());
        let h = Path::generator(&tp, tp.gen_id("h").unwrap());
        assert_eq!(compare_extensions(&tp, &g, &h), Extension::Disjoint);
    }

    #[test]
    fn distinct_self_looping_tails_stay_distinct() {
        // both unfold to the same letter stream but never meet on a
        // common tail generator
        let text = "vertex v\nedge e : v -> v\n\
                    gen g1 level 1 : v -> v = e g1\n\
                    gen g2 level 1 : v -> v = e g2";
        let p = crate::presentation::parse_presentation("twins", text).unwrap();
        assert!(p.validate().is_valid());
        let g1 = Path::generator(&p, p.gen_id("g1").unwrap());
        let g2 = Path::generator(&p, p.gen_id("g2").unwrap());
        assert!(!equals(&p, &g1, &g2));
    }

    #[test]
    fn swapped_chain_pair() {
        // c·g1 = g2 and c·g2 = g1, so c·c·g1 = g1 while c·g1 ≠ g1
        let text = "vertex v\nedge c : v -> v\n\
                    gen g1 level 1 : v -> v = c g2\n\
                    gen g2 level 1 : v -> v = c g1";
        let p = crate::presentation::parse_presentation("swap", text).unwrap();
        assert!(p.validate().is_valid());
        let c = Path::generator(&p, p.gen_id("c").unwrap());
        let g1 = Path::generator(&p, p.gen_id("g1").unwrap());
        let g2 = Path::generator(&p, p.gen_id("g2").unwrap());
        let cg1 = compose(&p, &c, &g1).unwrap();
        assert!(equals(&p, &cg1, &g2));
        assert!(!equals(&p, &cg1, &g1));
        let ccg1 = compose(&p, &c, &cg1).unwrap();
        assert!(equals(&p, &ccg1, &g1));
    }

    #[test]
    fn tails() {
        let p = builtin("interval_omega2").unwrap();
        let v = p.vertex_id("v").unwrap();
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let ts = tail_states(&p, &f);
        assert!(ts.iter().any(|t| equals(&p, t, &f)));
        assert_eq!(tail_vertices(&p, &f), vec![v]);
        // single edge: only β = 0
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let ts = tail_states(&p, &e);
        assert_eq!(ts.len(), 1);
        assert_eq!(tail_vertices(&p, &e), vec![v]);

        let lp = builtin("long_path_trunc(3)").unwrap();
        let g0 = Path::generator(&lp, lp.gen_id("g0").unwrap());
        let g1 = Path::generator(&lp, lp.gen_id("g1").unwrap());
        let g2 = Path::generator(&lp, lp.gen_id("g2").unwrap());
        let ts = tail_states(&lp, &g0);
        assert!(ts.iter().any(|t| equals(&lp, t, &g1)));
        assert!(ts.iter().any(|t| equals(&lp, t, &g2)));
        // and indeed g0 split at 2 lands on g1
        let (_, t) = split(&lp, &g0, &ord("2")).unwrap();
        assert!(equals(&lp, &t, &g1));
    }

    #[test]
    fn normal_block_shapes() {
        let p = builtin("interval_omega2").unwrap();
        let e = Path::generator(&p, p.gen_id("e").unwrap());
        let f = Path::generator(&p, p.gen_id("f").unwrap());
        let nb = normal_blocks(&p, &e).unwrap();
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].0, Ordinal::one());
        let fee = compose(&p, &compose(&p, &f, &e).unwrap(), &e).unwrap();
        let nb = normal_blocks(&p, &fee).unwrap();
        let lens: Vec<Ordinal> = nb.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(lens, vec![ord("w"), ord("1"), ord("1")]);
        assert!(equals(&p, &nb[0].1, &f));
        let id = Path::identity(p.vertex_id("v").unwrap());
        assert!(normal_blocks(&p, &id).is_err());
    }
}
