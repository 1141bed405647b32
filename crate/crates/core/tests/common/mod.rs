//! Shared helpers for the integration suites: seeded generators for
//! ordinals, paths and digraphs, and the list of builtin graphs.
#![allow(dead_code)]

use ordgraph::ordinal::Ordinal;
use ordgraph::path::{self, Path};
use ordgraph::presentation::{builtin, Presentation, PresentationBuilder};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random CNF ordinal with nesting depth ≤ `depth`, coefficients ≤
/// `max_coef`, at most 3 terms.
pub fn random_ordinal(r: &mut ChaCha8Rng, depth: u32, max_coef: u64) -> Ordinal {
    let term_count = r.gen_range(0..=3);
    let mut exps: Vec<Ordinal> = (0..term_count)
        .map(|_| {
            if depth == 0 {
                Ordinal::zero()
            } else {
                random_ordinal(r, depth - 1, max_coef)
            }
        })
        .collect();
    exps.sort();
    exps.dedup();
    exps.reverse();
    let mut acc = Ordinal::zero();
    for e in exps {
        let c = r.gen_range(1..=max_coef);
        acc = acc.add(&Ordinal::omega_pow_times(&e, c));
    }
    acc
}

/// Uniform-ish ordinal strictly below `b` (requires b > 0).
pub fn random_strictly_below(r: &mut ChaCha8Rng, b: &Ordinal) -> Ordinal {
    assert!(!b.is_zero());
    let terms = b.terms();
    let (last_exp, last_coef) = terms.last().unwrap();
    let prefix = Ordinal::zero();
    let mut acc = prefix;
    // keep a random number of leading terms intact
    let keep = r.gen_range(0..terms.len());
    for (e, c) in &terms[..keep] {
        acc = acc.add(&Ordinal::omega_pow_times(e, *c));
    }
    if keep + 1 == terms.len() {
        // work below the last term
        let c2 = r.gen_range(0..*last_coef);
        if c2 > 0 {
            acc = acc.add(&Ordinal::omega_pow_times(last_exp, c2));
        }
        acc.add(&random_below_power(r, last_exp))
    } else {
        // truncated strictly inside: follow with something below the
        // next kept-out term
        let (e, c) = &terms[keep];
        let c2 = r.gen_range(0..*c);
        if c2 > 0 {
            acc = acc.add(&Ordinal::omega_pow_times(e, c2));
        }
        acc.add(&random_below_power(r, e))
    }
}

/// Random ordinal < ω^e.
pub fn random_below_power(r: &mut ChaCha8Rng, e: &Ordinal) -> Ordinal {
    if e.is_zero() {
        return Ordinal::zero();
    }
    let mut acc = Ordinal::zero();
    let mut bound = e.clone();
    for _ in 0..r.gen_range(0..=2u32) {
        if bound.is_zero() {
            break;
        }
        let exp = random_strictly_below(r, &bound);
        let c = r.gen_range(1..=3);
        acc = acc.add(&Ordinal::omega_pow_times(&exp, c));
        bound = exp;
    }
    acc
}

/// Random ordinal ≤ b.
pub fn random_at_most(r: &mut ChaCha8Rng, b: &Ordinal) -> Ordinal {
    if b.is_zero() || r.gen_bool(0.15) {
        return b.clone();
    }
    random_strictly_below(r, b)
}

pub fn builtins() -> Vec<Presentation> {
    [
        "interval_omega2",
        "two_loop",
        "two_plus_two",
        "long_path_trunc(2)",
        "long_path_trunc(3)",
        "cantor_trunc(1,2)",
        "cantor_trunc(2,2)",
    ]
    .iter()
    .map(|n| builtin(n).unwrap())
    .collect()
}

/// Random composable generator word of 1..=max_letters letters.
pub fn random_path(pres: &Presentation, r: &mut ChaCha8Rng, max_letters: usize) -> Path {
    let first = pres
        .gens()
        .nth(r.gen_range(0..pres.gen_count()))
        .expect("presentations have generators");
    let mut acc = Path::generator(pres, first);
    let budget = r.gen_range(1..=max_letters);
    for _ in 1..budget {
        let at = acc.source(pres);
        let options: Vec<_> = pres.gens().filter(|&g| pres.gen(g).range == at).collect();
        if options.is_empty() {
            break;
        }
        let g = options[r.gen_range(0..options.len())];
        acc = path::compose(pres, &acc, &Path::generator(pres, g)).unwrap();
    }
    acc
}

/// Random path starting at a given range vertex, or None when the
/// vertex has no incoming generators.
pub fn random_path_from(
    pres: &Presentation,
    r: &mut ChaCha8Rng,
    v: ordgraph::presentation::VertexId,
    max_letters: usize,
) -> Option<Path> {
    let options: Vec<_> = pres.gens().filter(|&g| pres.gen(g).range == v).collect();
    if options.is_empty() {
        return None;
    }
    let first = options[r.gen_range(0..options.len())];
    let mut acc = Path::generator(pres, first);
    let budget = r.gen_range(1..=max_letters);
    for _ in 1..budget {
        let at = acc.source(pres);
        let opts: Vec<_> = pres.gens().filter(|&g| pres.gen(g).range == at).collect();
        if opts.is_empty() {
            break;
        }
        let g = opts[r.gen_range(0..opts.len())];
        acc = path::compose(pres, &acc, &Path::generator(pres, g)).unwrap();
    }
    Some(acc)
}

/// Random path whose source is `v` (for pre-composition), or None when
/// no generator leaves from the right spot.
pub fn random_path_into(
    pres: &Presentation,
    r: &mut ChaCha8Rng,
    v: ordgraph::presentation::VertexId,
    max_letters: usize,
) -> Option<Path> {
    let options: Vec<_> = pres.gens().filter(|&g| pres.gen(g).source == v).collect();
    if options.is_empty() {
        return None;
    }
    let first = options[r.gen_range(0..options.len())];
    let mut acc = Path::generator(pres, first);
    let budget = r.gen_range(1..=max_letters);
    for _ in 1..budget {
        let at = acc.range();
        let opts: Vec<_> = pres.gens().filter(|&g| pres.gen(g).source == at).collect();
        if opts.is_empty() {
            break;
        }
        let g = opts[r.gen_range(0..opts.len())];
        acc = path::compose(pres, &Path::generator(pres, g), &acc).unwrap();
    }
    Some(acc)
}

/// Random digraph presentation with 1..=max_v vertices and 0..=max_e
/// edges.
pub fn random_digraph(r: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> Presentation {
    let nv = r.gen_range(1..=max_v);
    let ne = r.gen_range(0..=max_e);
    let mut b = PresentationBuilder::new("random_digraph");
    for i in 0..nv {
        b.vertex(format!("v{}", i));
    }
    for j in 0..ne {
        let s = r.gen_range(0..nv);
        let t = r.gen_range(0..nv);
        b.edge(format!("e{}", j), format!("v{}", s), format!("v{}", t));
    }
    b.build().unwrap()
}
