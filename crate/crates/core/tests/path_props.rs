//! Factorization identities, normal form and cancellation on sampled
//! paths from every builtin graph.

mod common;

use ordgraph::ordinal::Ordinal;
use ordgraph::path::{self, Extension, Path};
use ordgraph::presentation::Presentation;
use rand_chacha::ChaCha8Rng;

fn head(pres: &Presentation, e: &Path, a: &Ordinal) -> Path {
    path::split(pres, e, a).unwrap().0
}

fn tail(pres: &Presentation, e: &Path, a: &Ordinal) -> Path {
    path::split(pres, e, a).unwrap().1
}

fn sample_composable_pair(
    pres: &Presentation,
    r: &mut ChaCha8Rng,
) -> Option<(Path, Path)> {
    let e = common::random_path(pres, r, 3);
    let f = common::random_path_from(pres, r, e.source(pres), 3)?;
    Some((e, f))
}

#[test]
fn factorization_identity_suite() {
    let mut samples = 0;
    for pres in common::builtins() {
        let mut r = common::rng(0xfac7 + pres.gen_count() as u64);
        for _ in 0..90 {
            let Some((e, f)) = sample_composable_pair(&pres, &mut r) else {
                continue;
            };
            let ef = path::compose(&pres, &e, &f).unwrap();
            let de = path::length(&pres, &e);
            let alpha = common::random_at_most(&mut r, &de);
            let beta = common::random_at_most(&mut r, &alpha);

            // (a) α ≤ d(e): (ef)_α = e_α and (ef)^α = e^α f
            assert!(path::equals(
                &pres,
                &head(&pres, &ef, &alpha),
                &head(&pres, &e, &alpha)
            ));
            let rhs = path::compose(&pres, &tail(&pres, &e, &alpha), &f).unwrap();
            assert!(path::equals(&pres, &tail(&pres, &ef, &alpha), &rhs));

            // (c) α+β ≤ d(e) ⇒ (e^α)^β = e^{α+β}
            let gamma = common::random_at_most(&mut r, &alpha.left_sub(&de).unwrap());
            let ea = tail(&pres, &e, &alpha);
            assert!(path::equals(
                &pres,
                &tail(&pres, &ea, &gamma),
                &tail(&pres, &e, &alpha.add(&gamma))
            ));

            // (d) β ≤ α ≤ d(e): (e_α)_β = e_β
            let e_alpha = head(&pres, &e, &alpha);
            assert!(path::equals(
                &pres,
                &head(&pres, &e_alpha, &beta),
                &head(&pres, &e, &beta)
            ));
            // (d) (e_α)^β = (e^β)_{−β+α}
            let lhs = tail(&pres, &e_alpha, &beta);
            let shifted = beta.left_sub(&alpha).unwrap();
            let rhs = head(&pres, &tail(&pres, &e, &beta), &shifted);
            assert!(path::equals(&pres, &lhs, &rhs));

            samples += 1;
        }
    }
    assert!(samples >= 500, "only {samples} samples drawn");
}

#[test]
fn left_cancellation() {
    for pres in common::builtins() {
        let mut r = common::rng(0xca9ce1);
        for _ in 0..60 {
            let Some((f, g)) = sample_composable_pair(&pres, &mut r) else {
                continue;
            };
            let fg = path::compose(&pres, &f, &g).unwrap();
            // recover g by splitting at d(f); uniqueness of factorization
            let df = path::length(&pres, &f);
            let back = tail(&pres, &fg, &df);
            assert!(path::equals(&pres, &back, &g));
            // and the implication form on a second sample
            if let Some(h) = common::random_path_from(&pres, &mut r, f.source(&pres), 3) {
                let fh = path::compose(&pres, &f, &h).unwrap();
                if path::equals(&pres, &fg, &fh) {
                    assert!(path::equals(&pres, &g, &h));
                }
            }
        }
    }
}

#[test]
fn normal_blocks_round_trip() {
    let mut total = 0;
    for pres in common::builtins() {
        let mut r = common::rng(0xb10c);
        for _ in 0..50 {
            let e = common::random_path(&pres, &mut r, 4);
            let blocks = path::normal_blocks(&pres, &e).unwrap();
            // non-increasing ω-power lengths
            for pair in blocks.windows(2) {
                assert!(pair[0].0 >= pair[1].0);
            }
            for (len, _) in &blocks {
                assert!(len.omega_power_exponent().is_some());
            }
            // lengths agree with the CNF of d(e)
            let mut from_blocks = Ordinal::zero();
            for (len, _) in &blocks {
                from_blocks = from_blocks.add(len);
            }
            assert_eq!(from_blocks, path::length(&pres, &e));
            // recomposition
            let mut acc: Option<Path> = None;
            for (_, b) in &blocks {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => path::compose(&pres, &a, b).unwrap(),
                });
            }
            assert!(path::equals(&pres, &acc.unwrap(), &e));
            total += 1;
        }
    }
    assert!(total >= 300, "only {total} composites checked");
}

#[test]
fn extension_trichotomy_is_exhaustive_and_consistent() {
    for pres in common::builtins() {
        let mut r = common::rng(0x781c);
        for _ in 0..60 {
            let e = common::random_path(&pres, &mut r, 3);
            let f = common::random_path(&pres, &mut r, 3);
            let result = path::compare_extensions(&pres, &e, &f);
            let reverse = path::compare_extensions(&pres, &f, &e);
            match result {
                Extension::Equal => {
                    assert!(path::equals(&pres, &e, &f));
                    assert_eq!(reverse, Extension::Equal);
                }
                Extension::ProperPrefixOf => {
                    assert_eq!(reverse, Extension::ProperlyExtends);
                    let le = path::length(&pres, &e);
                    assert!(path::equals(&pres, &head(&pres, &f, &le), &e));
                }
                Extension::ProperlyExtends => {
                    assert_eq!(reverse, Extension::ProperPrefixOf);
                }
                Extension::Disjoint => {
                    assert_eq!(reverse, Extension::Disjoint);
                    assert!(!path::equals(&pres, &e, &f));
                }
            }
        }
    }
}

#[test]
fn equals_is_an_equivalence_on_samples() {
    for pres in common::builtins() {
        let mut r = common::rng(0xe9);
        let paths: Vec<Path> = (0..12).map(|_| common::random_path(&pres, &mut r, 3)).collect();
        for a in &paths {
            assert!(path::equals(&pres, a, a));
            for b in &paths {
                assert_eq!(path::equals(&pres, a, b), path::equals(&pres, b, a));
                for c in &paths {
                    if path::equals(&pres, a, b) && path::equals(&pres, b, c) {
                        assert!(path::equals(&pres, a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn tail_states_are_genuine_tails() {
    for pres in common::builtins() {
        let mut r = common::rng(0x7a11);
        for _ in 0..20 {
            let e = common::random_path(&pres, &mut r, 3);
            let de = path::length(&pres, &e);
            // every split tail shows up among the representatives
            let ts = path::tail_states(&pres, &e);
            for _ in 0..5 {
                let beta = {
                    let b = common::random_at_most(&mut r, &de);
                    if b == de {
                        Ordinal::zero()
                    } else {
                        b
                    }
                };
                let t = tail(&pres, &e, &beta);
                assert!(
                    ts.iter().any(|s| path::equals(&pres, s, &t)),
                    "missing tail at stage {beta} of {}",
                    e.display(&pres)
                );
            }
        }
    }
}
