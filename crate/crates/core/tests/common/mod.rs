#![allow(dead_code)]

use multirees::{Monomial, MonomialIdeal};
use proptest::prelude::*;
use rand::Rng;

/// An m-primary ideal: a pure power on every axis plus a few extra
/// generators strictly under the staircase corner.
pub fn random_m_primary<R: Rng>(
    rng: &mut R,
    d: usize,
    max_pure: u32,
    extra: usize,
) -> MonomialIdeal {
    let pure: Vec<u32> = (0..d).map(|_| rng.gen_range(1..=max_pure)).collect();
    let mut gens: Vec<Monomial> = (0..d)
        .map(|k| Monomial::pure_power(d, k, pure[k]))
        .collect();
    for _ in 0..extra {
        let exps: Vec<u32> = pure.iter().map(|&p| rng.gen_range(0..p)).collect();
        if exps.iter().any(|&e| e > 0) {
            gens.push(Monomial::new(exps));
        }
    }
    MonomialIdeal::new(d, gens).unwrap()
}

pub fn m_primary_strategy(
    d: usize,
    max_pure: u32,
    max_extra: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    (
        prop::collection::vec(1..=max_pure, d),
        prop::collection::vec(prop::collection::vec(0u32..max_pure, d), 0..=max_extra),
    )
        .prop_map(move |(pure, extra)| {
            let mut gens: Vec<Monomial> = (0..d)
                .map(|k| Monomial::pure_power(d, k, pure[k]))
                .collect();
            // the monomial 1 would make the unit ideal
            gens.extend(
                extra
                    .into_iter()
                    .filter(|e| e.iter().any(|&x| x > 0))
                    .map(Monomial::new),
            );
            MonomialIdeal::new(d, gens).unwrap()
        })
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
