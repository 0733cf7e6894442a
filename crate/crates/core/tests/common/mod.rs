//! Helpers shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superspecial::classify::kind_of;
use superspecial::seeds::{product_theta, supersingular_lambdas};
use superspecial::symplectic::coset_reps;
use superspecial::theta::isogeny_step;
use superspecial::{PrimeField, SquaredThetaNullPoint};

/// Field for a test prime.
pub fn field(p: u64) -> PrimeField {
    PrimeField::new(p).expect("test prime")
}

/// Genus-3 null-points met by a seeded random walk from `E^3`.
pub fn random_nodes(p: u64, n: usize, seed: u64) -> Vec<SquaredThetaNullPoint> {
    let f = field(p);
    let e = supersingular_lambdas(f).unwrap()[0].theta.clone();
    let mut cur = product_theta(&e, &product_theta(&e, &e).unwrap()).unwrap();
    let table = coset_reps(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![cur.clone()];
    while out.len() < n {
        let c = rng.random_range(0..table.len());
        cur = isogeny_step(&table.plans()[c].apply(&cur)).unwrap();
        kind_of(3, cur.n_van()).unwrap();
        out.push(cur.clone());
    }
    out
}
