//! Seeded generators for random finite measure-preserving systems.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{cycles, Transformation};
use crate::space::{Exponent, FunctionRep, ProbabilitySpace};

/// A finite space with a weight-preserving permutation, a T-invariant exponent and a function.
#[derive(Debug, Clone)]
pub struct FiniteSystem {
    pub space: ProbabilitySpace,
    pub transformation: Transformation,
    pub exponent: Exponent,
    pub function: FunctionRep,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random permutation of `2..=max_atoms` atoms. Weights and exponent values
/// are constant on each cycle, so the map preserves `μ` and `p∘T = p` exactly.
pub fn random_finite_system<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> FiniteSystem {
    let n = rng.random_range(2..=max_atoms.max(2));
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);

    let orbits = cycles(&map);
    let masses: Vec<f64> = orbits.iter().map(|_| rng.random_range(0.5..2.0)).collect();
    let total: f64 = orbits.iter().zip(&masses).map(|(c, m)| m * c.len() as f64).sum();
    let mut weights = vec![0.0; n];
    let mut exponents = vec![0.0; n];
    for (cycle, mass) in orbits.iter().zip(&masses) {
        let w = mass / total;
        let p = rng.random_range(1.1..4.0);
        for &x in cycle {
            weights[x] = w;
            exponents[x] = p;
        }
    }
    let values = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
    FiniteSystem {
        space: ProbabilitySpace::finite(weights).expect("cycle masses are normalized"),
        transformation: Transformation::finite_map(map),
        exponent: Exponent::sampled(exponents).expect("exponents drawn from [1.1, 4)"),
        function: FunctionRep::sampled(values),
    }
}

/// Random strictly positive weights on `n` atoms, normalized.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
