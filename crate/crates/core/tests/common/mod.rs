//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use declat_core::oracle::random_positive_valuation;
use declat_core::{Act, Lattice, Partition, PartitionBudget, Rational, Valuation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `1..=n` as point names.
pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn powerset(n: usize) -> Lattice {
    Lattice::boolean(&names(n)).unwrap()
}

pub fn all_partitions(l: &Lattice) -> Vec<Partition> {
    Partition::enumerate_all(l, PartitionBudget::default()).unwrap()
}

/// A Boolean lattice on `1..=n` atoms with a strictly positive probability
/// valuation and all of its partitions.
pub struct Instance {
    pub lattice: Lattice,
    pub v: Valuation,
    pub partitions: Vec<Partition>,
}

impl Instance {
    pub fn random(rng: &mut TestRng, max_atoms: usize) -> Instance {
        let n = rng.gen_range(1..=max_atoms);
        let lattice = powerset(n);
        let v = random_positive_valuation(rng, &lattice, 9).unwrap();
        let partitions = all_partitions(&lattice);
        Instance { lattice, v, partitions }
    }

    pub fn partition(&self, rng: &mut TestRng) -> Partition {
        self.partitions.choose(rng).unwrap().clone()
    }

    /// An act on a random partition.
    pub fn act(&self, rng: &mut TestRng) -> Act {
        let p = self.partition(rng);
        act(rng, &p)
    }
}

/// A nonnegative rational with small numerator and denominator.
pub fn payoff(rng: &mut TestRng) -> Rational {
    Rational::new(rng.gen_range(0..=12).into(), rng.gen_range(1..=4).into())
}

pub fn act(rng: &mut TestRng, p: &Partition) -> Act {
    Act::new(p.clone(), (0..p.len()).map(|_| payoff(rng)).collect()).unwrap()
}

/// Each payoff multiplied by one of `0, 1/4, .., 1`.
pub fn shrink(rng: &mut TestRng, a: &Act) -> Act {
    a.map_payoffs(|x| x * Rational::new(rng.gen_range(0..=4).into(), 4.into()))
}

/// Each payoff multiplied by one of `1, 5/4, .., 2`.
pub fn grow(rng: &mut TestRng, a: &Act) -> Act {
    a.map_payoffs(|x| x * Rational::new(rng.gen_range(4..=8).into(), 4.into()))
}

/// A random partition refining `p`, taken as `p ∧ q` for random `q`.
pub fn finer(rng: &mut TestRng, inst: &Instance, p: &Partition) -> Partition {
    p.meet(&inst.partition(rng)).unwrap()
}

/// A random partition coarsening `p`.
pub fn coarser(rng: &mut TestRng, inst: &Instance, p: &Partition) -> Partition {
    p.join(&inst.partition(rng)).unwrap()
}
