//! Lotteries and their translation to and from acts.
//!
//! An act together with an additive valuation induces a lottery over its
//! distinct payoffs: each payoff gets the value of the join of the blocks that
//! pay it. Conversely a lottery becomes an act on the atoms of a fresh Boolean
//! algebra with one atom per reward. Both directions preserve expected value
//! exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::acts::Act;
use crate::error::Error;
use crate::lattice::{Lattice, LatticeOptions, MAX_POINTS};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::valuation::Valuation;

/// A finitely supported distribution over distinct rational rewards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lottery {
    dist: BTreeMap<Rational, Rational>,
}

impl Lottery {
    /// Validates `(reward, probability)` pairs: at least one reward, no
    /// repeats, probabilities in `[0, 1]` summing to exactly 1.
    pub fn new<I>(entries: I) -> Result<Lottery, Error>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut dist = BTreeMap::new();
        for (reward, p) in entries {
            if p.is_negative() || p > Rational::one() {
                return Err(Error::ProbabilityOutOfRange(p));
            }
            if dist.contains_key(&reward) {
                return Err(Error::DuplicateReward(reward));
            }
            dist.insert(reward, p);
        }
        if dist.is_empty() {
            return Err(Error::EmptyLottery);
        }
        let sum: Rational = dist.values().sum();
        if !sum.is_one() {
            return Err(Error::ProbabilitySum(sum));
        }
        Ok(Lottery { dist })
    }

    /// Rewards in ascending order with their probabilities.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&Rational, &Rational)> {
        self.dist.iter()
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    /// Lotteries always have support.
    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn probability(&self, reward: &Rational) -> Rational {
        self.dist.get(reward).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Σ z·l(z)`.
    pub fn expected_value(&self) -> Rational {
        self.dist.iter().map(|(z, p)| z * p).sum()
    }
}

pub fn lottery_exp(l: &Lottery) -> Rational {
    l.expected_value()
}

/// The lottery of an act: payoff `x` gets `v(⋁{e : α(e) = x})`.
///
/// Needs a bounded additive valuation (a probability measure in the Boolean
/// case).
pub fn act_to_lottery(act: &Act, v: &Valuation) -> Result<Lottery, Error> {
    if act.lattice() != v.lattice() {
        return Err(Error::LatticeMismatch);
    }
    if !v.is_bounded() || !v.is_additive() {
        return Err(Error::NotBoundedAdditive);
    }
    let mut preimage: BTreeMap<&Rational, u64> = BTreeMap::new();
    for (block, payoff) in act.iter() {
        *preimage.entry(payoff).or_insert(0) |= block.bits();
    }
    Lottery::new(
        preimage
            .into_iter()
            .map(|(x, bits)| (x.clone(), v.value_bits(bits).clone())),
    )
}

/// An act built from a lottery, with everything it lives on.
#[derive(Debug, Clone)]
pub struct LotteryAct {
    pub lattice: Lattice,
    pub partition: Partition,
    pub act: Act,
    pub valuation: Valuation,
}

/// Builds `𝒫({s1..sn})` with one atom per reward (ascending reward order),
/// the atom partition, the act paying reward `i` on atom `si`, and the
/// valuation giving `si` the reward's probability.
///
/// With `prune_zero`, rewards of probability exactly 0 get no atom.
pub fn lottery_to_act(l: &Lottery, prune_zero: bool) -> Result<LotteryAct, Error> {
    let entries: Vec<(&Rational, &Rational)> = l.iter().filter(|(_, p)| !(prune_zero && p.is_zero())).collect();
    let names: Vec<String> = (1..=entries.len()).map(|i| format!("s{i}")).collect();
    let lattice = Lattice::boolean_with(&names, LatticeOptions { max_points: MAX_POINTS })?;
    // atoms come back in bit order, which is name order here
    let atoms = lattice.atoms()?;
    let partition = Partition::new(&lattice, atoms.iter().copied())?;
    let valuation = Valuation::from_atom_weights(
        &lattice,
        atoms.iter().zip(&entries).map(|(&a, (_, p))| (a, (*p).clone())),
    )?;
    let act = Act::from_blocks(
        partition.clone(),
        atoms.iter().zip(&entries).map(|(&a, (z, _))| (a, (*z).clone())),
    )?;
    Ok(LotteryAct {
        lattice,
        partition,
        act,
        valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::vec;

    fn three_uniform() -> (Lattice, Valuation) {
        let l = Lattice::boolean(&["s1", "s2", "s3"]).unwrap();
        let v = Valuation::from_atom_weights(&l, l.atoms().unwrap().into_iter().map(|a| (a, rat(1, 3)))).unwrap();
        (l, v)
    }

    #[test]
    fn expectations() {
        assert_eq!(Lottery::new([(int(7), int(1))]).unwrap().expected_value(), int(7));
        let l = Lottery::new([(int(5), rat(2, 3)), (int(7), rat(1, 3))]).unwrap();
        assert_eq!(l.expected_value(), rat(17, 3));
        let allais = Lottery::new([
            (int(0), rat(1, 100)),
            (int(2_500_000), rat(1, 10)),
            (int(500_000), rat(89, 100)),
        ])
        .unwrap();
        assert_eq!(lottery_exp(&allais), int(695_000));
    }

    #[test]
    fn validation() {
        assert_eq!(Lottery::new([]).unwrap_err(), Error::EmptyLottery);
        assert_eq!(
            Lottery::new([(int(1), rat(1, 2)), (int(1), rat(1, 2))]).unwrap_err(),
            Error::DuplicateReward(int(1))
        );
        assert_eq!(
            Lottery::new([(int(1), rat(3, 2)), (int(2), rat(-1, 2))]).unwrap_err(),
            Error::ProbabilityOutOfRange(rat(3, 2))
        );
        assert_eq!(
            Lottery::new([(int(1), rat(1, 2)), (int(2), rat(1, 4))]).unwrap_err(),
            Error::ProbabilitySum(rat(3, 4))
        );
    }

    #[test]
    fn act_lottery_merges_equal_payoffs() {
        let (l, v) = three_uniform();
        let atoms = Partition::new(&l, l.atoms().unwrap()).unwrap();
        let act = Act::new(atoms.clone(), vec![int(5), int(5), int(7)]).unwrap();
        let lot = act_to_lottery(&act, &v).unwrap();
        assert_eq!(lot.probability(&int(5)), rat(2, 3));
        assert_eq!(lot.probability(&int(7)), rat(1, 3));
        assert_eq!(lot.expected_value(), act.expected_value(&v).unwrap());

        let injective = Act::new(atoms.clone(), vec![int(1), int(2), int(3)]).unwrap();
        let lot = injective.to_lottery(&v).unwrap();
        assert!(lot.iter().all(|(_, p)| *p == rat(1, 3)));

        let constant = Act::constant(atoms, int(4));
        let lot = act_to_lottery(&constant, &v).unwrap();
        assert_eq!(lot, Lottery::new([(int(4), int(1))]).unwrap());
    }

    #[test]
    fn act_lottery_needs_probability() {
        let l = Lattice::boolean(&["x", "y"]).unwrap();
        let v = Valuation::from_values(&l, vec![int(0), int(1), int(1), int(2)]).unwrap();
        let act = Act::constant(Partition::top(&l).unwrap(), int(1));
        assert_eq!(act_to_lottery(&act, &v).unwrap_err(), Error::NotBoundedAdditive);
    }

    #[test]
    fn lottery_to_act_construction() {
        let point = lottery_to_act(&Lottery::new([(int(7), int(1))]).unwrap(), false).unwrap();
        assert_eq!(point.lattice.len(), 2);
        assert_eq!(point.act.payoffs(), &[int(7)]);

        let l = Lottery::new([(int(7), rat(1, 3)), (int(5), rat(2, 3))]).unwrap();
        let b = lottery_to_act(&l, false).unwrap();
        assert_eq!(b.lattice.points(), &[String::from("s1"), String::from("s2")]);
        assert_eq!(b.act.payoffs(), &[int(5), int(7)]);
        assert_eq!(b.valuation.value(b.lattice.point("s1").unwrap()).unwrap(), &rat(2, 3));
        assert_eq!(b.act.expected_value(&b.valuation).unwrap(), rat(17, 3));
        assert_eq!(act_to_lottery(&b.act, &b.valuation).unwrap(), l);
    }

    #[test]
    fn zero_probability_rewards() {
        let l = Lottery::new([(int(1), int(0)), (int(2), int(1))]).unwrap();
        let kept = lottery_to_act(&l, false).unwrap();
        assert_eq!(kept.partition.len(), 2);
        assert!(!kept.valuation.is_strictly_isotone());
        let pruned = lottery_to_act(&l, true).unwrap();
        assert_eq!(pruned.partition.len(), 1);
        assert_eq!(pruned.act.expected_value(&pruned.valuation).unwrap(), int(2));
    }

    #[test]
    fn all_zero_after_pruning_is_impossible() {
        // a valid lottery always keeps positive mass somewhere
        let l = Lottery::new([(int(3), int(1)), (int(4), int(0))]).unwrap();
        assert_eq!(lottery_to_act(&l, true).unwrap().act.payoffs(), &[int(3)]);
    }
}
