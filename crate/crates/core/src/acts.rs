//! Acts and the ways of comparing them.
//!
//! An act assigns a payoff to each block of a partition. Five comparisons are
//! provided:
//!
//! * [`leq_dominance`]: pointwise, only for acts on the same partition;
//! * [`leq_exp`]: by expected value, a total preorder;
//! * [`leq_valued`]: `α ⪯ β` when `α`'s partition refines `β`'s and every
//!   `α(e)` is at most `β(d_e)·v(e)/v(d_e)`; a partial order under which acts
//!   form a lattice ([`act_inf`], [`act_sup`]);
//! * [`leq_on_meet`]: compare both acts after downgrading to the common
//!   refinement `E∧D`;
//! * [`leq_on_join`]: compare both acts after upgrading to the common
//!   coarsening `E∨D`. Not transitive.
//!
//! Everything that divides by block values asks the valuation for a
//! positivity witness first and fails with [`Error::ZeroBlockValuation`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::lattice::{Element, Lattice};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::valuation::Valuation;

#[derive(Clone, PartialEq, Eq)]
pub struct Act {
    partition: Partition,
    /// One payoff per block, in block order.
    payoffs: Vec<Rational>,
}

impl fmt::Debug for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Act {
    /// An act from payoffs listed in the partition's block order.
    pub fn new(partition: Partition, payoffs: Vec<Rational>) -> Result<Act, Error> {
        if payoffs.len() != partition.len() {
            return Err(Error::PayoffCountMismatch {
                expected: partition.len(),
                found: payoffs.len(),
            });
        }
        Ok(Act { partition, payoffs })
    }

    /// An act from `(block, payoff)` pairs in any order, each block once.
    pub fn from_blocks<I>(partition: Partition, pairs: I) -> Result<Act, Error>
    where
        I: IntoIterator<Item = (Element, Rational)>,
    {
        let lattice = partition.lattice().clone();
        let mut slots: Vec<Option<Rational>> = alloc::vec![None; partition.len()];
        let mut given = 0;
        for (block, payoff) in pairs {
            lattice.check(block)?;
            let i = partition
                .position(block)
                .ok_or_else(|| Error::UnknownBlock(lattice.describe(block)))?;
            if slots[i].is_some() {
                return Err(Error::DuplicateBlock(lattice.describe(block)));
            }
            slots[i] = Some(payoff);
            given += 1;
        }
        let payoffs: Option<Vec<Rational>> = slots.into_iter().collect();
        match payoffs {
            Some(payoffs) => Ok(Act { partition, payoffs }),
            None => Err(Error::PayoffCountMismatch {
                expected: partition.len(),
                found: given,
            }),
        }
    }

    pub fn constant(partition: Partition, payoff: Rational) -> Act {
        let payoffs = alloc::vec![payoff; partition.len()];
        Act { partition, payoffs }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn lattice(&self) -> &Lattice {
        self.partition.lattice()
    }

    pub fn payoffs(&self) -> &[Rational] {
        &self.payoffs
    }

    pub fn payoff(&self, block: Element) -> Option<&Rational> {
        self.partition.position(block).map(|i| &self.payoffs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, &Rational)> + '_ {
        self.partition.blocks().zip(&self.payoffs)
    }

    /// Same partition, payoffs mapped through `f`.
    pub fn map_payoffs(&self, f: impl FnMut(&Rational) -> Rational) -> Act {
        Act {
            partition: self.partition.clone(),
            payoffs: self.payoffs.iter().map(f).collect(),
        }
    }

    /// `{a,c}: 3, {b}: 1` style rendering.
    pub fn describe(&self) -> String {
        let lattice = self.lattice();
        let parts: Vec<String> = self
            .iter()
            .map(|(b, p)| alloc::format!("{}: {}", lattice.describe(b), p))
            .collect();
        parts.join(", ")
    }

    /// `Σ α(e)·v(e)` over the blocks.
    pub fn expected_value(&self, v: &Valuation) -> Result<Rational, Error> {
        same_lattice(self.lattice(), v.lattice())?;
        Ok(self
            .partition
            .block_bits()
            .iter()
            .zip(&self.payoffs)
            .map(|(&b, p)| p * v.value_bits(b))
            .sum())
    }

    /// Downgrade to a finer partition: `β_E(e) = β(d_e)·v(e)/v(d_e)`. The
    /// best approximation of `self` from below among acts on `fine`.
    pub fn downgrade(&self, fine: &Partition, v: &Valuation) -> Result<Act, Error> {
        same_lattice(self.lattice(), v.lattice())?;
        let fine_pos = v.require_positive_on(fine)?;
        let own_pos = v.require_positive_on(&self.partition)?;
        let w = fine.refines(&self.partition)?.ok_or(Error::NotARefinement)?;
        let payoffs = w
            .coarse_of
            .iter()
            .enumerate()
            .map(|(i, &j)| &self.payoffs[j] * fine_pos.get(i) / own_pos.get(j))
            .collect();
        Ok(Act {
            partition: fine.clone(),
            payoffs,
        })
    }

    /// Upgrade to a coarser partition:
    /// `β^G(g) = max{β(x)·v(g)/v(x) : x ≤ g}`. The best approximation of
    /// `self` from above among acts on `coarse`.
    pub fn upgrade(&self, coarse: &Partition, v: &Valuation) -> Result<Act, Error> {
        same_lattice(self.lattice(), v.lattice())?;
        let coarse_pos = v.require_positive_on(coarse)?;
        let own_pos = v.require_positive_on(&self.partition)?;
        let w = self.partition.refines(coarse)?.ok_or(Error::NotARefinement)?;
        let payoffs = w
            .fine_of
            .iter()
            .enumerate()
            .map(|(j, below)| {
                below
                    .iter()
                    .map(|&i| &self.payoffs[i] * coarse_pos.get(j) / own_pos.get(i))
                    .max()
                    .expect("every coarse block covers a fine block")
            })
            .collect();
        Ok(Act {
            partition: coarse.clone(),
            payoffs,
        })
    }

    /// Lottery view: see [`crate::lotteries::act_to_lottery`].
    pub fn to_lottery(&self, v: &Valuation) -> Result<crate::lotteries::Lottery, Error> {
        crate::lotteries::act_to_lottery(self, v)
    }
}

fn same_lattice(a: &Lattice, b: &Lattice) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LatticeMismatch)
    }
}

pub fn expected_value(act: &Act, v: &Valuation) -> Result<Rational, Error> {
    act.expected_value(v)
}

/// Why a comparison came out false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// The left act's partition does not refine the right act's.
    NotARefinement,
    /// The inequality `lhs ≤ rhs` failed at the listed blocks. Which blocks
    /// and which quantities depends on the relation; see each `*_failure`.
    Blocks {
        blocks: Vec<Element>,
        lhs: Rational,
        rhs: Rational,
    },
}

/// `α ⪯_E β`: `β` dominates `α` pointwise. Errors with
/// [`Error::DomainMismatch`] when the partitions differ.
pub fn leq_dominance(alpha: &Act, beta: &Act) -> Result<bool, Error> {
    Ok(dominance_failure(alpha, beta)?.is_none())
}

/// First block where `α(e) > β(e)`.
pub fn dominance_failure(alpha: &Act, beta: &Act) -> Result<Option<Failure>, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    if alpha.partition != beta.partition {
        return Err(Error::DomainMismatch);
    }
    Ok(alpha
        .iter()
        .zip(&beta.payoffs)
        .find(|((_, a), b)| a > b)
        .map(|((e, a), b)| Failure::Blocks {
            blocks: alloc::vec![e],
            lhs: a.clone(),
            rhs: b.clone(),
        }))
}

/// `exp(α) ≤ exp(β)`.
pub fn leq_exp(alpha: &Act, beta: &Act, v: &Valuation) -> Result<bool, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    Ok(alpha.expected_value(v)? <= beta.expected_value(v)?)
}

/// `α ⪯_v β`: `E ≤ D` and `α(e) ≤ β(d_e)·v(e)/v(d_e)` for every `e ∈ E`.
pub fn leq_valued(alpha: &Act, beta: &Act, v: &Valuation) -> Result<bool, Error> {
    Ok(valued_failure(alpha, beta, v)?.is_none())
}

/// Witness for `¬(α ⪯_v β)`; block failures name `[e, d_e]` with
/// `lhs = α(e)` and `rhs = β(d_e)·v(e)/v(d_e)`.
pub fn valued_failure(alpha: &Act, beta: &Act, v: &Valuation) -> Result<Option<Failure>, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    same_lattice(alpha.lattice(), v.lattice())?;
    let pe = v.require_positive_on(&alpha.partition)?;
    let pd = v.require_positive_on(&beta.partition)?;
    let Some(w) = alpha.partition.refines(&beta.partition)? else {
        return Ok(Some(Failure::NotARefinement));
    };
    for (i, &j) in w.coarse_of.iter().enumerate() {
        let rhs = &beta.payoffs[j] * pe.get(i) / pd.get(j);
        if alpha.payoffs[i] > rhs {
            return Ok(Some(Failure::Blocks {
                blocks: alloc::vec![
                    alpha.partition.block(i).expect("index in range"),
                    beta.partition.block(j).expect("index in range"),
                ],
                lhs: alpha.payoffs[i].clone(),
                rhs,
            }));
        }
    }
    Ok(None)
}

/// Greatest lower bound under [`leq_valued`], an act on `E∧D`:
/// the pointwise minimum of both downgrades.
pub fn act_inf(alpha: &Act, beta: &Act, v: &Valuation) -> Result<Act, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    let z = alpha.partition.meet(&beta.partition)?;
    let a = alpha.downgrade(&z, v)?;
    let b = beta.downgrade(&z, v)?;
    let payoffs = a.payoffs.into_iter().zip(b.payoffs).map(|(x, y)| x.min(y)).collect();
    Ok(Act { partition: z, payoffs })
}

/// Least upper bound under [`leq_valued`], an act on `E∨D`:
/// the pointwise maximum of both upgrades.
pub fn act_sup(alpha: &Act, beta: &Act, v: &Valuation) -> Result<Act, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    let z = alpha.partition.join(&beta.partition)?;
    let a = alpha.upgrade(&z, v)?;
    let b = beta.upgrade(&z, v)?;
    let payoffs = a.payoffs.into_iter().zip(b.payoffs).map(|(x, y)| x.max(y)).collect();
    Ok(Act { partition: z, payoffs })
}

/// `α ◁ β`: for every nonzero `e∧d`, `α(e)/v(e) ≤ β(d)/v(d)`. This is the
/// comparison of the downgrades to `E∧D` whenever `v` is positive there.
pub fn leq_on_meet(alpha: &Act, beta: &Act, v: &Valuation) -> Result<bool, Error> {
    Ok(on_meet_failure(alpha, beta, v)?.is_none())
}

/// Witness for `¬(α ◁ β)`: blocks `[e, d]`, `lhs = α(e)/v(e)`,
/// `rhs = β(d)/v(d)`.
pub fn on_meet_failure(alpha: &Act, beta: &Act, v: &Valuation) -> Result<Option<Failure>, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    same_lattice(alpha.lattice(), v.lattice())?;
    let pe = v.require_positive_on(&alpha.partition)?;
    let pd = v.require_positive_on(&beta.partition)?;
    let eb = alpha.partition.block_bits();
    let db = beta.partition.block_bits();
    for (i, &e) in eb.iter().enumerate() {
        let lhs = &alpha.payoffs[i] / pe.get(i);
        for (j, &d) in db.iter().enumerate() {
            if e & d == 0 {
                continue;
            }
            let rhs = &beta.payoffs[j] / pd.get(j);
            if lhs > rhs {
                let lattice = alpha.lattice();
                return Ok(Some(Failure::Blocks {
                    blocks: alloc::vec![lattice.wrap(e), lattice.wrap(d)],
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// `α ◀ β`: for every block `w` of `E∨D`,
/// `max{α(x)/v(x) : x ≤ w} ≤ max{β(y)/v(y) : y ≤ w}`. This is the comparison
/// of the upgrades to `E∨D`. Reflexive, but not transitive.
pub fn leq_on_join(alpha: &Act, beta: &Act, v: &Valuation) -> Result<bool, Error> {
    Ok(on_join_failure(alpha, beta, v)?.is_none())
}

/// Witness for `¬(α ◀ β)`: block `[w]` with the two max ratios.
pub fn on_join_failure(alpha: &Act, beta: &Act, v: &Valuation) -> Result<Option<Failure>, Error> {
    same_lattice(alpha.lattice(), beta.lattice())?;
    same_lattice(alpha.lattice(), v.lattice())?;
    let pe = v.require_positive_on(&alpha.partition)?;
    let pd = v.require_positive_on(&beta.partition)?;
    let w = alpha.partition.join(&beta.partition)?;
    v.require_positive_on(&w)?;
    let we = alpha.partition.refines(&w)?.expect("E ≤ E∨D");
    let wd = beta.partition.refines(&w)?.expect("D ≤ E∨D");
    let max_ratio = |act: &Act, pos: &crate::valuation::PositiveBlocks, idx: &[usize]| {
        idx.iter()
            .map(|&i| &act.payoffs[i] / pos.get(i))
            .max()
            .expect("nonempty")
    };
    for k in 0..w.len() {
        let lhs = max_ratio(alpha, &pe, &we.fine_of[k]);
        let rhs = max_ratio(beta, &pd, &wd.fine_of[k]);
        if lhs > rhs {
            return Ok(Some(Failure::Blocks {
                blocks: alloc::vec![w.block(k).expect("index in range")],
                lhs,
                rhs,
            }));
        }
    }
    Ok(None)
}

/// Outcome of one directed comparison inside a [`ComparisonResult`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Failure),
    /// The relation does not apply, e.g. dominance across partitions or a
    /// zero-valued block.
    Undefined(Error),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn from(r: Result<Option<Failure>, Error>) -> Verdict {
        match r {
            Ok(None) => Verdict::Holds,
            Ok(Some(f)) => Verdict::Fails(f),
            Err(e) => Verdict::Undefined(e),
        }
    }
}

/// How the two acts' partitions relate under refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainRelation {
    Equal,
    /// Left partition is strictly finer.
    Finer,
    /// Left partition is strictly coarser.
    Coarser,
    Incomparable,
}

/// A relation decided in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directed<T> {
    /// `left R right`
    pub forward: T,
    /// `right R left`
    pub backward: T,
}

/// All comparisons between two acts, computed together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonResult {
    pub exp_left: Rational,
    pub exp_right: Rational,
    pub domains: DomainRelation,
    pub dominance: Directed<Verdict>,
    pub exp: Directed<bool>,
    pub valued: Directed<Verdict>,
    pub on_meet: Directed<Verdict>,
    pub on_join: Directed<Verdict>,
}

/// Runs every comparison in both directions. Per-relation problems (zero
/// block values, mismatched domains) are reported inside the result; only a
/// lattice mismatch is an error.
pub fn compare(left: &Act, right: &Act, v: &Valuation) -> Result<ComparisonResult, Error> {
    same_lattice(left.lattice(), right.lattice())?;
    same_lattice(left.lattice(), v.lattice())?;
    let exp_left = left.expected_value(v)?;
    let exp_right = right.expected_value(v)?;
    let domains = match (
        left.partition.is_finer_than(&right.partition)?,
        right.partition.is_finer_than(&left.partition)?,
    ) {
        (true, true) => DomainRelation::Equal,
        (true, false) => DomainRelation::Finer,
        (false, true) => DomainRelation::Coarser,
        (false, false) => DomainRelation::Incomparable,
    };
    let both = |f: fn(&Act, &Act, &Valuation) -> Result<Option<Failure>, Error>| Directed {
        forward: Verdict::from(f(left, right, v)),
        backward: Verdict::from(f(right, left, v)),
    };
    Ok(ComparisonResult {
        dominance: Directed {
            forward: Verdict::from(dominance_failure(left, right)),
            backward: Verdict::from(dominance_failure(right, left)),
        },
        exp: Directed {
            forward: exp_left <= exp_right,
            backward: exp_right <= exp_left,
        },
        valued: both(valued_failure),
        on_meet: both(on_meet_failure),
        on_join: both(on_join_failure),
        exp_left,
        exp_right,
        domains,
    })
}

/// `Σ β(d)·v(x)/v(d)` over the blocks `x` of `fine` below `d`, for each block
/// `d` of `coarse`; equals `β(d)` when `v` is additive. Returned in
/// `coarse`'s block order.
pub fn smeared_totals(beta: &Act, fine: &Partition, v: &Valuation) -> Result<Vec<Rational>, Error> {
    let down = beta.downgrade(fine, v)?;
    let w = fine.refines(&beta.partition)?.ok_or(Error::NotARefinement)?;
    Ok(w.fine_of
        .iter()
        .map(|below| below.iter().fold(Rational::zero(), |acc, &i| acc + &down.payoffs[i]))
        .collect())
}
