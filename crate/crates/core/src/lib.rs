//! Decision theory over finite distributive lattices.
//!
//! An *act* assigns an exact rational payoff to every block of an algebraic
//! partition of a finite distributive lattice. Given a valuation on the
//! lattice, acts can be ranked by expected value, by dominance when they share
//! a domain, and by the valuation-weighted order [`acts::leq_valued`] which
//! compares acts on different (but comparable) partitions. Acts ordered this
//! way form a lattice whose meet and join are [`acts::act_inf`] and
//! [`acts::act_sup`].
//!
//! Lattices are represented by their poset of join-irreducible points: every
//! element is a down-set, stored as a bitset, so meet and join are set
//! intersection and union.
//!
//! The crate is `no_std` and needs only `alloc`. The `std` feature turns on
//! the standard library in the numeric dependencies.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod acts;
pub mod allais;
mod error;
pub mod lattice;
pub mod lotteries;
pub mod oracle;
pub mod partition;
pub mod rational;
pub mod valuation;

pub use acts::{Act, ComparisonResult, Failure, Verdict};
pub use allais::{AffineMap, AllaisInstance, AllaisThresholds};
pub use error::Error;
pub use lattice::{Element, Lattice, LatticeKind, LatticeOptions};
pub use lotteries::{Lottery, LotteryAct};
pub use partition::{Partition, PartitionBudget, Refinement};
pub use rational::{parse_rational, Rational};
pub use valuation::{BooleanValuationReport, PositiveBlocks, Valuation};

pub type Result<T, E = Error> = core::result::Result<T, E>;
