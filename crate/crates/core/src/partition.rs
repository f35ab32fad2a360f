//! Algebraic partitions and the partition lattice.
//!
//! A partition of a lattice is a set of nonzero, pairwise-disjoint elements
//! whose join is the top. Partitions are ordered by refinement: `E ≤ D` when
//! every block of `E` lies below some block of `D`. Under that order they form
//! a bounded lattice; [`Partition::meet`] takes nonzero pairwise meets of
//! blocks and [`Partition::join`] takes the atoms of the intersection of the
//! two generated Boolean subalgebras.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::lattice::{Element, Lattice};

/// A validated partition. Blocks are kept in ascending bitset order, so
/// equal partitions are structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    lattice: Lattice,
    blocks: Vec<u64>,
}

impl core::fmt::Debug for Partition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.describe())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        if self.lattice != other.lattice {
            return None;
        }
        match (self.is_finer_bits(other), other.is_finer_bits(self)) {
            (true, true) => Some(core::cmp::Ordering::Equal),
            (true, false) => Some(core::cmp::Ordering::Less),
            (false, true) => Some(core::cmp::Ordering::Greater),
            (false, false) => None,
        }
    }
}

/// Witness that `fine ≤ coarse`.
///
/// `coarse_of[i]` is the index of the unique coarse block above fine block
/// `i`; `fine_of[j]` lists the fine blocks below coarse block `j`. Indices
/// follow each partition's block order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub coarse_of: Vec<usize>,
    pub fine_of: Vec<Vec<usize>>,
}

/// Limits for exhaustive enumeration of partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionBudget {
    /// Refuse lattices with more elements than this.
    pub max_elements: usize,
    /// Stop with [`Error::BudgetExceeded`] after this many partitions.
    pub max_partitions: u64,
}

impl Default for PartitionBudget {
    fn default() -> Self {
        PartitionBudget {
            max_elements: 4096,
            max_partitions: 1_000_000,
        }
    }
}

impl Partition {
    /// Validates `blocks` as a partition of `lattice`.
    pub fn new<I>(lattice: &Lattice, blocks: I) -> Result<Partition, Error>
    where
        I: IntoIterator<Item = Element>,
    {
        if lattice.is_trivial() {
            return Err(Error::TrivialLattice);
        }
        let mut bits: Vec<u64> = Vec::new();
        for b in blocks {
            lattice.check(b)?;
            if b.is_zero() {
                return Err(Error::ZeroBlock);
            }
            if bits.contains(&b.bits()) {
                return Err(Error::DuplicateBlock(lattice.describe(b)));
            }
            if let Some(&other) = bits.iter().find(|&&o| o & b.bits() != 0) {
                return Err(Error::OverlappingBlocks(
                    lattice.describe_bits(other),
                    lattice.describe(b),
                ));
            }
            bits.push(b.bits());
        }
        if bits.iter().fold(0, |acc, b| acc | b) != lattice.top_bits() {
            return Err(Error::JoinNotTop);
        }
        bits.sort_unstable();
        Ok(Partition {
            lattice: lattice.clone(),
            blocks: bits,
        })
    }

    pub(crate) fn from_sorted_bits(lattice: &Lattice, blocks: Vec<u64>) -> Partition {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        Partition {
            lattice: lattice.clone(),
            blocks,
        }
    }

    /// The greatest partition `{1}`.
    pub fn top(lattice: &Lattice) -> Result<Partition, Error> {
        if lattice.is_trivial() {
            return Err(Error::TrivialLattice);
        }
        Ok(Partition::from_sorted_bits(lattice, alloc::vec![lattice.top_bits()]))
    }

    /// The least partition. For a Boolean lattice this is the atom partition;
    /// otherwise it is the meet of every partition, found by enumeration.
    pub fn bottom(lattice: &Lattice, budget: PartitionBudget) -> Result<Partition, Error> {
        if lattice.is_boolean() {
            let atoms = lattice.atoms()?;
            return Partition::new(lattice, atoms);
        }
        let mut acc = Partition::top(lattice)?;
        for p in Partition::enumerate(lattice, budget)? {
            acc = acc.meet(&p?)?;
        }
        Ok(acc)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// Partitions always have at least one block.
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        self.blocks.iter().map(move |&b| self.lattice.wrap(b))
    }

    pub fn block(&self, index: usize) -> Option<Element> {
        self.blocks.get(index).map(|&b| self.lattice.wrap(b))
    }

    pub(crate) fn block_bits(&self) -> &[u64] {
        &self.blocks
    }

    pub fn position(&self, block: Element) -> Option<usize> {
        if !self.lattice.contains(block) {
            return None;
        }
        self.blocks.binary_search(&block.bits()).ok()
    }

    /// `a|b|c|de` style rendering, blocks separated by `|`.
    pub fn describe(&self) -> alloc::string::String {
        let names = self.lattice.points();
        let parts: Vec<alloc::string::String> = self
            .blocks
            .iter()
            .map(|&b| {
                let members: Vec<&str> = names
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| b >> i & 1 == 1)
                    .map(|(_, n)| n.as_str())
                    .collect();
                if members.iter().all(|m| m.chars().count() == 1) {
                    members.concat()
                } else {
                    format!("{{{}}}", members.join(","))
                }
            })
            .collect();
        parts.join("|")
    }

    fn same_lattice(&self, other: &Partition) -> Result<(), Error> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    fn is_finer_bits(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|&e| other.blocks.iter().any(|&d| e & !d == 0))
    }

    /// Whether `self ≤ other` in the refinement order.
    pub fn is_finer_than(&self, other: &Partition) -> Result<bool, Error> {
        self.same_lattice(other)?;
        Ok(self.is_finer_bits(other))
    }

    /// The refinement witness for `self ≤ coarse`, or `None` when `self` does
    /// not refine `coarse`.
    pub fn refines(&self, coarse: &Partition) -> Result<Option<Refinement>, Error> {
        self.same_lattice(coarse)?;
        let mut coarse_of = Vec::with_capacity(self.blocks.len());
        let mut fine_of = alloc::vec![Vec::new(); coarse.blocks.len()];
        for (i, &e) in self.blocks.iter().enumerate() {
            // at most one block can contain e since blocks are disjoint
            match coarse.blocks.iter().position(|&d| e & !d == 0) {
                Some(j) => {
                    coarse_of.push(j);
                    fine_of[j].push(i);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(Refinement { coarse_of, fine_of }))
    }

    /// Greatest lower bound: all nonzero meets of a block of each.
    pub fn meet(&self, other: &Partition) -> Result<Partition, Error> {
        self.same_lattice(other)?;
        let mut blocks: Vec<u64> = self
            .blocks
            .iter()
            .flat_map(|&e| other.blocks.iter().map(move |&d| e & d))
            .filter(|&z| z != 0)
            .collect();
        blocks.sort_unstable();
        blocks.dedup();
        Ok(Partition::from_sorted_bits(&self.lattice, blocks))
    }

    /// Least upper bound, computed as the atoms of `[E] ∩ [D]`.
    pub fn join(&self, other: &Partition) -> Result<Partition, Error> {
        self.same_lattice(other)?;
        let mine: BTreeSet<u64> = self.subalgebra_bits().into_iter().collect();
        let common: Vec<u64> = other
            .subalgebra_bits()
            .into_iter()
            .filter(|x| mine.contains(x))
            .collect();
        // The intersection is a Boolean subalgebra; its atoms are its minimal
        // nonzero members.
        let mut atoms: Vec<u64> = common
            .iter()
            .copied()
            .filter(|&x| x != 0 && !common.iter().any(|&y| y != 0 && y != x && y & !x == 0))
            .collect();
        atoms.sort_unstable();
        Ok(Partition::from_sorted_bits(&self.lattice, atoms))
    }

    fn subalgebra_bits(&self) -> Vec<u64> {
        let mut out = alloc::vec![0u64];
        for &b in &self.blocks {
            let grown: Vec<u64> = out.iter().map(|&x| x | b).collect();
            out.extend(grown);
        }
        out.sort_unstable();
        out
    }

    /// `[E]`: the joins of all subsets of blocks. It has exactly `2^|E|`
    /// members and is a Boolean subalgebra of the lattice.
    pub fn generated_subalgebra(&self) -> Vec<Element> {
        self.subalgebra_bits()
            .into_iter()
            .map(|b| self.lattice.wrap(b))
            .collect()
    }

    /// Lazily enumerates every partition of `lattice`.
    ///
    /// Blocks are down-sets, so a partition of the lattice is exactly a set
    /// partition of the point set into down-sets. The search fixes the lowest
    /// uncovered point and tries every down-set containing it that avoids the
    /// points already covered, so each partition is produced once.
    pub fn enumerate(lattice: &Lattice, budget: PartitionBudget) -> Result<Partitions, Error> {
        if lattice.is_trivial() {
            return Err(Error::TrivialLattice);
        }
        if lattice.len() > budget.max_elements {
            return Err(Error::BudgetExceeded(format!(
                "lattice has {} elements, limit is {}",
                lattice.len(),
                budget.max_elements
            )));
        }
        let candidates: Vec<u64> = lattice.elements().map(Element::bits).filter(|&b| b != 0).collect();
        Ok(Partitions {
            lattice: lattice.clone(),
            candidates,
            frames: alloc::vec![Frame {
                covered: 0,
                point: 0,
                cursor: 0
            }],
            blocks: Vec::new(),
            emitted: 0,
            budget,
            done: false,
        })
    }

    /// Collects [`Partition::enumerate`].
    pub fn enumerate_all(lattice: &Lattice, budget: PartitionBudget) -> Result<Vec<Partition>, Error> {
        Partition::enumerate(lattice, budget)?.collect()
    }
}

struct Frame {
    covered: u64,
    /// Lowest point not yet covered.
    point: usize,
    cursor: usize,
}

/// Iterator returned by [`Partition::enumerate`].
pub struct Partitions {
    lattice: Lattice,
    candidates: Vec<u64>,
    frames: Vec<Frame>,
    blocks: Vec<u64>,
    emitted: u64,
    budget: PartitionBudget,
    done: bool,
}

impl Iterator for Partitions {
    type Item = Result<Partition, Error>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let top = self.lattice.top_bits();
        loop {
            let depth = self.frames.len();
            let Some(frame) = self.frames.last_mut() else {
                self.done = true;
                return None;
            };
            self.blocks.truncate(depth - 1);
            let want = 1u64 << frame.point;
            let found = self.candidates[frame.cursor..]
                .iter()
                .position(|&c| c & want != 0 && c & frame.covered == 0);
            let Some(offset) = found else {
                self.frames.pop();
                continue;
            };
            let block = self.candidates[frame.cursor + offset];
            frame.cursor += offset + 1;
            let covered = frame.covered | block;
            self.blocks.push(block);
            if covered == top {
                if self.emitted >= self.budget.max_partitions {
                    self.done = true;
                    return Some(Err(Error::BudgetExceeded(format!(
                        "more than {} partitions",
                        self.budget.max_partitions
                    ))));
                }
                self.emitted += 1;
                let mut blocks = self.blocks.clone();
                blocks.sort_unstable();
                return Some(Ok(Partition::from_sorted_bits(&self.lattice, blocks)));
            }
            self.frames.push(Frame {
                covered,
                point: (!covered).trailing_zeros() as usize,
                cursor: 0,
            });
        }
    }
}
