//! Valuations: rational functions on a lattice obeying the modular law
//! `v(a∨b) = v(a) + v(b) − v(a∧b)`.
//!
//! Only non-negative valuations are accepted. Isotonicity and boundedness are
//! recorded as flags; operations that divide by block values ask for a
//! [`PositiveBlocks`] witness instead of requiring strict positivity up front.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lattice::{Element, Lattice};
use crate::partition::Partition;
use crate::rational::Rational;

/// Lattices up to this size get an exhaustive pairwise modular-law scan.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 1024;

#[derive(Clone, PartialEq, Eq)]
pub struct Valuation {
    lattice: Lattice,
    /// Indexed like [`Lattice::elements`].
    values: Vec<Rational>,
    isotone: bool,
    strictly_isotone: bool,
    bounded: bool,
}

impl core::fmt::Debug for Valuation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut m = f.debug_map();
        for (e, v) in self.lattice.elements().zip(&self.values) {
            m.entry(&self.lattice.describe(e), &alloc::format!("{v}"));
        }
        m.finish()
    }
}

/// Result of [`Valuation::boolean_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanValuationReport {
    pub modular: bool,
    pub bounded: bool,
    pub additive: bool,
    pub top_is_one: bool,
    /// `modular ∧ bounded ⇔ additive ∧ v(1) = 1` held.
    pub equivalence_holds: bool,
    pub isotone: bool,
    /// `v(¬a) = 1 − v(a)` for every element.
    pub complement_identity: bool,
}

impl BooleanValuationReport {
    /// Whether the valuation is a Boolean valuation.
    pub fn is_boolean_valuation(&self) -> bool {
        self.additive && self.top_is_one
    }
}

/// Proof that a valuation is strictly positive on every block of a partition,
/// carrying the block values in block order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveBlocks {
    values: Vec<Rational>,
}

impl PositiveBlocks {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, block_index: usize) -> &Rational {
        &self.values[block_index]
    }
}

impl Valuation {
    /// Builds a valuation from an assignment covering every element.
    pub fn new<I>(lattice: &Lattice, assignments: I) -> Result<Valuation, Error>
    where
        I: IntoIterator<Item = (Element, Rational)>,
    {
        let mut slots: Vec<Option<Rational>> = alloc::vec![None; lattice.len()];
        for (e, v) in assignments {
            let i = lattice.index_of(e)?;
            if slots[i].is_some() {
                return Err(Error::DuplicateElement(lattice.describe(e)));
            }
            slots[i] = Some(v);
        }
        let mut values = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(v) => values.push(v),
                None => {
                    let e = lattice.element_at(i).expect("index in range");
                    return Err(Error::MissingElement(lattice.describe(e)));
                }
            }
        }
        Self::from_values(lattice, values)
    }

    /// Builds a valuation from values listed in [`Lattice::elements`] order.
    pub fn from_values(lattice: &Lattice, values: Vec<Rational>) -> Result<Valuation, Error> {
        if values.len() != lattice.len() {
            let missing = lattice
                .element_at(values.len().min(lattice.len() - 1))
                .expect("nonempty");
            return Err(Error::MissingElement(lattice.describe(missing)));
        }
        if let Some(i) = values.iter().position(Signed::is_negative) {
            let e = lattice.element_at(i).expect("index in range");
            return Err(Error::NegativeValue(lattice.describe(e)));
        }
        check_modular(lattice, &values)?;

        let mut isotone = true;
        let mut strictly_isotone = true;
        for (x, p) in lattice.covers() {
            let lo = &values[lattice.index_of_bits(x)];
            let hi = &values[lattice.index_of_bits(x | 1u64 << p)];
            if hi < lo {
                isotone = false;
            }
            if hi <= lo {
                strictly_isotone = false;
            }
        }
        let bounded = values[0].is_zero() && values[values.len() - 1].is_one();
        Ok(Valuation {
            lattice: lattice.clone(),
            values,
            isotone,
            strictly_isotone,
            bounded,
        })
    }

    /// The probability-measure case: weights on the atoms of a Boolean
    /// lattice, non-negative and summing to 1, extended additively.
    pub fn from_atom_weights<I>(lattice: &Lattice, weights: I) -> Result<Valuation, Error>
    where
        I: IntoIterator<Item = (Element, Rational)>,
    {
        if !lattice.is_boolean() {
            return Err(Error::NotBoolean);
        }
        let atoms = lattice.atoms()?;
        let mut by_atom: Vec<Option<Rational>> = alloc::vec![None; atoms.len()];
        for (atom, w) in weights {
            lattice.check(atom)?;
            let Some(i) = atoms.iter().position(|&a| a == atom) else {
                return Err(Error::NotAnAtom(lattice.describe(atom)));
            };
            if by_atom[i].is_some() {
                return Err(Error::DuplicateElement(lattice.describe(atom)));
            }
            if w.is_negative() {
                return Err(Error::NegativeWeight(lattice.describe(atom)));
            }
            by_atom[i] = Some(w);
        }
        let mut point_weight = alloc::vec![Rational::zero(); lattice.points().len()];
        for (i, w) in by_atom.into_iter().enumerate() {
            let w = w.ok_or_else(|| Error::MissingWeight(lattice.describe(atoms[i])))?;
            point_weight[atoms[i].bits().trailing_zeros() as usize] = w;
        }
        let sum: Rational = point_weight.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightSum(sum));
        }
        let values = lattice
            .elements()
            .map(|e| {
                point_weight
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| e.bits() >> p & 1 == 1)
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
        Self::from_values(lattice, values)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn value(&self, e: Element) -> Result<&Rational, Error> {
        Ok(&self.values[self.lattice.index_of(e)?])
    }

    pub(crate) fn value_bits(&self, bits: u64) -> &Rational {
        &self.values[self.lattice.index_of_bits(bits)]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_isotone(&self) -> bool {
        self.isotone
    }

    pub fn is_strictly_isotone(&self) -> bool {
        self.strictly_isotone
    }

    /// `v(0) = 0` and `v(1) = 1`.
    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// `v(a∨b) = v(a) + v(b)` whenever `a∧b = 0`. Checked directly, not
    /// inferred from modularity.
    pub fn is_additive(&self) -> bool {
        let els: Vec<u64> = self.lattice.elements().map(Element::bits).collect();
        if els.len() <= EXHAUSTIVE_PAIR_LIMIT {
            els.iter().all(|&a| {
                els.iter()
                    .filter(|&&b| a & b == 0)
                    .all(|&b| *self.value_bits(a | b) == self.value_bits(a) + self.value_bits(b))
            })
        } else {
            // a modular valuation is additive exactly when v(0) = 0
            self.values[0].is_zero()
        }
    }

    /// Checks the Boolean-valuation characterisations on a Boolean lattice.
    pub fn boolean_report(&self) -> Result<BooleanValuationReport, Error> {
        if !self.lattice.is_boolean() {
            return Err(Error::NotBoolean);
        }
        let additive = self.is_additive();
        let top_is_one = self.values[self.values.len() - 1].is_one();
        let modular = true;
        let bounded = self.bounded;
        let top = self.lattice.top_bits();
        let complement_identity = self
            .lattice
            .elements()
            .all(|a| *self.value_bits(top & !a.bits()) == Rational::one() - self.value_bits(a.bits()));
        Ok(BooleanValuationReport {
            modular,
            bounded,
            additive,
            top_is_one,
            equivalence_holds: (modular && bounded) == (additive && top_is_one),
            isotone: self.isotone,
            complement_identity,
        })
    }

    /// Confirms `v(e) > 0` for every block of `partition`.
    pub fn require_positive_on(&self, partition: &Partition) -> Result<PositiveBlocks, Error> {
        if partition.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch);
        }
        let mut values = Vec::with_capacity(partition.len());
        for &b in partition.block_bits() {
            let v = self.value_bits(b);
            if !v.is_positive() {
                return Err(Error::ZeroBlockValuation(self.lattice.describe_bits(b)));
            }
            values.push(v.clone());
        }
        Ok(PositiveBlocks { values })
    }
}

/// Small lattices: every pair. Larger ones: a modular function on a down-set
/// lattice is `v(X) = v(0) + Σ_{p∈X} w(p)` with `w(p) = v(↓p) − v(↓p∖{p})`;
/// the first element (by size) breaking that form yields a violating pair.
fn check_modular(lattice: &Lattice, values: &[Rational]) -> Result<(), Error> {
    let els: Vec<u64> = lattice.elements().map(Element::bits).collect();
    let at = |b: u64| &values[lattice.index_of_bits(b)];
    let violation = |a: u64, b: u64| Error::ModularLawViolation {
        a: lattice.describe_bits(a),
        b: lattice.describe_bits(b),
    };
    if els.len() <= EXHAUSTIVE_PAIR_LIMIT {
        for (i, &a) in els.iter().enumerate() {
            for &b in &els[i + 1..] {
                if at(a | b) + at(a & b) != at(a) + at(b) {
                    return Err(violation(a, b));
                }
            }
        }
        return Ok(());
    }

    let n = lattice.points().len();
    let weight: Vec<Rational> = (0..n)
        .map(|p| {
            let below = lattice.below_bits(p);
            at(below | 1u64 << p) - at(below)
        })
        .collect();
    let mut by_size: Vec<u64> = els;
    by_size.sort_by_key(|b| b.count_ones());
    for x in by_size {
        let predicted: Rational = &values[0] + (0..n).filter(|p| x >> p & 1 == 1).map(|p| &weight[p]).sum::<Rational>();
        if *at(x) != predicted {
            let p = (0..n)
                .find(|&p| lattice.is_maximal_in(x, p))
                .expect("nonzero down-set has a maximal point");
            let principal = lattice.below_bits(p) | 1u64 << p;
            return Err(violation(x & !(1u64 << p), principal));
        }
    }
    Ok(())
}
