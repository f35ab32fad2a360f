//! Positive affine payoff transformations, standardized acts, intrinsic
//! expected value, and the parametrized Allais problem.
//!
//! The intrinsic expected value of an act is its expected value divided by the
//! sum of its payoffs. It is unchanged by rescaling payoffs but not by
//! shifting them.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::acts::{leq_dominance, Act};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::partition::Partition;
use crate::rational::{int, rat, Rational};
use crate::valuation::Valuation;

/// `x ↦ h·x + k` with `h > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    h: Rational,
    k: Rational,
}

impl AffineMap {
    pub fn new(h: Rational, k: Rational) -> Result<AffineMap, Error> {
        if !h.is_positive() {
            return Err(Error::NonpositiveScale(h));
        }
        Ok(AffineMap { h, k })
    }

    /// Pure rescaling, `k = 0`.
    pub fn scale(h: Rational) -> Result<AffineMap, Error> {
        AffineMap::new(h, Rational::zero())
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.h * x + &self.k
    }

    /// The act with every payoff transformed, on the same partition.
    pub fn apply_act(&self, act: &Act) -> Act {
        act.map_payoffs(|x| self.apply(x))
    }
}

/// Result of checking that an affine map preserves and reflects the act
/// orders on a sample of pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub pairs_checked: usize,
    /// Indices of pairs where `exp(τ∘α) = h·exp(α)+k` failed.
    pub exp_identity_failures: Vec<usize>,
    /// Indices where dominance before and after disagreed.
    pub dominance_failures: Vec<usize>,
    /// Indices where the expected-value order before and after disagreed.
    pub exp_order_failures: Vec<usize>,
}

impl EmbeddingReport {
    pub fn holds(&self) -> bool {
        self.exp_identity_failures.is_empty()
            && self.dominance_failures.is_empty()
            && self.exp_order_failures.is_empty()
    }
}

/// Checks the order-embedding properties of `map` on `pairs`.
///
/// Dominance is only defined on a shared partition; pairs on different
/// partitions are checked for the expected-value clauses only.
pub fn is_order_embedding_check(
    map: &AffineMap,
    pairs: &[(Act, Act)],
    v: &Valuation,
) -> Result<EmbeddingReport, Error> {
    let mut report = EmbeddingReport::default();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let (fa, fb) = (map.apply_act(a), map.apply_act(b));
        let (ea, eb) = (a.expected_value(v)?, b.expected_value(v)?);
        let (fea, feb) = (fa.expected_value(v)?, fb.expected_value(v)?);
        if fea != map.apply(&ea) || feb != map.apply(&eb) {
            report.exp_identity_failures.push(i);
        }
        if (ea <= eb) != (fea <= feb) || (eb <= ea) != (feb <= fea) {
            report.exp_order_failures.push(i);
        }
        if a.partition() == b.partition() {
            let before = (leq_dominance(a, b)?, leq_dominance(b, a)?);
            let after = (leq_dominance(&fa, &fb)?, leq_dominance(&fb, &fa)?);
            if before != after {
                report.dominance_failures.push(i);
            }
        }
        report.pairs_checked += 1;
    }
    Ok(report)
}

/// `T(α)`, the sum of all payoffs.
pub fn total(act: &Act) -> Rational {
    act.payoffs().iter().sum()
}

/// `α / T(α)`. Negative payoffs are allowed as long as the total is
/// positive.
pub fn standardize(act: &Act) -> Result<Act, Error> {
    let t = total(act);
    if !t.is_positive() {
        return Err(Error::NonpositiveTotal(t));
    }
    Ok(act.map_payoffs(|x| x / &t))
}

/// `exp(α, v) / T(α)`.
pub fn intrinsic_exp(act: &Act, v: &Valuation) -> Result<Rational, Error> {
    let t = total(act);
    if !t.is_positive() {
        return Err(Error::NonpositiveTotal(t));
    }
    Ok(act.expected_value(v)? / t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingReport {
    pub before: Rational,
    pub after: Rational,
    /// `exp(h·α) = h·exp(α)`.
    pub exp_scales: bool,
}

impl ScalingReport {
    pub fn invariant(&self) -> bool {
        self.before == self.after && self.exp_scales
    }
}

/// Intrinsic expected value before and after multiplying payoffs by `h`.
pub fn scaling_invariance_check(h: &Rational, act: &Act, v: &Valuation) -> Result<ScalingReport, Error> {
    let map = AffineMap::scale(h.clone())?;
    let scaled = map.apply_act(act);
    Ok(ScalingReport {
        before: intrinsic_exp(act, v)?,
        after: intrinsic_exp(&scaled, v)?,
        exp_scales: scaled.expected_value(v)? == h * act.expected_value(v)?,
    })
}

/// The Allais problem with parameters `x` and `y` over three states of
/// probability 1/100, 1/10 and 89/100.
#[derive(Debug, Clone)]
pub struct AllaisInstance {
    pub x: Rational,
    pub y: Rational,
    pub lattice: Lattice,
    pub partition: Partition,
    pub valuation: Valuation,
    /// `(x, x, x)`
    pub alpha: Act,
    /// `(0, y, x)`
    pub alpha_prime: Act,
    /// `(x, x, 0)`
    pub beta: Act,
    /// `(0, y, 0)`
    pub beta_prime: Act,
}

impl AllaisInstance {
    pub fn new(x: Rational, y: Rational) -> Result<AllaisInstance, Error> {
        positive("x", &x)?;
        positive("y", &y)?;
        let lattice = Lattice::boolean(&["e1", "e2", "e3"])?;
        let atoms = lattice.atoms()?;
        let partition = Partition::new(&lattice, atoms.iter().copied())?;
        let weights = [rat(1, 100), rat(1, 10), rat(89, 100)];
        let valuation = Valuation::from_atom_weights(&lattice, atoms.iter().copied().zip(weights))?;
        let zero = Rational::zero();
        let act =
            |p: [&Rational; 3]| Act::from_blocks(partition.clone(), atoms.iter().copied().zip(p.map(Clone::clone)));
        Ok(AllaisInstance {
            alpha: act([&x, &x, &x])?,
            alpha_prime: act([&zero, &y, &x])?,
            beta: act([&x, &x, &zero])?,
            beta_prime: act([&zero, &y, &zero])?,
            x,
            y,
            lattice,
            partition,
            valuation,
        })
    }

    /// The classic dollar amounts, 500 000 and 2 500 000.
    pub fn dollars() -> AllaisInstance {
        AllaisInstance::new(int(500_000), int(2_500_000)).expect("positive parameters")
    }

    /// The four acts with their conventional names.
    pub fn acts(&self) -> [(&'static str, &Act); 4] {
        [
            ("alpha", &self.alpha),
            ("alpha'", &self.alpha_prime),
            ("beta", &self.beta),
            ("beta'", &self.beta_prime),
        ]
    }

    pub fn expected_values(&self) -> [Rational; 4] {
        self.acts()
            .map(|(_, a)| a.expected_value(&self.valuation).expect("same lattice"))
    }

    pub fn intrinsic_values(&self) -> [Rational; 4] {
        self.acts()
            .map(|(_, a)| intrinsic_exp(a, &self.valuation).expect("positive totals"))
    }

    pub fn thresholds(&self) -> AllaisThresholds {
        allais_thresholds(&self.x, &self.y).expect("validated on construction")
    }
}

fn positive(name: &'static str, value: &Rational) -> Result<(), Error> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::NonpositiveParameter {
            name,
            value: value.clone(),
        })
    }
}

/// Expected value prefers `α′` over `α` exactly when `y > EXP_RATIO·x`.
pub fn exp_ratio() -> Rational {
    rat(11, 10)
}

/// Intrinsic expected value prefers `α` over `α′` exactly when
/// `y > INTRINSIC_RATIO·x`.
pub fn intrinsic_ratio() -> Rational {
    rat(167, 70)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllaisThresholds {
    pub exp_ratio: Rational,
    pub intrinsic_ratio: Rational,
    /// `exp(α) < exp(α′)`
    pub exp_prefers_alpha_prime: bool,
    pub exp_indifferent: bool,
    /// `intrinsic(α′) < intrinsic(α)`
    pub intrinsic_prefers_alpha: bool,
    pub intrinsic_indifferent: bool,
}

/// Both preference verdicts for `α` against `α′` from the closed-form
/// thresholds.
pub fn allais_thresholds(x: &Rational, y: &Rational) -> Result<AllaisThresholds, Error> {
    positive("x", x)?;
    positive("y", y)?;
    let e = exp_ratio() * x;
    let i = intrinsic_ratio() * x;
    Ok(AllaisThresholds {
        exp_prefers_alpha_prime: *y > e,
        exp_indifferent: *y == e,
        intrinsic_prefers_alpha: *y > i,
        intrinsic_indifferent: *y == i,
        exp_ratio: exp_ratio(),
        intrinsic_ratio: intrinsic_ratio(),
    })
}
