//! Brute-force cross-checks for the constructive operations.
//!
//! Nothing here is used by the rest of the crate. Partition bounds are found
//! by scanning every partition; act bounds are attacked with rivals drawn from
//! a payoff grid; the search for a failure of transitivity of
//! [`leq_on_join`] is randomized but seeded.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acts::{leq_dominance, leq_on_join, leq_valued, Act};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::partition::{Partition, PartitionBudget};
use crate::rational::{rat, Rational};
use crate::valuation::Valuation;

/// Limits and seed for the oracle searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Lattices with more generator points are not searched.
    pub max_atoms: usize,
    /// Grid acts tried per partition before falling back to sampling.
    pub max_candidates_per_partition: usize,
    /// Base payoffs; each is multiplied by the block count of the partition
    /// it is used on.
    pub grid: Vec<Rational>,
    pub seed: u64,
    /// Random triples tried by [`find_blacktriangle_nontransitivity`].
    pub max_trials: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_atoms: 5,
            max_candidates_per_partition: 625,
            grid: default_grid(),
            seed: 0x5eed,
            max_trials: 20_000,
        }
    }
}

impl SearchBudget {
    /// A budget that searches nothing.
    pub fn zero() -> Self {
        SearchBudget {
            max_atoms: 0,
            max_candidates_per_partition: 0,
            max_trials: 0,
            ..SearchBudget::default()
        }
    }

    fn partitions(&self, lattice: &Lattice) -> Result<Vec<Partition>, Error> {
        if lattice.points().len() > self.max_atoms {
            return Err(Error::BudgetExceeded(alloc::format!(
                "{} points, oracle limit {}",
                lattice.points().len(),
                self.max_atoms
            )));
        }
        Partition::enumerate_all(lattice, PartitionBudget::default())
    }

    fn scaled_grid(&self, blocks: usize) -> Vec<Rational> {
        let n = Rational::from_integer(blocks.into());
        self.grid.iter().map(|g| g * &n).collect()
    }
}

/// `{0, 1/2, 1, 2, 3}`.
pub fn default_grid() -> Vec<Rational> {
    alloc::vec![Rational::zero(), rat(1, 2), Rational::one(), rat(2, 1), rat(3, 1)]
}

/// Greatest lower and least upper bound of two partitions, found by scanning
/// all of them. Fails with [`Error::BoundNotUnique`] if either is not unique.
pub fn brute_partition_bounds(
    e: &Partition,
    d: &Partition,
    budget: PartitionBudget,
) -> Result<(Partition, Partition), Error> {
    if e.lattice() != d.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let all = Partition::enumerate_all(e.lattice(), budget)?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for p in &all {
        if p.is_finer_than(e)? && p.is_finer_than(d)? {
            lower.push(p);
        }
        if e.is_finer_than(p)? && d.is_finer_than(p)? {
            upper.push(p);
        }
    }
    let glb = unique(&lower, |a, b| b.is_finer_than(a)).ok_or(Error::BoundNotUnique("greatest lower bound"))?;
    let lub = unique(&upper, |a, b| a.is_finer_than(b)).ok_or(Error::BoundNotUnique("least upper bound"))?;
    Ok((glb, lub))
}

/// The single candidate `c` with `above(c, x)` for every `x`.
fn unique(
    candidates: &[&Partition],
    above: impl Fn(&Partition, &Partition) -> Result<bool, Error>,
) -> Option<Partition> {
    let mut winners = candidates
        .iter()
        .filter(|c| candidates.iter().all(|x| above(c, x).unwrap_or(false)));
    let first = winners.next()?;
    winners.next().is_none().then(|| (*first).clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Inf,
    Sup,
}

/// What the grid attack on a claimed bound found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// The candidate is below (inf) or above (sup) both inputs.
    pub is_bound: bool,
    pub rivals_checked: usize,
    /// A rival bound the candidate fails to dominate, if any.
    pub beaten_by: Option<Act>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.is_bound && self.beaten_by.is_none()
    }
}

/// Checks `candidate` as the infimum or supremum of `{α, β}` under
/// [`leq_valued`].
///
/// Every rival `γ` on a partition that could carry a bound is tested: if `γ`
/// is itself a lower (upper) bound it must lie below (above) the candidate.
/// Rivals are grid acts plus the candidate moved onto `γ`'s partition and
/// nudged upward (downward) one block at a time.
pub fn verify_act_bound(
    alpha: &Act,
    beta: &Act,
    v: &Valuation,
    candidate: &Act,
    mode: BoundMode,
    budget: &SearchBudget,
) -> Result<BoundReport, Error> {
    let is_bound = match mode {
        BoundMode::Inf => leq_valued(candidate, alpha, v)? && leq_valued(candidate, beta, v)?,
        BoundMode::Sup => leq_valued(alpha, candidate, v)? && leq_valued(beta, candidate, v)?,
    };
    let mut report = BoundReport {
        is_bound,
        rivals_checked: 0,
        beaten_by: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for g in budget.partitions(alpha.lattice())? {
        let reachable = match mode {
            BoundMode::Inf => g.is_finer_than(candidate.partition())?,
            BoundMode::Sup => candidate.partition().is_finer_than(&g)?,
        };
        if !reachable {
            continue;
        }
        let mut rivals = grid_acts(&g, budget, &mut rng)?;
        let moved = match mode {
            BoundMode::Inf => candidate.downgrade(&g, v)?,
            BoundMode::Sup => candidate.upgrade(&g, v)?,
        };
        rivals.extend(nudges(&moved, mode));
        rivals.push(moved);
        for gamma in rivals {
            report.rivals_checked += 1;
            let (bound, dominated) = match mode {
                BoundMode::Inf => (
                    leq_valued(&gamma, alpha, v)? && leq_valued(&gamma, beta, v)?,
                    leq_valued(&gamma, candidate, v)?,
                ),
                BoundMode::Sup => (
                    leq_valued(alpha, &gamma, v)? && leq_valued(beta, &gamma, v)?,
                    leq_valued(candidate, &gamma, v)?,
                ),
            };
            if bound && !dominated {
                report.beaten_by = Some(gamma);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Checks that `β_E` is the largest act on `fine` below `β`: it is below `β`
/// and dominates every grid act on `fine` that is.
pub fn verify_downgrade(
    beta: &Act,
    fine: &Partition,
    v: &Valuation,
    budget: &SearchBudget,
) -> Result<BoundReport, Error> {
    let down = beta.downgrade(fine, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut rivals = grid_acts(fine, budget, &mut rng)?;
    rivals.extend(nudges(&down, BoundMode::Inf));
    extremal(
        &down,
        rivals,
        |x| leq_valued(x, beta, v),
        |x| leq_dominance(x, &down),
        leq_valued(&down, beta, v)?,
    )
}

/// Checks that `β^G` is the smallest act on `coarse` above `β`.
pub fn verify_upgrade(
    beta: &Act,
    coarse: &Partition,
    v: &Valuation,
    budget: &SearchBudget,
) -> Result<BoundReport, Error> {
    let up = beta.upgrade(coarse, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut rivals = grid_acts(coarse, budget, &mut rng)?;
    rivals.extend(nudges(&up, BoundMode::Sup));
    extremal(
        &up,
        rivals,
        |x| leq_valued(beta, x, v),
        |x| leq_dominance(&up, x),
        leq_valued(beta, &up, v)?,
    )
}

fn extremal(
    _candidate: &Act,
    rivals: Vec<Act>,
    qualifies: impl Fn(&Act) -> Result<bool, Error>,
    dominated: impl Fn(&Act) -> Result<bool, Error>,
    is_bound: bool,
) -> Result<BoundReport, Error> {
    let mut report = BoundReport {
        is_bound,
        rivals_checked: 0,
        beaten_by: None,
    };
    for x in rivals {
        report.rivals_checked += 1;
        if qualifies(&x)? && !dominated(&x)? {
            report.beaten_by = Some(x);
            break;
        }
    }
    Ok(report)
}

/// All grid acts on `p` if there are few enough, otherwise a seeded sample.
fn grid_acts(p: &Partition, budget: &SearchBudget, rng: &mut ChaCha8Rng) -> Result<Vec<Act>, Error> {
    let grid = budget.scaled_grid(p.len());
    let cap = budget.max_candidates_per_partition;
    if grid.is_empty() || cap == 0 {
        return Ok(Vec::new());
    }
    let full = u32::try_from(p.len()).ok().and_then(|n| grid.len().checked_pow(n));
    let mut out = Vec::new();
    match full {
        Some(count) if count <= cap => {
            for mut code in 0..count {
                let payoffs = (0..p.len())
                    .map(|_| {
                        let g = grid[code % grid.len()].clone();
                        code /= grid.len();
                        g
                    })
                    .collect();
                out.push(Act::new(p.clone(), payoffs)?);
            }
        }
        _ => {
            for _ in 0..cap {
                out.push(random_act(rng, p, &grid)?);
            }
        }
    }
    Ok(out)
}

/// `act` with one payoff moved a small step up (inf) or down (sup).
fn nudges(act: &Act, mode: BoundMode) -> Vec<Act> {
    let step = match mode {
        BoundMode::Inf => rat(1, 1000),
        BoundMode::Sup => rat(-1, 1000),
    };
    (0..act.payoffs().len())
        .map(|i| {
            let mut payoffs = act.payoffs().to_vec();
            payoffs[i] += &step;
            Act::new(act.partition().clone(), payoffs).expect("same length")
        })
        .collect()
}

/// An act on `p` with payoffs drawn uniformly from `grid`.
pub fn random_act<R: Rng>(rng: &mut R, p: &Partition, grid: &[Rational]) -> Result<Act, Error> {
    let payoffs = (0..p.len())
        .map(|_| grid.choose(rng).cloned().unwrap_or_else(Rational::zero))
        .collect();
    Act::new(p.clone(), payoffs)
}

/// Atom weights `w_i / Σw` with each `w_i` drawn from `1..=max`, so every
/// atom gets positive probability.
pub fn random_positive_valuation<R: Rng>(rng: &mut R, lattice: &Lattice, max: u32) -> Result<Valuation, Error> {
    let atoms = lattice.atoms()?;
    let raw: Vec<u32> = atoms.iter().map(|_| rng.gen_range(1..=max.max(1))).collect();
    let sum: u64 = raw.iter().map(|&w| u64::from(w)).sum();
    let denom = Rational::from_integer(sum.into());
    Valuation::from_atom_weights(
        lattice,
        atoms
            .into_iter()
            .zip(raw)
            .map(|(a, w)| (a, Rational::from_integer(w.into()) / &denom)),
    )
}

/// The valuation giving each atom `1/n`.
pub fn uniform_valuation(lattice: &Lattice) -> Result<Valuation, Error> {
    let atoms = lattice.atoms()?;
    let w = Rational::new(1.into(), atoms.len().into());
    Valuation::from_atom_weights(lattice, atoms.into_iter().map(|a| (a, w.clone())))
}

/// Three acts with `α ◀ β`, `β ◀ γ` and not `α ◀ γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonTransitivityWitness {
    pub alpha: Act,
    pub beta: Act,
    pub gamma: Act,
}

impl NonTransitivityWitness {
    /// Re-checks the three relations exactly.
    pub fn validates(&self, v: &Valuation) -> bool {
        matches!(leq_on_join(&self.alpha, &self.beta, v), Ok(true))
            && matches!(leq_on_join(&self.beta, &self.gamma, v), Ok(true))
            && matches!(leq_on_join(&self.alpha, &self.gamma, v), Ok(false))
    }
}

/// Seeded random search for a failure of transitivity of [`leq_on_join`].
///
/// Draws three partitions and a grid act on each, up to `max_trials` times.
/// `None` means nothing was found within the budget, including when the
/// lattice is over `max_atoms`. Triples where the relation is undefined
/// (a zero-valued block) are skipped.
pub fn find_blacktriangle_nontransitivity(
    lattice: &Lattice,
    v: &Valuation,
    budget: &SearchBudget,
) -> Result<Option<NonTransitivityWitness>, Error> {
    if lattice != v.lattice() {
        return Err(Error::LatticeMismatch);
    }
    if budget.max_trials == 0 || lattice.is_trivial() {
        return Ok(None);
    }
    let all = match budget.partitions(lattice) {
        Ok(all) => all,
        Err(Error::BudgetExceeded(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.max_trials {
        let mut pick = || -> Result<Act, Error> {
            let p = all.choose(&mut rng).expect("nonempty");
            let grid = budget.scaled_grid(p.len());
            random_act(&mut rng, p, &grid)
        };
        let w = NonTransitivityWitness {
            alpha: pick()?,
            beta: pick()?,
            gamma: pick()?,
        };
        if w.validates(v) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acts::{act_inf, act_sup};
    use crate::rational::int;
    use alloc::vec;

    fn abcde() -> Lattice {
        Lattice::boolean(&["a", "b", "c", "d", "e"]).unwrap()
    }

    fn part(l: &Lattice, blocks: &[&[&str]]) -> Partition {
        Partition::new(l, blocks.iter().map(|b| l.element_from_names(b).unwrap())).unwrap()
    }

    #[test]
    fn figure_bounds() {
        let l = abcde();
        let e = part(&l, &[&["a", "c"], &["b"], &["e", "d"]]);
        let d = part(&l, &[&["a", "b"], &["c"], &["e", "d"]]);
        let (glb, lub) = brute_partition_bounds(&e, &d, PartitionBudget::default()).unwrap();
        assert_eq!(glb.describe(), "a|b|c|de");
        assert_eq!(lub.describe(), "abc|de");
        assert_eq!(glb, e.meet(&d).unwrap());
        assert_eq!(lub, e.join(&d).unwrap());
        let (x, y) = brute_partition_bounds(&e, &e, PartitionBudget::default()).unwrap();
        assert_eq!((x, y), (e.clone(), e));
    }

    fn xyz() -> (Lattice, Valuation) {
        let l = Lattice::boolean(&["x", "y", "z"]).unwrap();
        let v = uniform_valuation(&l).unwrap();
        (l, v)
    }

    #[test]
    fn worked_inf_survives_grid() {
        let (l, v) = xyz();
        let alpha = Act::new(part(&l, &[&["x"], &["y", "z"]]), vec![int(6), int(6)]).unwrap();
        let beta = Act::new(part(&l, &[&["x", "y"], &["z"]]), vec![int(3), int(9)]).unwrap();
        let inf = act_inf(&alpha, &beta, &v).unwrap();
        assert_eq!(inf.payoffs(), &[rat(3, 2), rat(3, 2), int(3)]);
        let r = verify_act_bound(&alpha, &beta, &v, &inf, BoundMode::Inf, &SearchBudget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.rivals_checked > 100);

        let sup = act_sup(&alpha, &beta, &v).unwrap();
        let r = verify_act_bound(&alpha, &beta, &v, &sup, BoundMode::Sup, &SearchBudget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn wrong_bound_is_caught() {
        let (l, v) = xyz();
        let atoms = part(&l, &[&["x"], &["y"], &["z"]]);
        let alpha = Act::new(atoms.clone(), vec![int(1), int(2), int(3)]).unwrap();
        let beta = Act::new(atoms.clone(), vec![int(3), int(2), int(1)]).unwrap();
        let too_low = Act::new(atoms, vec![int(0), int(0), int(0)]).unwrap();
        let r = verify_act_bound(&alpha, &beta, &v, &too_low, BoundMode::Inf, &SearchBudget::default()).unwrap();
        assert!(r.is_bound);
        assert!(r.beaten_by.is_some());
    }

    #[test]
    fn downgrade_and_upgrade_extremal() {
        let (l, v) = xyz();
        let beta = Act::new(part(&l, &[&["x", "y"], &["z"]]), vec![int(3), int(9)]).unwrap();
        let fine = part(&l, &[&["x"], &["y"], &["z"]]);
        assert!(verify_downgrade(&beta, &fine, &v, &SearchBudget::default())
            .unwrap()
            .holds());
        let coarse = Partition::top(&l).unwrap();
        assert!(verify_upgrade(&beta, &coarse, &v, &SearchBudget::default())
            .unwrap()
            .holds());
    }

    #[test]
    fn grid_is_scaled_by_block_count() {
        let b = SearchBudget::default();
        assert_eq!(b.scaled_grid(3), vec![int(0), rat(3, 2), int(3), int(6), int(9)]);
    }

    #[test]
    fn nontransitivity_search() {
        let l = Lattice::boolean(&["1", "2", "3", "4"]).unwrap();
        let v = uniform_valuation(&l).unwrap();
        let w = find_blacktriangle_nontransitivity(&l, &v, &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert!(w.validates(&v));
        let again = find_blacktriangle_nontransitivity(&l, &v, &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w, again);
        assert_eq!(
            find_blacktriangle_nontransitivity(&l, &v, &SearchBudget::zero()).unwrap(),
            None
        );
    }

    #[test]
    fn random_valuations_are_positive_probabilities() {
        let l = Lattice::boolean(&["1", "2", "3", "4"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let v = random_positive_valuation(&mut rng, &l, 9).unwrap();
            assert!(v.is_bounded() && v.is_strictly_isotone());
        }
    }
}
