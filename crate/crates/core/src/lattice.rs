//! Finite distributive lattices in their down-set representation.
//!
//! A lattice is generated by a finite poset of join-irreducible *points*.
//! Each element is a down-set of that poset, stored as a `u64` bitset over the
//! points (bit `i` is the `i`-th point in a fixed linear extension). Meet and
//! join are intersection and union, so distributivity holds by construction.
//! The Boolean algebra on a set of atoms is the special case of an antichain.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::error::Error;

static NEXT_ID: AtomicUsize = AtomicUsize::new(1);

/// Hard limit imposed by the bitset width.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    /// All subsets of a set of atoms.
    Boolean,
    /// All down-sets of a finite poset.
    Downsets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeOptions {
    /// Maximum number of generator points (default 16, at most [`MAX_POINTS`]).
    pub max_points: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions { max_points: 16 }
    }
}

/// A member of one specific [`Lattice`].
///
/// Elements carry the identity of the lattice that produced them; handing one
/// to another lattice is a [`Error::LatticeMismatch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    lattice: usize,
    bits: u64,
}

impl Element {
    /// The down-set as a bitset over the lattice's points.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

struct Inner {
    id: usize,
    kind: LatticeKind,
    /// Point names in bit order.
    points: Vec<String>,
    /// `below[i]`: bitset of points strictly below point `i`.
    below: Vec<u64>,
    /// `above[i]`: bitset of points strictly above point `i`.
    above: Vec<u64>,
    /// All down-sets, ascending.
    elements: Vec<u64>,
    top: u64,
}

/// An immutable finite distributive lattice. Cloning is cheap.
#[derive(Clone)]
pub struct Lattice {
    inner: Arc<Inner>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("kind", &self.inner.kind)
            .field("points", &self.inner.points)
            .field("elements", &self.inner.elements.len())
            .finish()
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// The Boolean algebra of all subsets of `atoms`.
    pub fn boolean<S: AsRef<str>>(atoms: &[S]) -> Result<Lattice, Error> {
        Self::boolean_with(atoms, LatticeOptions::default())
    }

    pub fn boolean_with<S: AsRef<str>>(atoms: &[S], opts: LatticeOptions) -> Result<Lattice, Error> {
        if atoms.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let covers: [(&str, &str); 0] = [];
        Self::build(atoms, &covers, opts, LatticeKind::Boolean)
    }

    /// The lattice of down-sets of the poset generated by `covers`, where a
    /// pair `(p, q)` means `p < q`.
    ///
    /// An empty point list yields the one-element lattice, which exists but
    /// admits no partition.
    pub fn from_poset<S: AsRef<str>, T: AsRef<str>>(points: &[S], covers: &[(T, T)]) -> Result<Lattice, Error> {
        Self::from_poset_with(points, covers, LatticeOptions::default())
    }

    pub fn from_poset_with<S: AsRef<str>, T: AsRef<str>>(
        points: &[S],
        covers: &[(T, T)],
        opts: LatticeOptions,
    ) -> Result<Lattice, Error> {
        Self::build(points, covers, opts, LatticeKind::Downsets)
    }

    fn build<S: AsRef<str>, T: AsRef<str>>(
        points: &[S],
        covers: &[(T, T)],
        opts: LatticeOptions,
        kind: LatticeKind,
    ) -> Result<Lattice, Error> {
        let cap = opts.max_points.min(MAX_POINTS);
        if points.len() > cap {
            return Err(Error::TooManyPoints {
                count: points.len(),
                cap,
            });
        }
        let names: Vec<&str> = points.iter().map(AsRef::as_ref).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.to_string()));
            }
        }
        let index = |name: &str| {
            names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::UnknownPoint(name.to_string()))
        };
        let n = names.len();
        let mut succ: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
        for (p, q) in covers {
            let (p, q) = (index(p.as_ref())?, index(q.as_ref())?);
            if p == q {
                return Err(Error::CycleDetected(names[p].to_string()));
            }
            succ[p].insert(q);
        }

        // Kahn's algorithm, always taking the earliest ready point so the
        // input order survives wherever the poset allows it.
        let mut indegree = alloc::vec![0usize; n];
        for s in &succ {
            for &q in s {
                indegree[q] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(p) = ready.pop_first() {
            order.push(p);
            for &q in &succ[p] {
                indegree[q] -= 1;
                if indegree[q] == 0 {
                    ready.insert(q);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(names[stuck].to_string()));
        }
        let mut position = alloc::vec![0usize; n];
        for (bit, &p) in order.iter().enumerate() {
            position[p] = bit;
        }

        // Strict down-closure, computed in topological order.
        let mut below = alloc::vec![0u64; n];
        for &p in &order {
            for &q in &succ[p] {
                below[position[q]] |= below[position[p]] | (1u64 << position[p]);
            }
        }
        let mut above = alloc::vec![0u64; n];
        for (q, &mask) in below.iter().enumerate() {
            for (p, up) in above.iter_mut().enumerate() {
                if mask >> p & 1 == 1 {
                    *up |= 1u64 << q;
                }
            }
        }

        let mut elements = Vec::new();
        enumerate_downsets(&below, 0, 0, &mut elements);
        elements.sort_unstable();
        let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

        Ok(Lattice {
            inner: Arc::new(Inner {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                kind,
                points: order.iter().map(|&p| names[p].to_string()).collect(),
                below,
                above,
                elements,
                top,
            }),
        })
    }

    pub fn kind(&self) -> LatticeKind {
        self.inner.kind
    }

    /// Point names in bit order.
    pub fn points(&self) -> &[String] {
        &self.inner.points
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.inner.elements.len()
    }

    /// Never true; every lattice has at least a bottom. Provided for clippy.
    pub fn is_empty(&self) -> bool {
        self.inner.elements.is_empty()
    }

    /// True when the point poset is an antichain, i.e. the lattice is a
    /// Boolean algebra.
    pub fn is_boolean(&self) -> bool {
        self.inner.below.iter().all(|&b| b == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.points.is_empty()
    }

    pub fn bottom(&self) -> Element {
        self.wrap(0)
    }

    pub fn top(&self) -> Element {
        self.wrap(self.inner.top)
    }

    /// All elements in ascending bitset order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        self.inner.elements.iter().map(move |&b| self.wrap(b))
    }

    /// Position of `e` in [`Lattice::elements`].
    pub fn index_of(&self, e: Element) -> Result<usize, Error> {
        self.check(e)?;
        Ok(self.index_of_bits(e.bits))
    }

    pub(crate) fn index_of_bits(&self, bits: u64) -> usize {
        self.inner
            .elements
            .binary_search(&bits)
            .expect("bits of a checked element are a down-set")
    }

    pub fn element_at(&self, index: usize) -> Option<Element> {
        self.inner.elements.get(index).map(|&b| self.wrap(b))
    }

    pub fn contains(&self, e: Element) -> bool {
        e.lattice == self.inner.id
    }

    pub(crate) fn check(&self, e: Element) -> Result<(), Error> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    pub(crate) fn wrap(&self, bits: u64) -> Element {
        Element {
            lattice: self.inner.id,
            bits,
        }
    }

    pub(crate) fn top_bits(&self) -> u64 {
        self.inner.top
    }

    pub(crate) fn below_bits(&self, point: usize) -> u64 {
        self.inner.below[point]
    }

    /// Whether `bits` is a down-set of the point poset.
    pub(crate) fn is_downset(&self, bits: u64) -> bool {
        bits & !self.inner.top == 0
            && (0..self.inner.points.len()).all(|p| bits >> p & 1 == 0 || self.inner.below[p] & !bits == 0)
    }

    /// The element with the given down-set bitset, if it is one.
    pub fn element_from_bits(&self, bits: u64) -> Option<Element> {
        self.is_downset(bits).then(|| self.wrap(bits))
    }

    /// The principal down-set of a point: the join-irreducible it names.
    pub fn point(&self, name: &str) -> Result<Element, Error> {
        let i = self.point_index(name)?;
        Ok(self.wrap(self.inner.below[i] | 1u64 << i))
    }

    fn point_index(&self, name: &str) -> Result<usize, Error> {
        self.inner
            .points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    /// The join of the principal down-sets of the named points. For a Boolean
    /// lattice this is simply the set of those atoms.
    pub fn element_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Element, Error> {
        let mut bits = 0;
        for name in names {
            bits |= self.point(name.as_ref())?.bits;
        }
        Ok(self.wrap(bits))
    }

    /// Names of the points in `e`'s down-set, in bit order.
    pub fn names_of(&self, e: Element) -> Result<Vec<&str>, Error> {
        self.check(e)?;
        Ok(self.names_of_bits(e.bits))
    }

    fn names_of_bits(&self, bits: u64) -> Vec<&str> {
        self.inner
            .points
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, n)| n.as_str())
            .collect()
    }

    /// Renders an element as `{a,c}`, or `0` for the bottom.
    pub fn describe(&self, e: Element) -> String {
        self.describe_bits(e.bits)
    }

    pub(crate) fn describe_bits(&self, bits: u64) -> String {
        if bits == 0 {
            return "0".to_string();
        }
        let mut s = String::from("{");
        s.push_str(&self.names_of_bits(bits).join(","));
        s.push('}');
        s
    }

    pub fn meet(&self, a: Element, b: Element) -> Result<Element, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.bits & b.bits))
    }

    pub fn join(&self, a: Element, b: Element) -> Result<Element, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.bits | b.bits))
    }

    pub fn leq(&self, a: Element, b: Element) -> Result<bool, Error> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.bits & !b.bits == 0)
    }

    /// Join of a family; the empty join is `0`.
    pub fn join_all<I: IntoIterator<Item = Element>>(&self, items: I) -> Result<Element, Error> {
        let mut bits = 0;
        for e in items {
            self.check(e)?;
            bits |= e.bits;
        }
        Ok(self.wrap(bits))
    }

    /// The minimal nonzero elements. These are the principal down-sets of the
    /// minimal points.
    pub fn atoms(&self) -> Result<Vec<Element>, Error> {
        if self.is_trivial() {
            return Err(Error::TrivialLattice);
        }
        Ok((0..self.inner.points.len())
            .filter(|&p| self.inner.below[p] == 0)
            .map(|p| self.wrap(1u64 << p))
            .collect())
    }

    /// The complement of `a`, if it has one. Unique when it exists because the
    /// lattice is distributive.
    pub fn complement(&self, a: Element) -> Result<Option<Element>, Error> {
        self.check(a)?;
        let top = self.inner.top;
        Ok(self
            .inner
            .elements
            .iter()
            .find(|&&x| x & a.bits == 0 && x | a.bits == top)
            .map(|&x| self.wrap(x)))
    }

    /// Closure of `xs` under finite joins, including the empty join `0`.
    /// Returned in ascending order.
    pub fn join_closure(&self, xs: &[Element]) -> Result<Vec<Element>, Error> {
        let mut closed: BTreeSet<u64> = BTreeSet::new();
        closed.insert(0);
        for &x in xs {
            self.check(x)?;
            let grown: Vec<u64> = closed.iter().map(|&c| c | x.bits).collect();
            closed.extend(grown);
        }
        Ok(closed.into_iter().map(|b| self.wrap(b)).collect())
    }

    /// Exhaustive check of `a∧(b∨c) = (a∧b)∨(a∧c)` over all triples.
    pub fn is_distributive_exhaustive(&self) -> bool {
        let els = &self.inner.elements;
        els.iter().all(|&a| {
            els.iter()
                .all(|&b| els.iter().all(|&c| a & (b | c) == (a & b) | (a & c)))
        })
    }

    /// Covering pairs `(x, x ∪ {p})`, yielded as `(x, p)`.
    pub(crate) fn covers(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        let n = self.inner.points.len();
        self.inner.elements.iter().flat_map(move |&x| {
            (0..n)
                .filter(move |&p| x >> p & 1 == 0 && self.inner.below[p] & !x == 0)
                .map(move |p| (x, p))
        })
    }

    /// Whether point `p` is maximal within the down-set `bits`.
    pub(crate) fn is_maximal_in(&self, bits: u64, p: usize) -> bool {
        bits >> p & 1 == 1 && self.inner.above[p] & bits == 0
    }
}

/// Depth-first generation of all down-sets. Points are in topological bit
/// order, so a point can join once everything below it already has.
fn enumerate_downsets(below: &[u64], point: usize, current: u64, out: &mut Vec<u64>) {
    if point == below.len() {
        out.push(current);
        return;
    }
    enumerate_downsets(below, point + 1, current, out);
    if below[point] & !current == 0 {
        enumerate_downsets(below, point + 1, current | 1u64 << point, out);
    }
}
