//! Finite partial orders stored as dense reflexive bit matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::bits::{words_and_count, words_disjoint, words_subset, BitMatrix, BitSet, Ones};
use crate::{Error, Limits, Result};

static NEXT_ID: AtomicUsize = AtomicUsize::new(1);

/// A finite reflexive partial order with labeled points `0..size`.
///
/// Immutable once built; clones share storage.
#[derive(Clone)]
pub struct Poset {
    inner: Arc<Inner>,
}

struct Inner {
    id: usize,
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    up: BitMatrix,
    down: BitMatrix,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    height: Vec<usize>,
    depth: Vec<usize>,
    linear: Vec<usize>,
}

fn index_labels(labels: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `cover_pairs`. Pairs need not be a reduction; `(x, x)` is ignored.
    pub fn from_covers<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        cover_pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut succ = alloc::vec![Vec::new(); n];
        for &(a, b) in cover_pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            if a != b {
                succ[a].push(b);
            }
        }
        let index = index_labels(&labels)?;

        let mut up = BitMatrix::new(n);
        let mut stack = Vec::new();
        for x in 0..n {
            up.set(x, x);
            stack.push(x);
            while let Some(y) = stack.pop() {
                for &z in &succ[y] {
                    if !up.get(x, z) {
                        up.set(x, z);
                        stack.push(z);
                    }
                }
            }
        }
        for x in 0..n {
            for y in Ones::new(up.row(x)) {
                if y != x && up.get(y, x) {
                    return Err(Error::Cycle(x.min(y), x.max(y)));
                }
            }
        }
        Ok(Poset::build(labels, index, up))
    }

    /// Wraps an order matrix that is already reflexive, transitive and
    /// antisymmetric. Callers guarantee the axioms.
    pub(crate) fn from_order(labels: Vec<String>, up: BitMatrix) -> Result<Poset> {
        let index = index_labels(&labels)?;
        Ok(Poset::build(labels, index, up))
    }

    fn build(labels: Vec<String>, index: BTreeMap<String, usize>, up: BitMatrix) -> Poset {
        let n = labels.len();
        let down = up.transpose();

        // x < y implies |down(x)| < |down(y)|, so this is a linear extension.
        let down_count: Vec<usize> = (0..n).map(|x| Ones::new(down.row(x)).count()).collect();
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&x| (down_count[x], x));

        let mut upper_covers = alloc::vec![Vec::new(); n];
        let mut lower_covers = alloc::vec![Vec::new(); n];
        for (x, covers) in upper_covers.iter_mut().enumerate() {
            for y in Ones::new(up.row(x)) {
                if y != x && words_and_count(up.row(x), down.row(y)) == 2 {
                    covers.push(y);
                    lower_covers[y].push(x);
                }
            }
        }

        let mut height = alloc::vec![0; n];
        for &y in &linear {
            height[y] = lower_covers[y]
                .iter()
                .map(|&x| height[x] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut depth = alloc::vec![0; n];
        for &x in linear.iter().rev() {
            depth[x] = upper_covers[x]
                .iter()
                .map(|&y| depth[y] + 1)
                .max()
                .unwrap_or(0);
        }

        Poset {
            inner: Arc::new(Inner {
                id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
                labels,
                index,
                up,
                down,
                upper_covers,
                lower_covers,
                height,
                depth,
                linear,
            }),
        }
    }

    pub fn singleton(label: impl Into<String>) -> Poset {
        Poset::from_covers([label.into()], &[]).expect("singleton is a poset")
    }

    pub fn empty() -> Poset {
        Poset::from_covers(Vec::<String>::new(), &[]).expect("empty poset")
    }

    /// An n-element chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers((0..n).map(|i| format!("{i}")), &pairs).expect("chain is a poset")
    }

    /// An n-element antichain.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers((0..n).map(|i| format!("{i}")), &[]).expect("antichain is a poset")
    }

    /// Identity token; upsets and maps remember which poset they belong to.
    pub fn id(&self) -> usize {
        self.inner.id
    }

    pub fn same_as(&self, other: &Poset) -> bool {
        self.id() == other.id()
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn points(&self) -> core::ops::Range<usize> {
        0..self.size()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                size: self.size(),
            })
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.inner.up.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Row of `{y : x <= y}` as raw words.
    #[inline]
    pub fn up_words(&self, x: usize) -> &[u64] {
        self.inner.up.row(x)
    }

    /// Row of `{y : y <= x}` as raw words.
    #[inline]
    pub fn down_words(&self, x: usize) -> &[u64] {
        self.inner.down.row(x)
    }

    pub fn up_set(&self, x: usize) -> BitSet {
        self.inner.up.row_set(x)
    }

    pub fn down_set(&self, x: usize) -> BitSet {
        self.inner.down.row_set(x)
    }

    pub fn order_matrix(&self) -> &BitMatrix {
        &self.inner.up
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.inner.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.inner.lower_covers[x]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .points()
            .flat_map(|x| self.upper_covers(x).iter().map(move |&y| (x, y)))
            .collect();
        v.sort_unstable();
        v
    }

    /// Length of the longest chain ending at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.inner.height[x]
    }

    /// Length of the longest chain starting at `x`.
    pub fn depth(&self, x: usize) -> usize {
        self.inner.depth[x]
    }

    /// Points sorted so that every point comes after all points below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.inner.linear
    }

    pub fn minimal(&self) -> Vec<usize> {
        self.points()
            .filter(|&x| self.lower_covers(x).is_empty())
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        self.points()
            .filter(|&x| self.upper_covers(x).is_empty())
            .collect()
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.upper_covers(x).is_empty()
    }

    /// The point below every point, if there is one.
    pub fn root_of(&self) -> Option<usize> {
        match self.minimal().as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }

    pub fn is_rooted(&self) -> bool {
        self.root_of().is_some()
    }

    /// Immediate successors of the root.
    pub fn atoms(&self) -> Result<Vec<usize>> {
        let r = self.root_of().ok_or(Error::NotRooted)?;
        let mut v = self.upper_covers(r).to_vec();
        v.sort_unstable();
        Ok(v)
    }

    /// Exhaustively checks reflexivity, antisymmetry and transitivity.
    /// Returns the first offending triple on failure.
    pub fn order_axioms_hold(&self) -> core::result::Result<(), (usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err((x, x, x));
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err((x, y, x));
                }
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cartesian product under the coordinatewise order. Point `(a, b)` gets
    /// index `a * |q| + b` and label `label(a) ++ label(b)`; if concatenation
    /// collides, labels fall back to `(a,b)` form.
    pub fn product(&self, q: &Poset, limits: &Limits) -> Result<Poset> {
        let (np, nq) = (self.size(), q.size());
        limits.check_points(np as u128 * nq as u128)?;
        let n = np * nq;
        let mut labels = Vec::with_capacity(n);
        for a in 0..np {
            for b in 0..nq {
                labels.push(format!("{}{}", self.label(a), q.label(b)));
            }
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != n {
            labels.clear();
            for a in 0..np {
                for b in 0..nq {
                    labels.push(format!("({},{})", self.label(a), q.label(b)));
                }
            }
        }
        let mut up = BitMatrix::new(n);
        for a in 0..np {
            for b in 0..nq {
                let x = a * nq + b;
                for c in Ones::new(self.up_words(a)) {
                    for d in Ones::new(q.up_words(b)) {
                        up.set(x, c * nq + d);
                    }
                }
            }
        }
        Poset::from_order(labels, up)
    }

    /// Side-by-side union; labels become `0:label` and `1:label`.
    pub fn disjoint_union(&self, q: &Poset) -> Poset {
        let (np, nq) = (self.size(), q.size());
        let labels: Vec<String> = self
            .labels()
            .iter()
            .map(|l| format!("0:{l}"))
            .chain(q.labels().iter().map(|l| format!("1:{l}")))
            .collect();
        let mut up = BitMatrix::new(np + nq);
        for a in 0..np {
            for c in Ones::new(self.up_words(a)) {
                up.set(a, c);
            }
        }
        for b in 0..nq {
            for d in Ones::new(q.up_words(b)) {
                up.set(np + b, np + d);
            }
        }
        Poset::from_order(labels, up).expect("tagged labels are distinct")
    }

    /// Upward closure of `seeds`.
    pub fn upward_closure(&self, seeds: &[usize]) -> Result<BitSet> {
        let mut s = BitSet::new(self.size());
        for &x in seeds {
            self.check_point(x)?;
            s.union_words(self.up_words(x));
        }
        Ok(s)
    }

    /// Restriction of the order to the upward closure of `seeds`.
    pub fn generated_subframe(&self, seeds: &[usize]) -> Result<Subframe> {
        if seeds.is_empty() {
            return Err(Error::EmptySeed);
        }
        let members = self.upward_closure(seeds)?;
        Ok(self.restrict(&members))
    }

    /// Induced suborder on an arbitrary point set, keeping parent order of indices.
    pub fn restrict(&self, members: &BitSet) -> Subframe {
        let to_parent: Vec<usize> = members.iter().collect();
        let mut from_parent = alloc::vec![usize::MAX; self.size()];
        for (i, &x) in to_parent.iter().enumerate() {
            from_parent[x] = i;
        }
        let m = to_parent.len();
        let mut up = BitMatrix::new(m);
        for (i, &x) in to_parent.iter().enumerate() {
            for y in Ones::new(self.up_words(x)) {
                if from_parent[y] != usize::MAX {
                    up.set(i, from_parent[y]);
                }
            }
        }
        let labels = to_parent
            .iter()
            .map(|&x| String::from(self.label(x)))
            .collect();
        let poset = Poset::from_order(labels, up).expect("labels inherited from a poset");
        Subframe {
            poset,
            to_parent,
            from_parent,
        }
    }

    /// Points of `x`'s up-set that lie in both up-sets; used as an
    /// isomorphism invariant.
    pub(crate) fn common_up(&self, x: usize, y: usize) -> usize {
        words_and_count(self.up_words(x), self.up_words(y))
    }

    pub(crate) fn common_down(&self, x: usize, y: usize) -> usize {
        words_and_count(self.down_words(x), self.down_words(y))
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.label(a), self.label(b)))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.inner.labels)
            .field("covers", &covers)
            .finish()
    }
}

/// A generated (or induced) subframe with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct Subframe {
    pub poset: Poset,
    pub to_parent: Vec<usize>,
    from_parent: Vec<usize>,
}

impl Subframe {
    pub fn from_parent(&self, x: usize) -> Option<usize> {
        self.from_parent
            .get(x)
            .copied()
            .filter(|&i| i != usize::MAX)
    }

    pub fn contains_parent(&self, x: usize) -> bool {
        self.from_parent(x).is_some()
    }
}

/// An upward-closed set of points of one specific poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UpSet {
    poset: usize,
    bits: BitSet,
}

impl UpSet {
    pub fn empty(p: &Poset) -> UpSet {
        UpSet {
            poset: p.id(),
            bits: BitSet::new(p.size()),
        }
    }

    pub fn full(p: &Poset) -> UpSet {
        UpSet {
            poset: p.id(),
            bits: BitSet::full(p.size()),
        }
    }

    /// Accepts `points` only if they are already upward closed.
    pub fn from_points(p: &Poset, points: &[usize]) -> Result<UpSet> {
        let mut bits = BitSet::new(p.size());
        for &x in points {
            p.check_point(x)?;
            bits.insert(x);
        }
        UpSet::from_bits(p, bits)
    }

    pub fn from_bits(p: &Poset, bits: BitSet) -> Result<UpSet> {
        if bits.universe() != p.size() {
            return Err(Error::PosetMismatch);
        }
        if let Some(missing) = first_unclosed(p, &bits) {
            return Err(Error::NotUpwardClosed(missing));
        }
        Ok(UpSet {
            poset: p.id(),
            bits,
        })
    }

    pub(crate) fn from_bits_unchecked(p: &Poset, bits: BitSet) -> UpSet {
        debug_assert!(first_unclosed(p, &bits).is_none());
        UpSet {
            poset: p.id(),
            bits,
        }
    }

    /// Smallest upset containing `points`.
    pub fn closure(p: &Poset, points: &[usize]) -> Result<UpSet> {
        Ok(UpSet {
            poset: p.id(),
            bits: p.upward_closure(points)?,
        })
    }

    pub fn belongs_to(&self, p: &Poset) -> bool {
        self.poset == p.id()
    }

    pub fn poset_id(&self) -> usize {
        self.poset
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn members(&self) -> Ones<'_> {
        self.bits.iter()
    }

    pub fn union(&self, other: &UpSet) -> Result<UpSet> {
        self.same_poset(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(UpSet {
            poset: self.poset,
            bits,
        })
    }

    pub fn intersection(&self, other: &UpSet) -> Result<UpSet> {
        self.same_poset(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(UpSet {
            poset: self.poset,
            bits,
        })
    }

    pub fn is_subset(&self, other: &UpSet) -> Result<bool> {
        self.same_poset(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    fn same_poset(&self, other: &UpSet) -> Result<()> {
        if self.poset == other.poset {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }
}

impl fmt::Debug for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.bits, f)
    }
}

/// Returns a successor missing from `bits`, if `bits` is not an upset.
pub fn first_unclosed(p: &Poset, bits: &BitSet) -> Option<usize> {
    for x in bits.iter() {
        if !words_subset(p.up_words(x), bits.words()) {
            return Ones::new(p.up_words(x)).find(|&y| !bits.contains(y));
        }
    }
    None
}

pub fn is_upward_closed(p: &Poset, bits: &BitSet) -> bool {
    first_unclosed(p, bits).is_none()
}

/// True when the up-sets of `x` and `y` share no point.
pub fn disjoint_up(p: &Poset, x: usize, y: usize) -> bool {
    words_disjoint(p.up_words(x), p.up_words(y))
}
