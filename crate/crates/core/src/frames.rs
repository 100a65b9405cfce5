//! The concrete frame families: the fork, chequered products of forks,
//! Medvedev frames of proper subsets, and the seven-point frame H.
//!
//! Chequered points are labeled by their coordinate strings over `-`, `0`,
//! `+` (for example `-0+`). Medvedev points are labeled by sorted element
//! lists such as `{1,3}`, with `{}` for the empty set. Within both families
//! points are indexed in lexicographic order of their coordinate or element
//! sequence, with `0 < - < +` for coordinates; the root is always index 0.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::{words_disjoint, BitMatrix, BitSet};
use crate::iso::is_isomorphic;
use crate::poset::Poset;
use crate::{Error, Limits, Result};

/// One coordinate of a chequered point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Zero,
    Minus,
    Plus,
}

impl Coord {
    pub fn symbol(self) -> char {
        match self {
            Coord::Zero => '0',
            Coord::Minus => '-',
            Coord::Plus => '+',
        }
    }

    pub fn from_symbol(c: char) -> Option<Coord> {
        match c {
            '0' => Some(Coord::Zero),
            '-' => Some(Coord::Minus),
            '+' => Some(Coord::Plus),
            _ => None,
        }
    }

    fn digit(self) -> usize {
        self as usize
    }

    /// Fork order: the zero coordinate lies below both signs.
    pub fn leq(self, other: Coord) -> bool {
        self == Coord::Zero || self == other
    }
}

/// Coordinate tuple naming a point of a chequered frame.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordLabel(Vec<Coord>);

impl CoordLabel {
    pub fn new(coords: Vec<Coord>) -> CoordLabel {
        CoordLabel(coords)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based index of the only non-zero coordinate.
    pub fn uparrow(&self) -> Result<usize> {
        let mut nonzero = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Coord::Zero)
            .map(|(i, _)| i + 1);
        match (nonzero.next(), nonzero.next()) {
            (Some(i), None) => Ok(i),
            _ => Err(Error::NotAtom(self.to_string())),
        }
    }

    pub fn is_atom(&self) -> bool {
        self.uparrow().is_ok()
    }

    /// The label with its `n` leftmost coordinates deleted.
    pub fn drop_left(&self, n: usize) -> Result<CoordLabel> {
        if n >= self.len() {
            return Err(Error::Length {
                drop: n,
                len: self.len(),
            });
        }
        Ok(CoordLabel(self.0[n..].to_vec()))
    }

    /// The label with its `n` rightmost coordinates deleted.
    pub fn drop_right(&self, n: usize) -> Result<CoordLabel> {
        if n >= self.len() {
            return Err(Error::Length {
                drop: n,
                len: self.len(),
            });
        }
        Ok(CoordLabel(self.0[..self.len() - n].to_vec()))
    }

    /// Index of this point inside `chequered(self.len())`.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, c| acc * 3 + c.digit())
    }

    pub fn leq(&self, other: &CoordLabel) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }
}

impl fmt::Display for CoordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for CoordLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoordLabel> {
        let coords: Option<Vec<Coord>> = s.chars().map(Coord::from_symbol).collect();
        match coords {
            Some(c) if !c.is_empty() => Ok(CoordLabel(c)),
            _ => Err(Error::BadLabel(s.into())),
        }
    }
}

/// Subset of `{1, ..., universe}` naming a point of a Medvedev frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetLabel {
    mask: u64,
    universe: u32,
}

impl SubsetLabel {
    /// `elems` are 1-based.
    pub fn new(universe: u32, elems: &[u32]) -> Result<SubsetLabel> {
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > universe || universe > 63 {
                return Err(Error::BadLabel(alloc::format!("{elems:?}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(SubsetLabel { mask, universe })
    }

    pub fn from_mask(universe: u32, mask: u64) -> SubsetLabel {
        SubsetLabel { mask, universe }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn elems(&self) -> Vec<u32> {
        (1..=self.universe)
            .filter(|e| self.mask >> (e - 1) & 1 == 1)
            .collect()
    }

    pub fn is_proper(&self) -> bool {
        self.mask != full_mask(self.universe)
    }

    pub fn is_subset(&self, other: &SubsetLabel) -> bool {
        self.mask & !other.mask == 0
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Parses `{1,3}` style labels. The universe is not recorded in the text, so
/// the caller supplies it.
pub fn parse_subset_label(universe: u32, s: &str) -> Result<SubsetLabel> {
    let bad = || Error::BadLabel(s.into());
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(bad)?;
    let elems: Vec<u32> = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    SubsetLabel::new(universe, &elems)
}

fn full_mask(universe: u32) -> u64 {
    if universe >= 64 {
        !0
    } else {
        (1u64 << universe) - 1
    }
}

/// The three-point fork: `0` below `-` and `+`.
pub fn fork() -> Poset {
    Poset::from_covers(["0", "-", "+"], &[(0, 1), (0, 2)]).expect("fork is a poset")
}

/// The n-fold product of forks.
pub fn chequered(n: usize, limits: &Limits) -> Result<Poset> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    limits.check_points(3u128.checked_pow(n as u32).unwrap_or(u128::MAX))?;
    let f = fork();
    let mut p = f.clone();
    for _ in 1..n {
        p = p.product(&f, limits)?;
    }
    Ok(p)
}

/// Coordinate label of a point of a chequered frame.
pub fn coord_label(p: &Poset, x: usize) -> Result<CoordLabel> {
    p.label(x).parse()
}

/// All proper subsets of `{1, ..., n+1}` under inclusion.
pub fn medvedev(n: usize, limits: &Limits) -> Result<Poset> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    medvedev_any(n, limits)
}

/// Like [`medvedev`] but also admits `n = 0`, the one-point frame.
pub(crate) fn medvedev_any(n: usize, limits: &Limits) -> Result<Poset> {
    let universe = n + 1;
    if universe > 63 {
        return Err(Error::SizeGuard {
            requested: u128::MAX,
            budget: limits.max_points,
        });
    }
    limits.check_points((1u128 << universe) - 1)?;
    let full = full_mask(universe as u32);

    let mut masks = Vec::new();
    lex_subsets(0, 1, universe as u32, &mut masks);
    masks.retain(|&m| m != full);
    let mut index = BTreeMap::new();
    for (i, &m) in masks.iter().enumerate() {
        index.insert(m, i);
    }

    let size = masks.len();
    let mut up = BitMatrix::new(size);
    for (i, &m) in masks.iter().enumerate() {
        // Supersets of m: m plus every submask of its complement, minus the full set.
        let rest = full & !m;
        let mut sub = rest;
        loop {
            let sup = m | sub;
            if sup != full {
                up.set(i, index[&sup]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let labels = masks
        .iter()
        .map(|&m| alloc::string::ToString::to_string(&SubsetLabel::from_mask(universe as u32, m)))
        .collect();
    Poset::from_order(labels, up)
}

/// Pushes every subset of `{from..=universe}` added to `prefix`, in
/// lexicographic order of sorted element lists.
fn lex_subsets(prefix: u64, from: u32, universe: u32, out: &mut Vec<u64>) {
    out.push(prefix);
    for e in from..=universe {
        lex_subsets(prefix | 1 << (e - 1), e + 1, universe, out);
    }
}

/// Subset label of a point of `medvedev(n)`.
pub fn subset_label(p: &Poset, n: usize, x: usize) -> Result<SubsetLabel> {
    parse_subset_label(n as u32 + 1, p.label(x))
}

/// The seven-point frame H: root `r`, atoms `a b c d`, tops `e` (over
/// `a b c`) and `f` (over `b c d`).
pub fn frame_h() -> Poset {
    Poset::from_covers(
        ["r", "a", "b", "c", "d", "e", "f"],
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 5),
            (2, 5),
            (2, 6),
            (3, 5),
            (3, 6),
            (4, 6),
        ],
    )
    .expect("H is a poset")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Chequered,
    Medvedev,
}

impl Family {
    /// The k-th member, with k = 0 the one-point frame.
    pub fn member(self, k: usize, limits: &Limits) -> Result<Poset> {
        match (self, k) {
            (_, 0) => Ok(Poset::singleton("0")),
            (Family::Chequered, k) => chequered(k, limits),
            (Family::Medvedev, k) => medvedev_any(k, limits),
        }
    }

    pub fn size_of(self, k: usize) -> u128 {
        match self {
            Family::Chequered => 3u128.pow(k as u32),
            Family::Medvedev => (1u128 << (k + 1)) - 1,
        }
    }
}

/// One row of the common-successor table: for atoms `u`, `u2`, an atom `v`
/// sharing a maximal successor with each of them, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommonSuccessorRow {
    pub u: usize,
    pub u2: usize,
    pub v: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSuccessorReport {
    pub holds: bool,
    pub rows: Vec<CommonSuccessorRow>,
}

/// For every pair of atoms of `chequered(n)`, looks for an atom with a
/// maximal common successor with both.
pub fn common_successor_fact(n: usize, limits: &Limits) -> Result<CommonSuccessorReport> {
    let p = chequered(n, limits)?;
    let atoms = p.atoms()?;
    let tops = BitSet::from_indices(p.size(), p.maximal());
    let shares_top = |x: usize, y: usize| {
        let mut s = p.up_set(x);
        s.intersect_with(&p.up_set(y));
        !words_disjoint(s.words(), tops.words())
    };
    let mut rows = Vec::new();
    for (i, &u) in atoms.iter().enumerate() {
        for &u2 in &atoms[i..] {
            let v = atoms
                .iter()
                .copied()
                .find(|&v| shares_top(v, u) && shares_top(v, u2));
            rows.push(CommonSuccessorRow { u, u2, v });
        }
    }
    Ok(CommonSuccessorReport {
        holds: rows.iter().all(|r| r.v.is_some()),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfResemblance {
    pub holds: bool,
    /// For each point, the k with `up(x)` isomorphic to member k.
    pub ks: Vec<Option<usize>>,
}

/// Checks that each rooted generated subframe of `family(n)` is isomorphic to
/// some member `k <= n` of the same family.
pub fn self_resemblance_check(
    family: Family,
    n: usize,
    limits: &Limits,
) -> Result<SelfResemblance> {
    let p = family.member(n, limits)?;
    let mut members: BTreeMap<usize, Poset> = BTreeMap::new();
    let mut ks = Vec::with_capacity(p.size());
    for x in p.points() {
        let sub = p.generated_subframe(&[x])?.poset;
        let k = (0..=n).find(|&k| family.size_of(k) == sub.size() as u128);
        let found = match k {
            Some(k) => {
                if let alloc::collections::btree_map::Entry::Vacant(e) = members.entry(k) {
                    e.insert(family.member(k, limits)?);
                }
                is_isomorphic(&sub, &members[&k]).map(|_| k)
            }
            None => None,
        };
        ks.push(found);
    }
    Ok(SelfResemblance {
        holds: ks.iter().all(Option::is_some),
        ks,
    })
}
