//! p-morphisms: verification, existence search, the canonical reduction of
//! chequered frames onto Medvedev frames, and reducibility queries.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bits::{words_disjoint, BitSet};
use crate::frames::{chequered, coord_label, medvedev, Coord, CoordLabel, SubsetLabel};
use crate::iso::{coarse_signature, is_isomorphic};
use crate::poset::{disjoint_up, Poset, Subframe};
use crate::{Error, Limits, Result};

pub use crate::search::{search_p_morphism, Branch, MorphismSearch, SearchOutcome};

/// A total map between the points of two posets.
#[derive(Clone, Debug)]
pub struct PointMap {
    source: Poset,
    target: Poset,
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(source: &Poset, target: &Poset, images: Vec<usize>) -> Result<PointMap> {
        if images.len() != source.size() {
            return Err(Error::MapLength {
                got: images.len(),
                expected: source.size(),
            });
        }
        for &t in &images {
            target.check_point(t)?;
        }
        Ok(PointMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `(source, target)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.images.iter().copied().enumerate()
    }

    /// Precomposes with the inclusion of a subframe of the source.
    pub fn restrict(&self, sub: &Subframe) -> PointMap {
        PointMap {
            source: sub.poset.clone(),
            target: self.target.clone(),
            images: sub.to_parent.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Overwrites one image; used to build deliberately broken maps.
    pub fn with_image(mut self, x: usize, t: usize) -> Result<PointMap> {
        self.source.check_point(x)?;
        self.target.check_point(t)?;
        self.images[x] = t;
        Ok(self)
    }

    pub fn check(&self, require_onto: bool) -> MorphismReport {
        check_p_morphism(self, require_onto)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x <= y` in the source but `f(x) <= f(y)` fails.
    Forth { x: usize, y: usize },
    /// `f(x) <= target` but no `z >= x` maps to `target`.
    Back { x: usize, target: usize },
    /// Nothing maps to `target`.
    NotOnto { target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub violations: Vec<Violation>,
    /// Violations beyond the cap were counted but not recorded.
    pub truncated: bool,
}

impl MorphismReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const VIOLATION_CAP: usize = 1000;

/// Checks monotonicity, the back condition and (optionally) surjectivity.
pub fn check_p_morphism(m: &PointMap, require_onto: bool) -> MorphismReport {
    let (p, q, f) = (&m.source, &m.target, &m.images);
    let mut violations = Vec::new();
    let mut truncated = false;
    let mut push = |v: Violation| {
        if violations.len() < VIOLATION_CAP {
            violations.push(v);
        } else {
            truncated = true;
        }
    };
    for x in p.points() {
        for y in p.up_set(x).iter() {
            if !q.leq(f[x], f[y]) {
                push(Violation::Forth { x, y });
            }
        }
    }
    for x in p.points() {
        let mut reached = BitSet::new(q.size());
        for y in p.up_set(x).iter() {
            reached.insert(f[y]);
        }
        for t in q.up_set(f[x]).iter() {
            if !reached.contains(t) {
                push(Violation::Back { x, target: t });
            }
        }
    }
    if require_onto {
        let hit = BitSet::from_indices(q.size(), f.iter().copied());
        for t in q.points() {
            if !hit.contains(t) {
                push(Violation::NotOnto { target: t });
            }
        }
    }
    MorphismReport {
        violations,
        truncated,
    }
}

/// Re-checks that a recorded violation really is one.
pub fn is_genuine(m: &PointMap, v: Violation) -> bool {
    let (p, q, f) = (&m.source, &m.target, &m.images);
    match v {
        Violation::Forth { x, y } => p.leq(x, y) && !q.leq(f[x], f[y]),
        Violation::Back { x, target } => {
            q.leq(f[x], target) && !p.up_set(x).iter().any(|z| f[z] == target)
        }
        Violation::NotOnto { target } => !f.contains(&target),
    }
}

impl PartialEq for PointMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && self.images == other.images
    }
}

impl Eq for PointMap {}

/// `n = 2^m - 1` for `m >= 1`.
pub fn reduction_dimension(m: u32) -> Result<usize> {
    if m == 0 || m >= usize::BITS - 1 {
        return Err(Error::BadIndex(0));
    }
    Ok((1usize << m) - 1)
}

fn range_mask(lo: u32, hi: u32) -> u64 {
    (lo..=hi).fold(0, |acc, e| acc | 1 << (e - 1))
}

/// Image of an atom of `F_n`, `n = 2^p - 1`, under the canonical reduction.
/// Returned as a mask over `{1, ..., n+1}`.
pub fn canonical_atom_image(atom: &CoordLabel) -> Result<u64> {
    let n = atom.len();
    if !(n + 1).is_power_of_two() {
        return Err(Error::BadIndex(n));
    }
    let up = atom.uparrow()?;
    if n == 1 {
        return Ok(match atom.coords()[0] {
            Coord::Minus => 1,
            _ => 2,
        });
    }
    let half = n.div_ceil(2);
    if up < half {
        canonical_atom_image(&atom.drop_right(half)?)
    } else if up < n {
        let inner = atom.drop_left(half - 1)?.drop_right(1)?;
        Ok(canonical_atom_image(&inner)? << half)
    } else if atom.coords()[n - 1] == Coord::Minus {
        Ok(range_mask(1, half as u32))
    } else {
        Ok(range_mask(half as u32 + 1, 2 * half as u32))
    }
}

/// `F_n` together with the subset each of its points is sent to: the union of
/// the images of the atoms below it (the empty set for the root).
pub fn canonical_images(m: u32, limits: &Limits) -> Result<(Poset, Vec<SubsetLabel>)> {
    let n = reduction_dimension(m)?;
    let source = chequered(n, limits)?;
    let atoms = source.atoms()?;
    let atom_images: Vec<u64> = atoms
        .iter()
        .map(|&a| canonical_atom_image(&coord_label(&source, a)?))
        .collect::<Result<_>>()?;
    let universe = n as u32 + 1;
    let images = source
        .points()
        .map(|x| {
            let mask = atoms
                .iter()
                .zip(&atom_images)
                .filter(|(&a, _)| source.leq(a, x))
                .fold(0, |acc, (_, &img)| acc | img);
            SubsetLabel::from_mask(universe, mask)
        })
        .collect();
    Ok((source, images))
}

/// The canonical reduction `F_n -> M_n` for `n = 2^m - 1`.
pub fn canonical_reduction(m: u32, limits: &Limits) -> Result<PointMap> {
    let n = reduction_dimension(m)?;
    let (source, labels) = canonical_images(m, limits)?;
    let target = medvedev(n, limits)?;
    let images = labels
        .iter()
        .map(|l| {
            let text = l.to_string();
            target.index_of(&text).ok_or(Error::BadLabel(text))
        })
        .collect::<Result<_>>()?;
    PointMap::new(&source, &target, images)
}

/// A rooted generated subframe of `big` mapping onto `small`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub seed: usize,
    pub subframe: Subframe,
    pub map: PointMap,
}

/// Looks for a point of `big` whose generated subframe maps p-morphically
/// onto `small`. Seeds are tried smallest generated subframe first, once per
/// isomorphism class.
pub fn reducible(big: &Poset, small: &Poset, limits: &Limits) -> Result<Option<Reduction>> {
    let small_root = small.root_of().ok_or(Error::NotRooted)?;
    let mut seeds: Vec<usize> = big.points().collect();
    seeds.sort_by_key(|&x| (big.up_set(x).count(), x));
    let mut tried: Vec<((usize, usize, usize), Poset)> = Vec::new();
    for seed in seeds {
        if big.depth(seed) < small.depth(small_root) {
            continue;
        }
        let sub = big.generated_subframe(&[seed])?;
        if sub.poset.size() < small.size() {
            continue;
        }
        let sig = coarse_signature(&sub.poset);
        if tried
            .iter()
            .any(|(s, rep)| *s == sig && is_isomorphic(rep, &sub.poset).is_some())
        {
            continue;
        }
        if let Some(map) = search_p_morphism(&sub.poset, small, true, limits)? {
            return Ok(Some(Reduction {
                seed,
                subframe: sub,
                map,
            }));
        }
        tried.push((sig, sub.poset));
    }
    Ok(None)
}

/// Two points with disjoint generated subframes isomorphic to the parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointEmbedding {
    pub u: usize,
    pub v: usize,
    /// Isomorphism from `part_a` onto the subframe generated by `u`, as
    /// points of `big`.
    pub iso_a: Vec<usize>,
    pub iso_b: Vec<usize>,
}

fn embedding_of(big: &Poset, x: usize, part: &Poset) -> Result<Option<Vec<usize>>> {
    let sub = big.generated_subframe(&[x])?;
    if sub.poset.size() != part.size() {
        return Ok(None);
    }
    Ok(is_isomorphic(part, &sub.poset).map(|m| m.into_iter().map(|i| sub.to_parent[i]).collect()))
}

/// Witnesses `part_a + part_b` as a generated subframe of `big`.
pub fn embeds_disjoint_union(
    big: &Poset,
    part_a: &Poset,
    part_b: &Poset,
) -> Result<Option<DisjointEmbedding>> {
    let mut a_hits = Vec::new();
    let mut b_hits = Vec::new();
    for x in big.points() {
        if let Some(m) = embedding_of(big, x, part_a)? {
            a_hits.push((x, m));
        }
        if let Some(m) = embedding_of(big, x, part_b)? {
            b_hits.push((x, m));
        }
    }
    for (u, iso_a) in &a_hits {
        for (v, iso_b) in &b_hits {
            if u != v && disjoint_up(big, *u, *v) {
                return Ok(Some(DisjointEmbedding {
                    u: *u,
                    v: *v,
                    iso_a: iso_a.clone(),
                    iso_b: iso_b.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Checks a disjoint-union witness independently of how it was found.
pub fn verify_disjoint_embedding(big: &Poset, a: &Poset, b: &Poset, w: &DisjointEmbedding) -> bool {
    let ok_part = |root: usize, part: &Poset, iso: &[usize]| {
        let up = big.up_set(root);
        iso.len() == part.size()
            && iso.len() == up.count()
            && iso.iter().all(|&y| up.contains(y))
            && part.points().all(|i| {
                part.points()
                    .all(|j| part.leq(i, j) == big.leq(iso[i], iso[j]))
            })
    };
    words_disjoint(big.up_words(w.u), big.up_words(w.v))
        && ok_part(w.u, a, &w.iso_a)
        && ok_part(w.v, b, &w.iso_b)
}
