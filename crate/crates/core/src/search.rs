//! Existence search for p-morphisms.
//!
//! A map `f` is a p-morphism exactly when, at every source point `x`,
//! `up(f(x)) = {f(x)} ∪ ⋃ up(f(c))` over the upper covers `c` of `x`. The
//! search keeps a set of candidate images per source point and prunes it
//! with that local equation until a fixpoint, branching on the point with
//! the fewest candidates.
//!
//! Candidates are also filtered structurally: `f(x) = t` forces the
//! restriction of `f` to be an onto map from `up(x)` to `up(t)`, which is
//! decided recursively on the smaller frames and memoized per isomorphism
//! class. When the map must be onto, every target point needs a distinct
//! source point that can still reach it (a bipartite matching).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::iso::{coarse_signature, is_isomorphic};
use crate::morphism::{check_p_morphism, PointMap};
use crate::poset::Poset;
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PointMap),
    /// The whole space was explored; no map exists.
    None,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&PointMap> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            SearchOutcome::None => None,
        }
    }

    pub fn into_option(self) -> Option<PointMap> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            SearchOutcome::None => None,
        }
    }
}

/// One independent piece of a search, for running pieces in parallel.
#[derive(Clone, Debug)]
pub struct Branch {
    domains: Vec<BitSet>,
    /// `(point, image)` fixed by this branch, if the search had to branch.
    pub choice: Option<(usize, usize)>,
}

pub struct MorphismSearch<'a> {
    source: &'a Poset,
    target: &'a Poset,
    onto: bool,
    budget: u64,
}

impl<'a> MorphismSearch<'a> {
    pub fn new(source: &'a Poset, target: &'a Poset, onto: bool, limits: &Limits) -> Self {
        MorphismSearch {
            source,
            target,
            onto,
            budget: limits.max_search_nodes,
        }
    }

    /// Splits the search on its first branching point. An empty list means
    /// no map exists; a single branch without a choice is already decided.
    pub fn branches(&self) -> Result<Vec<Branch>> {
        let mut ctx = Ctx::new(self.budget);
        let problem = Problem::new(self.source, self.target, self.onto);
        let Some(domains) = problem.root_domains(&mut ctx)? else {
            return Ok(Vec::new());
        };
        Ok(match problem.branch_point(&domains) {
            None => alloc::vec![Branch {
                domains,
                choice: None
            }],
            Some(x) => domains[x]
                .iter()
                .filter_map(|t| {
                    let mut d = domains.clone();
                    d[x] = BitSet::from_indices(self.target.size(), [t]);
                    problem.propagate(&mut d, &[x]).then_some(Branch {
                        domains: d,
                        choice: Some((x, t)),
                    })
                })
                .collect(),
        })
    }

    /// Explores one branch with its own node budget.
    pub fn run_branch(&self, branch: &Branch) -> Result<SearchOutcome> {
        let mut ctx = Ctx::new(self.budget);
        let problem = Problem::new(self.source, self.target, self.onto);
        self.finish(problem.solve(&mut ctx, branch.domains.clone())?)
    }

    pub fn run(&self) -> Result<SearchOutcome> {
        let mut ctx = Ctx::new(self.budget);
        let problem = Problem::new(self.source, self.target, self.onto);
        let found = match problem.root_domains(&mut ctx)? {
            Some(d) => problem.solve(&mut ctx, d)?,
            None => None,
        };
        self.finish(found)
    }

    fn finish(&self, found: Option<Vec<usize>>) -> Result<SearchOutcome> {
        Ok(match found {
            Some(images) => {
                let m = PointMap::new(self.source, self.target, images)?;
                let report = check_p_morphism(&m, self.onto);
                assert!(report.ok(), "search produced an invalid map: {report:?}");
                SearchOutcome::Found(m)
            }
            None => SearchOutcome::None,
        })
    }
}

/// Deterministic existence search; `Ok(None)` is a definitive "no map".
pub fn search_p_morphism(
    source: &Poset,
    target: &Poset,
    require_onto: bool,
    limits: &Limits,
) -> Result<Option<PointMap>> {
    Ok(MorphismSearch::new(source, target, require_onto, limits)
        .run()?
        .into_option())
}

struct Ctx {
    nodes: u64,
    budget: u64,
    classes: Vec<((usize, usize, usize), Poset)>,
    onto_memo: BTreeMap<(usize, usize), bool>,
}

impl Ctx {
    fn new(budget: u64) -> Ctx {
        Ctx {
            nodes: 0,
            budget,
            classes: Vec::new(),
            onto_memo: BTreeMap::new(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget {
                estimated: self.nodes as u128,
                budget: self.budget as u128,
            });
        }
        Ok(())
    }

    fn class_of(&mut self, p: &Poset) -> usize {
        let sig = coarse_signature(p);
        if let Some(i) = self
            .classes
            .iter()
            .position(|(s, rep)| *s == sig && is_isomorphic(rep, p).is_some())
        {
            return i;
        }
        self.classes.push((sig, p.clone()));
        self.classes.len() - 1
    }
}

struct Problem<'a> {
    p: &'a Poset,
    q: &'a Poset,
    onto: bool,
    up_q: Vec<BitSet>,
    down_q: Vec<BitSet>,
}

impl<'a> Problem<'a> {
    fn new(p: &'a Poset, q: &'a Poset, onto: bool) -> Self {
        Problem {
            p,
            q,
            onto,
            up_q: q.points().map(|t| q.up_set(t)).collect(),
            down_q: q.points().map(|t| q.down_set(t)).collect(),
        }
    }

    /// Filtered and propagated starting domains, or `None` if infeasible.
    fn root_domains(&self, ctx: &mut Ctx) -> Result<Option<Vec<BitSet>>> {
        let (p, q) = (self.p, self.q);
        if p.is_empty() {
            return Ok((!self.onto || q.is_empty()).then(Vec::new));
        }
        if q.is_empty() || (self.onto && q.size() > p.size()) {
            return Ok(None);
        }
        let root = p.root_of();
        let mut target_subs: Vec<Option<usize>> = alloc::vec![None; q.size()];
        let mut domains = Vec::with_capacity(p.size());
        for x in p.points() {
            let up_x = p.up_set(x).count();
            let mut d = BitSet::new(q.size());
            for t in q.points() {
                if q.depth(t) <= p.depth(x) && self.up_q[t].count() <= up_x {
                    d.insert(t);
                }
            }
            if self.onto && root == Some(x) {
                d = match q.root_of() {
                    Some(r) if d.contains(r) => BitSet::from_indices(q.size(), [r]),
                    _ => return Ok(None),
                };
            }
            if up_x < p.size() {
                let candidates: Vec<usize> =
                    d.iter().filter(|&t| self.up_q[t].count() > 1).collect();
                if !candidates.is_empty() {
                    let sub = p.generated_subframe(&[x])?.poset;
                    let class = ctx.class_of(&sub);
                    for t in candidates {
                        let tclass = match target_subs[t] {
                            Some(c) => c,
                            None => {
                                let tsub = q.generated_subframe(&[t])?.poset;
                                let c = ctx.class_of(&tsub);
                                target_subs[t] = Some(c);
                                c
                            }
                        };
                        if !onto_exists(ctx, &sub, class, tclass)? {
                            d.remove(t);
                        }
                    }
                }
            }
            domains.push(d);
        }
        let all: Vec<usize> = p.points().collect();
        Ok(self.propagate(&mut domains, &all).then_some(domains))
    }

    /// Whether `t` is still a consistent image of `x` given the domains of
    /// its neighbours.
    fn supported(&self, d: &[BitSet], x: usize, t: usize) -> bool {
        let covers = self.p.upper_covers(x);
        let local = if covers.is_empty() {
            self.up_q[t].count() == 1
        } else {
            covers.iter().all(|&c| !d[c].is_disjoint(&self.up_q[t]))
                && self
                    .q
                    .upper_covers(t)
                    .iter()
                    .all(|&s| covers.iter().any(|&c| d[c].contains(t) || d[c].contains(s)))
        };
        local
            && self
                .p
                .lower_covers(x)
                .iter()
                .all(|&y| !d[y].is_disjoint(&self.down_q[t]))
    }

    /// Prunes to a fixpoint starting from `changed`; false on a wipe-out or
    /// when an onto map has become impossible.
    fn propagate(&self, d: &mut [BitSet], changed: &[usize]) -> bool {
        let p = self.p;
        let mut queued = BitSet::new(p.size());
        let mut queue: Vec<usize> = Vec::new();
        let push = |x: usize, queued: &mut BitSet, queue: &mut Vec<usize>| {
            if !queued.contains(x) {
                queued.insert(x);
                queue.push(x);
            }
        };
        for &x in changed {
            push(x, &mut queued, &mut queue);
            for &y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                push(y, &mut queued, &mut queue);
            }
        }
        while let Some(x) = queue.pop() {
            queued.remove(x);
            let dead: Vec<usize> = d[x].iter().filter(|&t| !self.supported(d, x, t)).collect();
            if dead.is_empty() {
                continue;
            }
            for t in dead {
                d[x].remove(t);
            }
            if d[x].is_empty() {
                return false;
            }
            for &y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                push(y, &mut queued, &mut queue);
            }
        }
        !self.onto || self.can_cover(d)
    }

    /// Every target point can be given its own source point.
    fn can_cover(&self, d: &[BitSet]) -> bool {
        let (p, q) = (self.p, self.q);
        let mut owner: Vec<usize> = alloc::vec![usize::MAX; p.size()];
        let takers: Vec<Vec<usize>> = q
            .points()
            .map(|t| p.points().filter(|&x| d[x].contains(t)).collect())
            .collect();
        fn augment(
            t: usize,
            takers: &[Vec<usize>],
            owner: &mut [usize],
            seen: &mut BitSet,
        ) -> bool {
            for &x in &takers[t] {
                if seen.contains(x) {
                    continue;
                }
                seen.insert(x);
                if owner[x] == usize::MAX || augment(owner[x], takers, owner, seen) {
                    owner[x] = t;
                    return true;
                }
            }
            false
        }
        q.points().all(|t| {
            let mut seen = BitSet::new(p.size());
            augment(t, &takers, &mut owner, &mut seen)
        })
    }

    /// The undecided point with the fewest candidates.
    fn branch_point(&self, d: &[BitSet]) -> Option<usize> {
        self.p
            .points()
            .filter(|&x| d[x].count() > 1)
            .min_by_key(|&x| (d[x].count(), x))
    }

    fn solve(&self, ctx: &mut Ctx, d: Vec<BitSet>) -> Result<Option<Vec<usize>>> {
        ctx.tick()?;
        let Some(x) = self.branch_point(&d) else {
            return Ok(Some(
                d.iter().map(|s| s.first().expect("non-empty")).collect(),
            ));
        };
        for t in d[x].iter() {
            let mut next = d.clone();
            next[x] = BitSet::from_indices(self.q.size(), [t]);
            if self.propagate(&mut next, &[x]) {
                if let Some(images) = self.solve(ctx, next)? {
                    return Ok(Some(images));
                }
            }
        }
        Ok(None)
    }
}

/// Whether the (rooted) class representative `sub` maps onto the frame of
/// class `target`.
fn onto_exists(ctx: &mut Ctx, sub: &Poset, class: usize, target: usize) -> Result<bool> {
    if let Some(&known) = ctx.onto_memo.get(&(class, target)) {
        return Ok(known);
    }
    let q = ctx.classes[target].1.clone();
    let problem = Problem::new(sub, &q, true);
    let found = match problem.root_domains(ctx)? {
        Some(d) => problem.solve(ctx, d)?.is_some(),
        None => false,
    };
    ctx.onto_memo.insert((class, target), found);
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{chequered, fork, frame_h, medvedev};

    #[test]
    fn branches_agree_with_a_single_run() {
        let l = Limits::default();
        let f2 = chequered(2, &l).unwrap();
        let h = frame_h();
        let s = MorphismSearch::new(&f2, &h, true, &l);
        let whole = s.run().unwrap();
        let first = s
            .branches()
            .unwrap()
            .iter()
            .map(|b| s.run_branch(b).unwrap())
            .find(|o| o.found().is_some())
            .unwrap();
        assert_eq!(whole, first);
    }

    #[test]
    fn small_negatives() {
        let l = Limits::default();
        let h = frame_h();
        for n in 1..=3 {
            let m = medvedev(n, &l).unwrap();
            assert_eq!(search_p_morphism(&m, &h, true, &l).unwrap(), None);
        }
        // a single maximal point cannot reach two
        assert_eq!(
            search_p_morphism(&Poset::chain(3), &fork(), true, &l).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_reported() {
        let l = Limits::default().with_search_nodes(0);
        let f2 = chequered(2, &l).unwrap();
        assert!(matches!(
            search_p_morphism(&f2, &frame_h(), true, &l),
            Err(Error::SearchBudget { .. })
        ));
    }
}
