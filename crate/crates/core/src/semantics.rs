//! Intuitionistic forcing on finite posets and validity by exhaustive search.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::{words_disjoint, BitSet};
use crate::formula::Formula;
use crate::poset::{Poset, UpSet};
use crate::upsets::{count_upsets, enumerate_upsets};
use crate::{Error, Limits, Result};

/// Assignment of upsets of one poset to variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    poset: usize,
    values: BTreeMap<String, UpSet>,
}

impl Valuation {
    pub fn new(p: &Poset) -> Valuation {
        Valuation {
            poset: p.id(),
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, name: &str, value: UpSet) -> Result<()> {
        if value.poset_id() != self.poset {
            return Err(Error::PosetMismatch);
        }
        self.values.insert(name.into(), value);
        Ok(())
    }

    pub fn with(mut self, name: &str, value: UpSet) -> Result<Valuation> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&UpSet> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &UpSet)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn belongs_to(&self, p: &Poset) -> bool {
        self.poset == p.id()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Var(usize),
    Bottom,
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
}

/// A formula flattened into a DAG of shared subformulas, children first.
#[derive(Clone, Debug)]
pub struct Compiled {
    nodes: Vec<Node>,
    vars: Vec<String>,
}

impl Compiled {
    pub fn new(f: &Formula) -> Compiled {
        let mut c = Compiled {
            nodes: Vec::new(),
            vars: f.variables(),
        };
        let mut seen = BTreeMap::new();
        c.add(f, &mut seen);
        c
    }

    fn add<'f>(&mut self, f: &'f Formula, seen: &mut BTreeMap<&'f Formula, usize>) -> usize {
        if let Some(&id) = seen.get(f) {
            return id;
        }
        let node = match f {
            Formula::Var(v) => Node::Var(self.vars.iter().position(|x| x == v).unwrap()),
            Formula::Bottom => Node::Bottom,
            Formula::And(a, b) => Node::And(self.add(a, seen), self.add(b, seen)),
            Formula::Or(a, b) => Node::Or(self.add(a, seen), self.add(b, seen)),
            Formula::Implies(a, b) => Node::Implies(self.add(a, seen), self.add(b, seen)),
        };
        self.nodes.push(node);
        seen.insert(f, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn subformula_count(&self) -> usize {
        self.nodes.len()
    }

    fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Truth sets of every node under `vars` (one upset per variable, in
    /// [`Compiled::variables`] order). The last entry is the whole formula.
    pub fn truth_sets(&self, p: &Poset, vars: &[&BitSet], out: &mut Vec<BitSet>) {
        let n = p.size();
        out.resize_with(self.nodes.len(), || BitSet::new(n));
        for (i, node) in self.nodes.iter().enumerate() {
            let (done, rest) = out.split_at_mut(i);
            let slot = &mut rest[0];
            match *node {
                Node::Var(v) => slot.clone_from(vars[v]),
                Node::Bottom => slot.clear(),
                Node::And(a, b) => {
                    slot.clone_from(&done[a]);
                    slot.intersect_with(&done[b]);
                }
                Node::Or(a, b) => {
                    slot.clone_from(&done[a]);
                    slot.union_with(&done[b]);
                }
                Node::Implies(a, b) => {
                    // x forces a -> b iff no y >= x is in a \ b.
                    let mut bad = done[a].clone();
                    bad.difference_with(&done[b]);
                    slot.clear();
                    for x in 0..n {
                        if words_disjoint(p.up_words(x), bad.words()) {
                            slot.insert(x);
                        }
                    }
                }
            }
        }
    }

    fn bind<'v>(&self, v: &'v Valuation) -> Result<Vec<&'v UpSet>> {
        self.vars
            .iter()
            .map(|name| {
                v.get(name)
                    .ok_or_else(|| Error::UnboundVariable(name.clone()))
            })
            .collect()
    }
}

/// Pointwise forcing with a (subformula, point) memo table.
struct PointEval<'a> {
    p: &'a Poset,
    c: &'a Compiled,
    vars: Vec<&'a UpSet>,
    memo: Vec<u8>,
}

impl PointEval<'_> {
    fn eval(&mut self, node: usize, x: usize) -> bool {
        let slot = node * self.p.size() + x;
        match self.memo[slot] {
            1 => return true,
            2 => return false,
            _ => {}
        }
        let value = match self.c.nodes[node] {
            Node::Var(v) => self.vars[v].contains(x),
            Node::Bottom => false,
            Node::And(a, b) => self.eval(a, x) && self.eval(b, x),
            Node::Or(a, b) => self.eval(a, x) || self.eval(b, x),
            Node::Implies(a, b) => {
                let ups: Vec<usize> = self.p.up_set(x).iter().collect();
                ups.into_iter().all(|y| !self.eval(a, y) || self.eval(b, y))
            }
        };
        self.memo[slot] = if value { 1 } else { 2 };
        value
    }
}

/// Does `x` force `f` under `v`?
pub fn forces(p: &Poset, v: &Valuation, x: usize, f: &Formula) -> Result<bool> {
    if !v.belongs_to(p) {
        return Err(Error::PosetMismatch);
    }
    p.check_point(x)?;
    let c = Compiled::new(f);
    let vars = c.bind(v)?;
    let mut eval = PointEval {
        p,
        c: &c,
        vars,
        memo: alloc::vec![0; c.nodes.len() * p.size()],
    };
    Ok(eval.eval(c.root(), x))
}

/// Single-instance re-check of a countermodel or a supplied valuation.
pub fn check_validity_at(p: &Poset, f: &Formula, v: &Valuation, x: usize) -> Result<bool> {
    forces(p, v, x, f)
}

/// Set of points forcing `f` under `v`.
pub fn truth_set(p: &Poset, v: &Valuation, f: &Formula) -> Result<BitSet> {
    if !v.belongs_to(p) {
        return Err(Error::PosetMismatch);
    }
    let c = Compiled::new(f);
    let vars = c.bind(v)?;
    let bits: Vec<&BitSet> = vars.iter().map(|u| u.bits()).collect();
    let mut sets = Vec::new();
    c.truth_sets(p, &bits, &mut sets);
    Ok(sets.pop().unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub valuation: Valuation,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidityResult {
    Valid,
    Countermodel(Countermodel),
}

impl ValidityResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidityResult::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            ValidityResult::Valid => None,
            ValidityResult::Countermodel(c) => Some(c),
        }
    }
}

/// The valuation space of a formula over a poset, indexed in canonical order:
/// index `i` is read as a mixed-radix number over the upset list, most
/// significant digit for the first variable.
pub struct ValuationSpace {
    poset: Poset,
    compiled: Compiled,
    upsets: Vec<UpSet>,
    size: u128,
}

impl ValuationSpace {
    pub fn new(p: &Poset, f: &Formula, limits: &Limits) -> Result<ValuationSpace> {
        let compiled = Compiled::new(f);
        let k = compiled.vars.len() as u32;
        let budget = limits.max_valuations;
        let upsets = if k == 0 {
            Vec::new()
        } else {
            let count = count_upsets(p, budget)?;
            let estimated = count.checked_pow(k).unwrap_or(u128::MAX);
            if estimated > budget {
                return Err(Error::SearchBudget { estimated, budget });
            }
            enumerate_upsets(p, budget)?
        };
        let size = (upsets.len() as u128).pow(k);
        Ok(ValuationSpace {
            poset: p.clone(),
            compiled,
            upsets,
            size,
        })
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn upset_count(&self) -> usize {
        self.upsets.len()
    }

    fn digits(&self, mut index: u128) -> Vec<usize> {
        let base = self.upsets.len() as u128;
        let mut d = alloc::vec![0; self.compiled.vars.len()];
        for slot in d.iter_mut().rev() {
            *slot = (index % base) as usize;
            index /= base;
        }
        d
    }

    pub fn valuation(&self, index: u128) -> Valuation {
        let mut v = Valuation::new(&self.poset);
        for (name, d) in self.compiled.vars.iter().zip(self.digits(index)) {
            v.set(name, self.upsets[d].clone()).expect("same poset");
        }
        v
    }

    /// Scans valuations `range` in order; returns the first failing one as
    /// `(index, point)`, the point being the first non-forcing point in the
    /// poset's linear extension (root first).
    pub fn first_failure(&self, range: core::ops::Range<u128>) -> Option<(u128, usize)> {
        let p = &self.poset;
        let k = self.compiled.vars.len();
        if range.start >= range.end || range.start >= self.size {
            return None;
        }
        let end = range.end.min(self.size);
        let base = self.upsets.len();
        let mut digits = self.digits(range.start);
        let mut sets = Vec::new();
        let mut index = range.start;
        loop {
            let bits: Vec<&BitSet> = digits.iter().map(|&d| self.upsets[d].bits()).collect();
            self.compiled.truth_sets(p, &bits, &mut sets);
            let truth = sets.last().unwrap();
            if !truth.is_full() {
                let x = p
                    .linear_extension()
                    .iter()
                    .copied()
                    .find(|&x| !truth.contains(x))
                    .unwrap();
                return Some((index, x));
            }
            index += 1;
            if index >= end {
                return None;
            }
            // odometer increment, last variable fastest
            let mut i = k;
            while i > 0 {
                i -= 1;
                digits[i] += 1;
                if digits[i] < base {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn countermodel(&self, index: u128, point: usize) -> Countermodel {
        Countermodel {
            valuation: self.valuation(index),
            point,
        }
    }
}

/// Frame validity: forced at every point under every valuation. Returns the
/// canonically first countermodel when there is one.
pub fn check_validity(p: &Poset, f: &Formula, limits: &Limits) -> Result<ValidityResult> {
    let space = ValuationSpace::new(p, f, limits)?;
    Ok(match space.first_failure(0..space.size()) {
        None => ValidityResult::Valid,
        Some((i, x)) => ValidityResult::Countermodel(space.countermodel(i, x)),
    })
}
