use alloc::vec::Vec;

use crate::bits::{words_subset, BitSet};
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Missing {
    Join,
    Meet,
}

/// A down-set that is not a lattice: `a` and `b` lie below `point` but have
/// no least upper bound (or greatest lower bound) inside its down-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeFailure {
    pub point: usize,
    pub a: usize,
    pub b: usize,
    pub missing: Missing,
}

/// Checks that the down-set of every point is a lattice.
pub fn predecessors_form_lattice(p: &Poset) -> Result<(), LatticeFailure> {
    for x in p.points() {
        let down: Vec<usize> = p.down_set(x).iter().collect();
        let down_bits = p.down_set(x);
        for (i, &a) in down.iter().enumerate() {
            for &b in &down[i + 1..] {
                if join_within(p, &down_bits, a, b).is_none() {
                    return Err(LatticeFailure {
                        point: x,
                        a,
                        b,
                        missing: Missing::Join,
                    });
                }
                if meet_within(p, &down_bits, a, b).is_none() {
                    return Err(LatticeFailure {
                        point: x,
                        a,
                        b,
                        missing: Missing::Meet,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Least element of the common upper bounds of `a` and `b` within `within`.
pub fn join_within(p: &Poset, within: &BitSet, a: usize, b: usize) -> Option<usize> {
    let mut ub = within.clone();
    ub.intersect_with(&p.up_set(a));
    ub.intersect_with(&p.up_set(b));
    ub.iter().find(|&c| words_subset(ub.words(), p.up_words(c)))
}

/// Greatest element of the common lower bounds of `a` and `b` within `within`.
pub fn meet_within(p: &Poset, within: &BitSet, a: usize, b: usize) -> Option<usize> {
    let mut lb = within.clone();
    lb.intersect_with(&p.down_set(a));
    lb.intersect_with(&p.down_set(b));
    lb.iter()
        .find(|&c| words_subset(lb.words(), p.down_words(c)))
}
