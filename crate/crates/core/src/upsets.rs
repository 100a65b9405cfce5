//! Enumeration of upward-closed sets.
//!
//! Points are decided in the reverse of the poset's linear extension, so every
//! strict successor of a point is decided before the point itself. A point may
//! join the set only when its whole strict up-set already has, which means no
//! partial assignment is ever a dead end. Within that scheme "leave out" is
//! tried before "put in", so the output is lexicographic on the bit-vector
//! read in processing order; when point indices already form a linear
//! extension this is plain ascending order of the bitmask value.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::bits::{words_subset, BitSet};
use crate::poset::{Poset, UpSet};
use crate::{Error, Result};

/// Calls `visit` on every upset in canonical order until it breaks.
pub fn for_each_upset<F>(p: &Poset, mut visit: F)
where
    F: FnMut(&BitSet) -> ControlFlow<()>,
{
    let order: Vec<usize> = p.linear_extension().iter().rev().copied().collect();
    let n = order.len();
    let mut set = BitSet::new(n);
    let mut included = alloc::vec![false; n];
    let mut k = 0;
    loop {
        if k < n {
            included[k] = false;
            k += 1;
            continue;
        }
        if visit(&set).is_break() {
            return;
        }
        // Backtrack to the deepest point that can still flip to "in".
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            let x = order[k];
            if included[k] {
                set.remove(x);
                continue;
            }
            set.insert(x);
            if words_subset(p.up_words(x), set.words()) {
                included[k] = true;
                k += 1;
                break;
            }
            set.remove(x);
        }
    }
}

/// Number of upsets, or `SearchBudget` once more than `limit` are seen.
pub fn count_upsets(p: &Poset, limit: u128) -> Result<u128> {
    let mut count: u128 = 0;
    for_each_upset(p, |_| {
        count += 1;
        if count > limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if count > limit {
        Err(Error::SearchBudget {
            estimated: count,
            budget: limit,
        })
    } else {
        Ok(count)
    }
}

/// Every upset of `p` exactly once, in canonical order.
pub fn enumerate_upsets(p: &Poset, limit: u128) -> Result<Vec<UpSet>> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_upset(p, |s| {
        if out.len() as u128 >= limit {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(UpSet::from_bits_unchecked(p, s.clone()));
        ControlFlow::Continue(())
    });
    if over {
        Err(Error::SearchBudget {
            estimated: limit + 1,
            budget: limit,
        })
    } else {
        Ok(out)
    }
}
