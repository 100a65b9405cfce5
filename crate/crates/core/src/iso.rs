//! Order-isomorphism by backtracking with invariant pruning.

use alloc::vec::Vec;

use crate::poset::Poset;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Signature {
    height: usize,
    depth: usize,
    up: usize,
    down: usize,
    upper_covers: usize,
    lower_covers: usize,
}

fn signature(p: &Poset, x: usize) -> Signature {
    Signature {
        height: p.height(x),
        depth: p.depth(x),
        up: p.up_set(x).count(),
        down: p.down_set(x).count(),
        upper_covers: p.upper_covers(x).len(),
        lower_covers: p.lower_covers(x).len(),
    }
}

/// Cheap invariant used to bucket posets before running a full isomorphism
/// search: (size, height, number of atoms or minimal points).
pub fn coarse_signature(p: &Poset) -> (usize, usize, usize) {
    let height = p.points().map(|x| p.height(x)).max().unwrap_or(0);
    let atoms = match p.atoms() {
        Ok(a) => a.len(),
        Err(_) => p.minimal().len(),
    };
    (p.size(), height, atoms)
}

/// Returns `f` with `x <= y` iff `f[x] <= f[y]`, if such a bijection exists.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.size() != q.size() {
        return None;
    }
    let sp: Vec<Signature> = p.points().map(|x| signature(p, x)).collect();
    let sq: Vec<Signature> = q.points().map(|x| signature(q, x)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }

    let mut state = Search {
        p,
        q,
        sp: &sp,
        sq: &sq,
        order: p.linear_extension().to_vec(),
        map: alloc::vec![usize::MAX; p.size()],
        used: alloc::vec![false; q.size()],
    };
    if state.extend(0) {
        Some(state.map)
    } else {
        None
    }
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    sp: &'a [Signature],
    sq: &'a [Signature],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let s = self.order[k];
        for t in 0..self.q.size() {
            if self.used[t] || self.sp[s] != self.sq[t] || !self.consistent(k, s, t) {
                continue;
            }
            self.map[s] = t;
            self.used[t] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[t] = false;
            self.map[s] = usize::MAX;
        }
        false
    }

    fn consistent(&self, k: usize, s: usize, t: usize) -> bool {
        let (p, q) = (self.p, self.q);
        self.order[..k].iter().all(|&s2| {
            let t2 = self.map[s2];
            p.leq(s2, s) == q.leq(t2, t)
                && p.leq(s, s2) == q.leq(t, t2)
                && p.common_up(s, s2) == q.common_up(t, t2)
                && p.common_down(s, s2) == q.common_down(t, t2)
        })
    }
}

/// Checks that `map` is an order isomorphism from `p` onto `q`.
pub fn is_order_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if map.len() != p.size() || p.size() != q.size() {
        return false;
    }
    let mut hit = alloc::vec![false; q.size()];
    for &t in map {
        if t >= q.size() || core::mem::replace(&mut hit[t], true) {
            return false;
        }
    }
    p.points()
        .all(|x| p.points().all(|y| p.leq(x, y) == q.leq(map[x], map[y])))
}

/// Inverse of a bijection given as an image vector.
pub fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}
