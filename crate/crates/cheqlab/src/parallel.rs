//! Multi-threaded drivers with the same results as the sequential ones.
//!
//! Work is split into pieces that are searched concurrently, and the first
//! piece in canonical order that decides the question wins, so the answer
//! never depends on scheduling.

use cheqlab_core::morphism::{MorphismSearch, SearchOutcome};
use cheqlab_core::semantics::ValuationSpace;
use cheqlab_core::{Formula, Limits, PointMap, Poset, Result, ValidityResult};
use rayon::prelude::*;

const MIN_CHUNK: u128 = 4096;

pub fn check_validity(p: &Poset, f: &Formula, limits: &Limits) -> Result<ValidityResult> {
    let space = ValuationSpace::new(p, f, limits)?;
    let size = space.size();
    let pieces = (rayon::current_num_threads() as u128 * 8).max(1);
    let chunk = size.div_ceil(pieces).max(MIN_CHUNK);
    let chunks = size.div_ceil(chunk) as u64;
    let first = (0..chunks).into_par_iter().find_map_first(|c| {
        let start = c as u128 * chunk;
        space.first_failure(start..(start + chunk).min(size))
    });
    Ok(match first {
        None => ValidityResult::Valid,
        Some((i, x)) => ValidityResult::Countermodel(space.countermodel(i, x)),
    })
}

pub fn search_p_morphism(
    source: &Poset,
    target: &Poset,
    onto: bool,
    limits: &Limits,
) -> Result<Option<PointMap>> {
    let search = MorphismSearch::new(source, target, onto, limits);
    let branches = search.branches()?;
    let decided = branches
        .par_iter()
        .map(|b| search.run_branch(b))
        .find_map_first(|r| match r {
            Ok(SearchOutcome::None) => None,
            other => Some(other),
        });
    match decided {
        None => Ok(None),
        Some(r) => Ok(r?.into_option()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cheqlab_core::frames::{chequered, fork, frame_h, medvedev};
    use cheqlab_core::{axiom, parse};

    #[test]
    fn validity_matches_sequential() {
        let l = Limits::default();
        let f2 = chequered(2, &l).unwrap();
        for text in ["kp", "sa", "wem", "p | ~p", "(p -> q) | (q -> p)"] {
            let f = parse(text).unwrap();
            let a = check_validity(&f2, &f, &l).unwrap();
            let b = cheqlab_core::check_validity(&f2, &f, &l).unwrap();
            assert_eq!(a.is_valid(), b.is_valid(), "{text}");
            if let (Some(x), Some(y)) = (a.countermodel(), b.countermodel()) {
                assert_eq!(x.point, y.point);
                let sets = |v: &cheqlab_core::Valuation| {
                    v.iter()
                        .map(|(k, u)| (k.to_string(), u.members().collect::<Vec<_>>()))
                        .collect::<Vec<_>>()
                };
                assert_eq!(sets(&x.valuation), sets(&y.valuation));
            }
        }
        assert!(check_validity(&fork(), &axiom("sa").unwrap(), &l)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn search_matches_sequential() {
        let l = Limits::default();
        let f2 = chequered(2, &l).unwrap();
        let h = frame_h();
        assert_eq!(
            search_p_morphism(&f2, &h, true, &l).unwrap(),
            cheqlab_core::search_p_morphism(&f2, &h, true, &l).unwrap()
        );
        let m4 = medvedev(4, &l).unwrap();
        assert_eq!(search_p_morphism(&m4, &h, true, &l).unwrap(), None);
    }
}
