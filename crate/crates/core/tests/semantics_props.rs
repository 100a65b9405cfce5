use cheqlab_core::bits::BitSet;
use cheqlab_core::frames::{chequered, fork, frame_h};
use cheqlab_core::morphism::canonical_reduction;
use cheqlab_core::semantics::truth_set;
use cheqlab_core::upsets::enumerate_upsets;
use cheqlab_core::{
    axiom, check_validity, check_validity_at, forces, parse, search_p_morphism, Formula, Limits,
    Poset, UpSet, Valuation,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook recursive forcing, no memoization, no bit sets.
fn naive(p: &Poset, v: &dyn Fn(&str, usize) -> bool, x: usize, f: &Formula) -> bool {
    match f {
        Formula::Var(name) => v(name, x),
        Formula::Bottom => false,
        Formula::And(a, b) => naive(p, v, x, a) && naive(p, v, x, b),
        Formula::Or(a, b) => naive(p, v, x, a) || naive(p, v, x, b),
        Formula::Implies(a, b) => p
            .points()
            .filter(|&y| p.leq(x, y))
            .all(|y| !naive(p, v, y, a) || naive(p, v, y, b)),
    }
}

fn formula_strategy(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(vars).prop_map(Formula::var),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.prop_map(Formula::not),
        ]
    })
}

fn frames() -> Vec<Poset> {
    vec![fork(), chequered(2, &Limits::default()).unwrap(), frame_h()]
}

fn valuation_from_seeds(p: &Poset, seeds: &[Vec<usize>]) -> Valuation {
    let mut v = Valuation::new(p);
    for (name, s) in ["p", "q", "r"].iter().zip(seeds) {
        let pts: Vec<usize> = s.iter().map(|i| i % p.size()).collect();
        v.set(name, UpSet::closure(p, &pts).unwrap()).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(f in formula_strategy(&["p", "q", "r", "s1", "long_name"], 8)) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forcing_is_persistent(
        f in formula_strategy(&["p", "q", "r"], 5),
        which in 0usize..3,
        seeds in proptest::collection::vec(proptest::collection::vec(0usize..16, 0..3), 3),
    ) {
        let p = &frames()[which];
        let v = valuation_from_seeds(p, &seeds);
        let truth = truth_set(p, &v, &f).unwrap();
        for x in p.points() {
            for y in p.points() {
                if p.leq(x, y) && truth.contains(x) {
                    prop_assert!(truth.contains(y));
                }
            }
        }
    }

    #[test]
    fn memoized_forcing_agrees_with_naive(
        f in formula_strategy(&["p", "q", "r"], 5),
        which in 0usize..3,
        seeds in proptest::collection::vec(proptest::collection::vec(0usize..16, 0..3), 3),
    ) {
        let p = &frames()[which];
        let v = valuation_from_seeds(p, &seeds);
        let lookup = |name: &str, x: usize| v.get(name).unwrap().contains(x);
        let truth = truth_set(p, &v, &f).unwrap();
        for x in p.points() {
            let expected = naive(p, &lookup, x, &f);
            prop_assert_eq!(forces(p, &v, x, &f).unwrap(), expected);
            prop_assert_eq!(truth.contains(x), expected);
        }
    }

    #[test]
    fn negation_sugar_is_interchangeable(
        f in formula_strategy(&["p", "q"], 4),
        seeds in proptest::collection::vec(proptest::collection::vec(0usize..16, 0..3), 2),
    ) {
        let p = chequered(2, &Limits::default()).unwrap();
        let v = valuation_from_seeds(&p, &seeds);
        let a = truth_set(&p, &v, &Formula::not(f.clone())).unwrap();
        let b = truth_set(&p, &v, &Formula::implies(f, Formula::Bottom)).unwrap();
        prop_assert_eq!(a, b);
    }
}

fn random_upset(rng: &mut ChaCha8Rng, p: &Poset) -> UpSet {
    let pts: Vec<usize> = p.points().filter(|_| rng.gen_bool(0.3)).collect();
    UpSet::closure(p, &pts).unwrap()
}

#[test]
fn valid_results_survive_random_sampling() {
    let l = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f2 = chequered(2, &l).unwrap();
    let h = frame_h();
    for (p, f) in [(&f2, axiom("sa").unwrap()), (&h, axiom("kp").unwrap())] {
        assert!(check_validity(p, &f, &l).unwrap().is_valid());
        for _ in 0..10_000 {
            let mut v = Valuation::new(p);
            for name in f.variables() {
                v.set(&name, random_upset(&mut rng, p)).unwrap();
            }
            let root = p.root_of().unwrap();
            assert!(check_validity_at(p, &f, &v, root).unwrap());
        }
    }
}

#[test]
fn countermodels_recheck_false() {
    let l = Limits::default();
    let f2 = chequered(2, &l).unwrap();
    for text in ["kp", "wem", "p | ~p", "(p -> q) | (q -> p)", "~~p -> p"] {
        let f = parse(text).unwrap();
        let r = check_validity(&f2, &f, &l).unwrap();
        let cm = r
            .countermodel()
            .unwrap_or_else(|| panic!("{text} should fail on F_2"));
        assert!(!check_validity_at(&f2, &f, &cm.valuation, cm.point).unwrap());
        // persistence puts the failure at the root as well
        assert_eq!(cm.point, f2.root_of().unwrap());
    }
}

/// Pulling a valuation back along a p-morphism preserves forcing pointwise.
fn assert_pullback_preserves_forcing(m: &cheqlab_core::PointMap, formulas: &[Formula]) {
    let (p, q) = (m.source(), m.target());
    let ups = enumerate_upsets(q, 1 << 20).unwrap();
    for (i, u) in ups.iter().enumerate().step_by(ups.len() / 40 + 1) {
        let w = &ups[(i * 7 + 3) % ups.len()];
        let vq = Valuation::new(q)
            .with("p", u.clone())
            .unwrap()
            .with("q", w.clone())
            .unwrap();
        let pull = |s: &UpSet| {
            let bits =
                BitSet::from_indices(p.size(), p.points().filter(|&x| s.contains(m.image(x))));
            UpSet::from_bits(p, bits).unwrap()
        };
        let vp = Valuation::new(p)
            .with("p", pull(u))
            .unwrap()
            .with("q", pull(w))
            .unwrap();
        for f in formulas {
            let tq = truth_set(q, &vq, f).unwrap();
            let tp = truth_set(p, &vp, f).unwrap();
            for x in p.points() {
                assert_eq!(
                    tp.contains(x),
                    tq.contains(m.image(x)),
                    "{f} at {}",
                    p.label(x)
                );
            }
        }
    }
}

#[test]
fn validity_transfers_along_onto_morphisms() {
    let l = Limits::default();
    let f2 = chequered(2, &l).unwrap();
    let h = frame_h();
    let to_h = search_p_morphism(&f2, &h, true, &l).unwrap().unwrap();
    let f3 = canonical_reduction(2, &l).unwrap();

    let mut one_var: Vec<Formula> = vec![axiom("sa").unwrap(), axiom("wem").unwrap()];
    let mut two_var: Vec<Formula> =
        vec![parse("(~p -> q | ~q) -> (~p -> q) | (~p -> ~q)").unwrap()];
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..30 {
        let s1 = formula_strategy(&["p"], 4)
            .new_tree(&mut runner)
            .unwrap()
            .current();
        let s2 = formula_strategy(&["p", "q"], 4)
            .new_tree(&mut runner)
            .unwrap()
            .current();
        one_var.push(s1);
        two_var.push(s2);
    }

    assert_pullback_preserves_forcing(&to_h, &two_var);
    assert_pullback_preserves_forcing(&f3, &two_var);

    for f in two_var.iter().filter(|f| f.variables().len() <= 2) {
        if check_validity(&f2, f, &l).unwrap().is_valid() {
            assert!(check_validity(&h, f, &l).unwrap().is_valid(), "{f}");
        }
    }
    for f in one_var.iter().filter(|f| f.variables().len() <= 1) {
        if check_validity(f3.source(), f, &l).unwrap().is_valid() {
            assert!(
                check_validity(f3.target(), f, &l).unwrap().is_valid(),
                "{f}"
            );
        }
    }
}

#[test]
fn deterministic_countermodels_are_stable() {
    let l = Limits::default();
    let f2a = chequered(2, &l).unwrap();
    let f2b = chequered(2, &l).unwrap();
    let kp = axiom("kp").unwrap();
    let a = check_validity(&f2a, &kp, &l).unwrap();
    let b = check_validity(&f2b, &kp, &l).unwrap();
    let members = |r: &cheqlab_core::ValidityResult| {
        let cm = r.countermodel().unwrap();
        let vals: Vec<(String, Vec<usize>)> = cm
            .valuation
            .iter()
            .map(|(k, u)| (k.to_string(), u.members().collect()))
            .collect();
        (vals, cm.point)
    };
    assert_eq!(members(&a), members(&b));
}
