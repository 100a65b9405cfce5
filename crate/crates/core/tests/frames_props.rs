use cheqlab_core::frames::{
    chequered, common_successor_fact, coord_label, fork, frame_h, medvedev, self_resemblance_check,
    subset_label, Family,
};
use cheqlab_core::iso::{invert, is_isomorphic, is_order_isomorphism};
use cheqlab_core::lattice::predecessors_form_lattice;
use cheqlab_core::morphism::{canonical_images, canonical_reduction};
use cheqlab_core::{Limits, Poset};

fn limits() -> Limits {
    Limits::default()
}

fn assert_valid_poset(p: &Poset) {
    assert_eq!(p.order_axioms_hold(), Ok(()));
    // covers by definition
    let mut covers = Vec::new();
    for x in p.points() {
        for y in p.points() {
            if p.lt(x, y) && !p.points().any(|z| p.lt(x, z) && p.lt(z, y)) {
                covers.push((x, y));
            }
        }
    }
    assert_eq!(p.covers(), covers);
    let mut labels = p.labels().to_vec();
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), p.size());
}

#[test]
fn family_sizes_and_atoms() {
    for n in 1..=7 {
        let c = chequered(n, &limits()).unwrap();
        assert_eq!(c.size(), 3usize.pow(n as u32));
        let atoms = c.atoms().unwrap();
        assert_eq!(atoms.len(), 2 * n);
        for a in atoms {
            assert!(coord_label(&c, a).unwrap().is_atom());
        }
        let m = medvedev(n, &limits()).unwrap();
        assert_eq!(m.size(), (1 << (n + 1)) - 1);
        let atoms = m.atoms().unwrap();
        assert_eq!(atoms.len(), n + 1);
        for a in atoms {
            assert_eq!(subset_label(&m, n, a).unwrap().elems().len(), 1);
        }
    }
}

#[test]
fn constructed_frames_are_posets() {
    for n in 1..=3 {
        assert_valid_poset(&chequered(n, &limits()).unwrap());
        assert_valid_poset(&medvedev(n, &limits()).unwrap());
    }
    let h = frame_h();
    assert_valid_poset(&h);
    assert_eq!(
        (h.size(), h.atoms().unwrap().len(), h.maximal().len()),
        (7, 4, 2)
    );
}

#[test]
fn chequered_order_is_coordinatewise() {
    for n in 1..=4 {
        let p = chequered(n, &limits()).unwrap();
        for x in p.points() {
            let lx = coord_label(&p, x).unwrap();
            for y in p.points() {
                assert_eq!(p.leq(x, y), lx.leq(&coord_label(&p, y).unwrap()));
            }
        }
    }
}

#[test]
fn chequered_is_a_product_with_the_fork() {
    for n in 2..=4 {
        let prev = chequered(n - 1, &limits()).unwrap();
        let prod = prev.product(&fork(), &limits()).unwrap();
        let direct = chequered(n, &limits()).unwrap();
        let m = is_isomorphic(&direct, &prod).unwrap();
        assert!(is_order_isomorphism(&direct, &prod, &m));
        assert!(is_order_isomorphism(&prod, &direct, &invert(&m)));
    }
    let f2 = fork().product(&fork(), &limits()).unwrap();
    assert_eq!(f2.size(), 9);
    let f3 = f2.product(&fork(), &limits()).unwrap();
    assert_eq!(f3.size(), 27);
}

#[test]
fn generated_subframes_are_reachability() {
    let p = chequered(3, &limits()).unwrap();
    for seeds in [vec![0], vec![1, 5], vec![13], vec![26]] {
        let sub = p.generated_subframe(&seeds).unwrap();
        assert_valid_poset(&sub.poset);
        for x in p.points() {
            let reachable = seeds.iter().any(|&s| p.leq(s, x));
            assert_eq!(sub.contains_parent(x), reachable);
        }
        for (i, &x) in sub.to_parent.iter().enumerate() {
            for (j, &y) in sub.to_parent.iter().enumerate() {
                assert_eq!(sub.poset.leq(i, j), p.leq(x, y));
            }
        }
    }
    let sub = p.generated_subframe(&[p.index_of("-00").unwrap()]).unwrap();
    assert!(is_isomorphic(&sub.poset, &chequered(2, &limits()).unwrap()).is_some());
    let f2 = chequered(2, &limits()).unwrap();
    let s = f2
        .generated_subframe(&[f2.index_of("-0").unwrap()])
        .unwrap();
    let labels: Vec<&str> = s.to_parent.iter().map(|&x| f2.label(x)).collect();
    assert_eq!(labels, vec!["-0", "--", "-+"]);
    assert!(is_isomorphic(&s.poset, &fork()).is_some());
}

#[test]
fn predecessor_lattices() {
    for n in 1..=4 {
        assert_eq!(
            predecessors_form_lattice(&chequered(n, &limits()).unwrap()),
            Ok(())
        );
    }
    for n in 1..=4 {
        assert_eq!(
            predecessors_form_lattice(&medvedev(n, &limits()).unwrap()),
            Ok(())
        );
    }
    assert!(predecessors_form_lattice(&frame_h()).is_ok());
}

#[test]
fn self_resemblance_ranges() {
    for n in 1..=4 {
        let r = self_resemblance_check(Family::Chequered, n, &limits()).unwrap();
        assert!(r.holds, "F_{n}");
    }
    for n in 1..=5 {
        let r = self_resemblance_check(Family::Medvedev, n, &limits()).unwrap();
        assert!(r.holds, "M_{n}");
        // up(X) in M_n is M_{n - |X|}
        let m = medvedev(n, &limits()).unwrap();
        for x in m.points() {
            let size = subset_label(&m, n, x).unwrap().elems().len();
            assert_eq!(r.ks[x], Some(n - size));
        }
    }
}

#[test]
fn common_successor_from_two_up() {
    for n in 2..=5 {
        let r = common_successor_fact(n, &limits()).unwrap();
        assert!(r.holds, "n = {n}");
        assert_eq!(r.rows.len(), 2 * n * (2 * n + 1) / 2);
    }
}

#[test]
fn canonical_reductions_are_onto_p_morphisms() {
    for m in 1..=2 {
        let f = canonical_reduction(m, &limits()).unwrap();
        let report = f.check(true);
        assert!(report.ok(), "m = {m}: {:?}", report.violations);
    }
    let (_, images) = canonical_images(2, &limits()).unwrap();
    assert!(images.iter().all(|s| s.is_proper()));
}

#[test]
fn canonical_reduction_restricts_to_atom_subframes() {
    let f = canonical_reduction(2, &limits()).unwrap();
    let src = f.source().clone();
    for a in src.atoms().unwrap() {
        let sub = src.generated_subframe(&[a]).unwrap();
        let r = f.restrict(&sub);
        assert!(r.check(false).ok(), "atom {}", src.label(a));
    }
}

#[test]
fn corrupting_one_atom_image_is_caught() {
    let f = canonical_reduction(2, &limits()).unwrap();
    let src = f.source().clone();
    let a = src.index_of("-00").unwrap();
    let b = src.index_of("0-0").unwrap();
    let (ia, ib) = (f.image(a), f.image(b));
    let broken = f.with_image(a, ib).unwrap().with_image(b, ia).unwrap();
    let report = broken.check(true);
    assert!(!report.ok());
}
