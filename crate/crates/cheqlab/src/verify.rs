//! The built-in verification suite: a fixed list of checks over the frame
//! families, each reporting pass, fail (with a re-checkable witness) or
//! skipped when its work budget runs out.

use std::fmt::Write;
use std::time::Instant;

use cheqlab_core::frames::{
    chequered, common_successor_fact, frame_h, medvedev, self_resemblance_check, Family,
};
use cheqlab_core::lattice::predecessors_form_lattice;
use cheqlab_core::morphism::{
    canonical_images, canonical_reduction, embeds_disjoint_union, reducible,
    verify_disjoint_embedding,
};
use cheqlab_core::{axiom, check_validity_at, Error, Limits, Poset, UpSet, Valuation, Violation};
use rayon::prelude::*;
use serde::Serialize;

use crate::{parallel, render};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped(budget)")]
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped(budget)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub theorem_ref: String,
    pub status: Status,
    pub witness_or_counterexample: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub profile: String,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let id_w = self
            .checks
            .iter()
            .map(|c| c.check_id.len())
            .max()
            .unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            writeln!(
                s,
                "{:<id_w$}  {:<15}  {:>9.1} ms  {}",
                c.check_id,
                c.status.as_str(),
                c.elapsed_ms,
                c.theorem_ref
            )
            .unwrap();
            writeln!(s, "{:id_w$}  {}", "", c.witness_or_counterexample).unwrap();
        }
        writeln!(
            s,
            "{} profile: {} passed, {} failed, {} skipped",
            self.profile,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )
        .unwrap();
        s
    }
}

/// What a check found: whether the claim held, and the evidence either way.
pub struct Outcome {
    pub holds: bool,
    pub witness: String,
}

impl Outcome {
    fn pass(witness: impl Into<String>) -> cheqlab_core::Result<Outcome> {
        Ok(Outcome {
            holds: true,
            witness: witness.into(),
        })
    }

    fn fail(witness: impl Into<String>) -> cheqlab_core::Result<Outcome> {
        Ok(Outcome {
            holds: false,
            witness: witness.into(),
        })
    }
}

type Runner = Box<dyn Fn(&Limits) -> cheqlab_core::Result<Outcome> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub claim: String,
    run: Runner,
}

impl Check {
    fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        run: impl Fn(&Limits) -> cheqlab_core::Result<Outcome> + Send + Sync + 'static,
    ) -> Check {
        Check {
            id: id.into(),
            claim: claim.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self, limits: &Limits) -> CheckRecord {
        let start = Instant::now();
        let result = (self.run)(limits);
        let elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        let (status, witness) = match result {
            Ok(o) if o.holds => (Status::Pass, o.witness),
            Ok(o) => (Status::Fail, o.witness),
            Err(e @ (Error::SearchBudget { .. } | Error::SizeGuard { .. })) => {
                (Status::Skipped, e.to_string())
            }
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        CheckRecord {
            check_id: self.id.clone(),
            theorem_ref: self.claim.clone(),
            status,
            witness_or_counterexample: witness,
            elapsed_ms,
        }
    }
}

/// Runs the profile's checks, concurrently unless `sequential`. Records
/// come back in list order either way.
pub fn run(profile: Profile, limits: &Limits, sequential: bool) -> VerificationReport {
    let list = checks(profile);
    let records = if sequential {
        list.iter().map(|c| c.run(limits)).collect()
    } else {
        list.par_iter().map(|c| c.run(limits)).collect()
    };
    VerificationReport {
        profile: profile.name().to_string(),
        checks: records,
    }
}

fn f(n: usize, l: &Limits) -> cheqlab_core::Result<Poset> {
    chequered(n, l)
}

pub fn checks(profile: Profile) -> Vec<Check> {
    let full = profile == Profile::Full;
    let mut v = vec![Check::new(
        "frame-sizes",
        "|F_n| = 3^n and |M_n| = 2^(n+1) - 1",
        |l| {
            for n in 1..=7 {
                let (c, m) = (chequered(n, l)?.size(), medvedev(n, l)?.size());
                if c != 3usize.pow(n as u32) || m != (1 << (n + 1)) - 1 {
                    return Outcome::fail(format!("n = {n}: |F_n| = {c}, |M_n| = {m}"));
                }
            }
            Outcome::pass("exact for n = 1..=7")
        },
    )];

    for (a, b) in [(1, 1), (1, 2), (2, 2)] {
        v.push(Check::new(
            format!("disjoint-union-f{a}-f{b}-in-f{}", a + b),
            "F_n + F_m is a generated subframe of F_(n+m)",
            move |l| {
                let big = f(a + b, l)?;
                let (pa, pb) = (f(a, l)?, f(b, l)?);
                match embeds_disjoint_union(&big, &pa, &pb)? {
                    Some(w) if verify_disjoint_embedding(&big, &pa, &pb, &w) => {
                        Outcome::pass(render::embedding(&big, &w))
                    }
                    Some(w) => Outcome::fail(format!("witness does not re-check: {w:?}")),
                    None => Outcome::fail("no two points with disjoint copies"),
                }
            },
        ));
    }

    for n in 1..=3 {
        v.push(Check::new(
            format!("scott-valid-f{n}"),
            "chequered frames validate the Scott axiom",
            move |l| validity(&f(n, l)?, "sa", l),
        ));
    }

    v.push(Check::new(
        "common-successor-n2-to-n5",
        "for any two atoms of F_n (n >= 2), some atom shares a maximal successor with each",
        |l| {
            for n in 2..=5 {
                let r = common_successor_fact(n, l)?;
                if let Some(row) = r.rows.iter().find(|row| row.v.is_none()) {
                    let p = f(n, l)?;
                    return Outcome::fail(format!(
                        "n = {n}: atoms {} and {} have no witness",
                        p.label(row.u),
                        p.label(row.u2)
                    ));
                }
            }
            Outcome::pass("holds for n = 2..=5")
        },
    ));

    v.push(Check::new(
        "kp-countermodel-f2",
        "the Kreisel-Putnam axiom fails on F_2",
        |l| refutation(&f(2, l)?, "kp", l),
    ));
    v.push(Check::new(
        "kp-fails-under-explicit-valuation",
        "kp fails at the root of F_2 under p = {-+, +-}, q = {--}, r = {++}",
        |l| {
            let f2 = f(2, l)?;
            let up = |labels: &[&str]| {
                let pts: Vec<usize> = labels.iter().filter_map(|s| f2.index_of(s)).collect();
                UpSet::from_points(&f2, &pts)
            };
            let val = Valuation::new(&f2)
                .with("p", up(&["-+", "+-"])?)?
                .with("q", up(&["--"])?)?
                .with("r", up(&["++"])?)?;
            let root = f2.root_of().ok_or(Error::NotRooted)?;
            if check_validity_at(&f2, &axiom("kp")?, &val, root)? {
                Outcome::fail("kp is forced at the root")
            } else {
                Outcome::pass(format!("not forced at {}", f2.label(root)))
            }
        },
    ));

    let dims: &[u32] = if full { &[1, 2, 3] } else { &[1, 2] };
    for &m in dims {
        let n = (1usize << m) - 1;
        v.push(Check::new(
            format!("reduction-f{n}-onto-m{n}"),
            "the canonical map from F_n onto M_n (n = 2^m - 1) is an onto p-morphism",
            move |l| {
                let map = canonical_reduction(m, l)?;
                let report = map.check(true);
                match report.violations.first() {
                    None => Outcome::pass(format!(
                        "{} points onto {} points",
                        map.source().size(),
                        map.target().size()
                    )),
                    Some(viol) => Outcome::fail(render::violation(&map, viol)),
                }
            },
        ));
    }
    let top = *dims.last().unwrap();
    v.push(Check::new(
        format!("reduction-images-proper-to-f{}", (1usize << top) - 1),
        "no point is sent to the full set",
        move |l| {
            for m in 1..=top {
                let (src, images) = canonical_images(m, l)?;
                if let Some(x) = images.iter().position(|s| !s.is_proper()) {
                    return Outcome::fail(format!("{} maps to {}", src.label(x), images[x]));
                }
            }
            Outcome::pass("every image is a proper subset")
        },
    ));
    v.push(Check::new(
        "reduction-mutation-detected",
        "swapping two atom images of the F_3 map breaks back or onto",
        |l| {
            let map = canonical_reduction(2, l)?;
            let src = map.source().clone();
            let (a, b) = match (src.index_of("-00"), src.index_of("0-0")) {
                (Some(a), Some(b)) => (a, b),
                _ => return Outcome::fail("atoms -00 and 0-0 not found"),
            };
            let (ia, ib) = (map.image(a), map.image(b));
            let broken = map.with_image(a, ib)?.with_image(b, ia)?;
            let report = broken.check(true);
            match report
                .violations
                .iter()
                .find(|v| matches!(v, Violation::Back { .. } | Violation::NotOnto { .. }))
            {
                Some(viol) => Outcome::pass(render::violation(&broken, viol)),
                None => Outcome::fail("corrupted map passed the check"),
            }
        },
    ));
    v.push(Check::new(
        "predecessor-lattices-f1-to-f4",
        "the points below any point of F_n form a lattice",
        |l| {
            for n in 1..=4 {
                let p = f(n, l)?;
                if let Err(e) = predecessors_form_lattice(&p) {
                    return Outcome::fail(format!(
                        "F_{n}: below {}, {} and {} lack a {:?}",
                        p.label(e.point),
                        p.label(e.a),
                        p.label(e.b),
                        e.missing
                    ));
                }
            }
            Outcome::pass("holds for n = 1..=4")
        },
    ));
    for (family, n, id) in [
        (Family::Chequered, 4, "self-resemblance-f1-to-f4"),
        (Family::Medvedev, 5, "self-resemblance-m1-to-m5"),
    ] {
        v.push(Check::new(
            id,
            "every rooted generated subframe is an earlier member of the family",
            move |l| {
                for k in 1..=n {
                    let r = self_resemblance_check(family, k, l)?;
                    if let Some(x) = r.ks.iter().position(|k| k.is_none()) {
                        let p = family.member(k, l)?;
                        return Outcome::fail(format!("member {k}: up-set of {}", p.label(x)));
                    }
                }
                Outcome::pass(format!("holds for members 1..={n}"))
            },
        ));
    }

    let kmax = if full { 6 } else { 4 };
    v.push(Check::new(
        format!("no-m1-to-m{kmax}-reduces-to-f2"),
        "no rooted generated subframe of M_k maps onto F_2",
        move |l| {
            let f2 = f(2, l)?;
            for k in 1..=kmax {
                let m = medvedev(k, l)?;
                if let Some(r) = reducible(&m, &f2, l)? {
                    return Outcome::fail(format!(
                        "M_{k}: from {}: {}",
                        m.label(r.seed),
                        render::map_pairs(&r.map)
                    ));
                }
            }
            Outcome::pass(format!("definitive for k = 1..={kmax}"))
        },
    ));
    v.push(Check::new(
        "wem-fails-on-fork",
        "weak excluded middle fails on the fork",
        |l| refutation(&cheqlab_core::fork(), "wem", l),
    ));

    v.push(Check::new(
        "f2-onto-h",
        "H is a p-morphic image of F_2",
        |l| {
            let (f2, h) = (f(2, l)?, frame_h());
            match parallel::search_p_morphism(&f2, &h, true, l)? {
                Some(m) if m.check(true).ok() => Outcome::pass(render::map_pairs(&m)),
                Some(m) => {
                    Outcome::fail(format!("map does not re-check: {}", render::map_pairs(&m)))
                }
                None => Outcome::fail("no onto p-morphism found"),
            }
        },
    ));
    v.push(Check::new(
        "kp-valid-on-h",
        "H validates the Kreisel-Putnam axiom",
        |l| validity(&frame_h(), "kp", l),
    ));
    let nmax = if full { 7 } else { 4 };
    for n in 2..=nmax {
        v.push(Check::new(
            format!("m{n}-not-onto-h"),
            "H is not a p-morphic image of M_n",
            move |l| {
                let m = medvedev(n, l)?;
                match parallel::search_p_morphism(&m, &frame_h(), true, l)? {
                    None => Outcome::pass("exhaustive search found no map"),
                    Some(map) => Outcome::fail(render::map_pairs(&map)),
                }
            },
        ));
    }
    v
}

fn validity(p: &Poset, name: &str, l: &Limits) -> cheqlab_core::Result<Outcome> {
    let formula = axiom(name)?;
    match parallel::check_validity(p, &formula, l)?.countermodel() {
        None => Outcome::pass(format!("valid on all {} points", p.size())),
        Some(cm) => Outcome::fail(render::countermodel(p, cm)),
    }
}

fn refutation(p: &Poset, name: &str, l: &Limits) -> cheqlab_core::Result<Outcome> {
    let formula = axiom(name)?;
    match parallel::check_validity(p, &formula, l)?.countermodel() {
        Some(cm) if !check_validity_at(p, &formula, &cm.valuation, cm.point)? => {
            Outcome::pass(render::countermodel(p, cm))
        }
        Some(cm) => Outcome::fail(format!(
            "countermodel does not re-check: {}",
            render::countermodel(p, cm)
        )),
        None => Outcome::fail("valid"),
    }
}
