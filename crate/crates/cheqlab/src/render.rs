//! Human-readable descriptions of witnesses, using point labels.

use cheqlab_core::morphism::DisjointEmbedding;
use cheqlab_core::semantics::Countermodel;
use cheqlab_core::{PointMap, Poset, UpSet, Violation};

pub fn label_set(p: &Poset, u: &UpSet) -> String {
    let labels: Vec<&str> = u.members().map(|x| p.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

pub fn countermodel(p: &Poset, cm: &Countermodel) -> String {
    let vals: Vec<String> = cm
        .valuation
        .iter()
        .map(|(name, u)| format!("{name} = {}", label_set(p, u)))
        .collect();
    format!("fails at {} under {}", p.label(cm.point), vals.join("; "))
}

pub fn violation(m: &PointMap, v: &Violation) -> String {
    let (s, t) = (m.source(), m.target());
    match *v {
        Violation::Forth { x, y } => format!(
            "forth: {} <= {} but {} is not below {}",
            s.label(x),
            s.label(y),
            t.label(m.image(x)),
            t.label(m.image(y))
        ),
        Violation::Back { x, target } => format!(
            "back: {} is above the image of {} but no successor of {} maps to it",
            t.label(target),
            s.label(x),
            s.label(x)
        ),
        Violation::NotOnto { target } => format!("not onto: nothing maps to {}", t.label(target)),
    }
}

pub fn map_pairs(m: &PointMap) -> String {
    let (s, t) = (m.source(), m.target());
    let pairs: Vec<String> = m
        .pairs()
        .map(|(a, b)| format!("{} -> {}", s.label(a), t.label(b)))
        .collect();
    pairs.join(", ")
}

pub fn embedding(big: &Poset, w: &DisjointEmbedding) -> String {
    format!(
        "roots {} and {} ({} + {} points)",
        big.label(w.u),
        big.label(w.v),
        w.iso_a.len(),
        w.iso_b.len()
    )
}
