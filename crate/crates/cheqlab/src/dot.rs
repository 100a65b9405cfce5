//! Graphviz export of Hasse diagrams: one edge per cover, drawn upward.

use std::fmt::Write;

use cheqlab_core::Poset;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn to_dot(name: &str, p: &Poset) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    for x in p.points() {
        writeln!(s, "  n{x} [label={}];", quote(p.label(x))).unwrap();
    }
    let top = p.points().map(|x| p.height(x)).max();
    for h in 0..=top.unwrap_or(0) {
        let level: Vec<String> = p
            .points()
            .filter(|&x| p.height(x) == h)
            .map(|x| format!("n{x};"))
            .collect();
        if !level.is_empty() {
            writeln!(s, "  {{ rank=same; {} }}", level.join(" ")).unwrap();
        }
    }
    for (a, b) in p.covers() {
        writeln!(s, "  n{a} -> n{b};").unwrap();
    }
    s.push_str("}\n");
    s
}
