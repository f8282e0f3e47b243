//! Text rendering. Degrees are shown relative to `q`.

use std::fmt::Write;

use kdecomp_core::assembler::{
    DecompositionReport, DihedralReport, FoldCountingReport, KRegularVerdict, Provenance,
};
use kdecomp_core::FGAbelianGroup;

use crate::{FtComparison, HomologyDemo};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn relative_degree(d: i64, q: i64) -> String {
    match d - q {
        0 => "q".into(),
        o if o < 0 => format!("q{o}"),
        o => format!("q+{o}"),
    }
}

fn groups(gs: &[FGAbelianGroup]) -> String {
    let mut s = String::new();
    for (i, g) in gs.iter().enumerate() {
        let _ = writeln!(s, "  H_{i} = {g}");
    }
    s
}

pub fn decomposition(r: &DecompositionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", r.target);
    let _ = writeln!(s, "n: {}  q: {}  table: {}", r.n, r.q, r.table);
    match r.truncated_at {
        Some(h) => {
            let _ = writeln!(s, "exact: no (subgroups up to height {h})");
        }
        None => {
            let _ = writeln!(s, "exact: yes");
        }
    }
    let _ = writeln!(s, "conjectural: {}", yes_no(r.conjectural));
    let _ = writeln!(s, "summands: {}", r.summands.len());
    let _ = writeln!(s, "multiplicities:");
    for (sym, m) in r.multiplicities() {
        let _ = writeln!(s, "  {:<12} {m}", sym.relative(r.q));
    }
    let _ = writeln!(s, "provenance:");
    for x in &r.summands {
        let sym = x.symbol.relative(r.q);
        let value = x.resolved.as_ref().map(|g| format!(" = {g}")).unwrap_or_default();
        let word = match x.provenance.word() {
            w if w.is_empty() => "1".to_string(),
            w => w.to_string(),
        };
        match &x.provenance {
            Provenance::K { .. } => {
                let _ = writeln!(s, "  {sym:<12} {word}{value}");
            }
            Provenance::Nil {
                subgroup, basis, ..
            } => {
                let _ = writeln!(
                    s,
                    "  {sym:<12} {word:<8} C={subgroup} basis={}{value}",
                    basis.matrix()
                );
            }
        }
    }
    s
}

pub fn kregular(v: &KRegularVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", v.statement);
    let _ = writeln!(s, "holds: {}", yes_no(v.holds));
    if !v.offending_degrees.is_empty() {
        let degs: Vec<String> = v.offending_degrees.iter().map(|&d| relative_degree(d, v.q)).collect();
        let _ = writeln!(s, "NK not known to vanish at: {}", degs.join(", "));
    }
    let _ = writeln!(s, "nil words (degree windows are heuristic):");
    for w in &v.trace {
        let needs: Vec<String> = w.needs.iter().map(|&d| relative_degree(d, v.q)).collect();
        let _ = writeln!(
            s,
            "  {:<10} {:<12} needs NK at {}: {}",
            w.word.to_string(),
            w.symbol.relative(v.q),
            needs.join(","),
            if w.killed { "killed" } else { "survives" }
        );
    }
    s
}

pub fn ft_comparison(c: &FtComparison) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}  q: {}  height: {}  table: {}", c.n, c.q, c.height, c.table);
    let _ = writeln!(s, "{:<12} {:>8} {:>8}", "symbol", "oracle", "closed");
    let mut symbols: Vec<_> = c.oracle.iter().chain(&c.closed).map(|(sym, _)| *sym).collect();
    symbols.sort();
    symbols.dedup();
    let find = |list: &[(kdecomp_core::GradedSymbol, u64)], sym| {
        list.iter().find(|(x, _)| *x == sym).map_or(0, |(_, m)| *m)
    };
    for sym in symbols {
        let _ = writeln!(
            s,
            "{:<12} {:>8} {:>8}",
            sym.relative(c.q),
            find(&c.oracle, sym),
            find(&c.closed, sym)
        );
    }
    for d in &c.diff {
        let _ = writeln!(
            s,
            "mismatch {}: oracle {} closed {}",
            d.symbol.relative(c.q),
            d.oracle,
            d.closed
        );
    }
    let _ = writeln!(s, "{}", if c.passed { "PASS" } else { "FAIL" });
    s
}

pub fn fold(r: &FoldCountingReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}  q: {}  height: {}", r.n, r.q, r.height);
    for f in &r.fibers {
        let members: Vec<String> = f.fiber.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "  {} <- {} [{}]",
            f.positive,
            members.join(" "),
            if f.ok { "ok" } else { "MISMATCH" }
        );
    }
    for c in &r.strays {
        let _ = writeln!(s, "  stray {c}");
    }
    let _ = writeln!(s, "{}", if r.passed { "PASS" } else { "FAIL" });
    s
}

pub fn dihedral(r: &DihedralReport) -> String {
    let mut s = String::new();
    for (i, l) in r.chain.iter().enumerate() {
        let _ = writeln!(s, "{}. {}", i + 1, l.lhs);
        let _ = writeln!(s, "   = {}", l.rhs);
        let _ = writeln!(s, "   ({})", l.reason);
    }
    if let Some(c) = &r.check {
        let _ = writeln!(s, "swap coefficients on G + G, G = {}:", c.stand_in);
        s.push_str(&groups(&c.homology));
        let _ = writeln!(s, "{}", if c.passed() { "PASS" } else { "FAIL" });
    }
    s
}

pub fn homology_demo(d: &HomologyDemo) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "torus T^{}:", d.torus_dim);
    s.push_str(&groups(&d.torus));
    let _ = writeln!(s, "Klein bottle (mapping torus of a reflection of the circle):");
    s.push_str(&groups(&d.klein_bottle));
    s
}
