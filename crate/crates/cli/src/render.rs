//! Plain-text tables for the terminal.

use std::fmt::Write as _;

use multirees::{
    Certification, CompleteReductionCandidate, CorrespondenceReport, HilbertTable, MonomialIdeal,
    MultiIndex, NakayamaReport, SearchHit, SearchOptions, UpwardClosedSet,
};

use crate::Report;

pub fn ideal(i: &MonomialIdeal, names: &[String]) -> String {
    format!("({})", i.to_expr(names).replace(" + ", ", "))
}

pub fn ys(c: &CompleteReductionCandidate, names: &[String]) -> String {
    let parts: Vec<String> = c
        .ys()
        .iter()
        .map(|y| y.display_with(names).to_string())
        .collect();
    format!("({})", parts.join(", "))
}

fn matrix(c: &CompleteReductionCandidate, names: &[String]) -> String {
    let rows: Vec<String> = c
        .matrix()
        .iter()
        .map(|row| {
            let e: Vec<String> = row
                .iter()
                .map(|m| m.display_with(names).to_string())
                .collect();
            format!("[{}]", e.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn list(points: &[MultiIndex]) -> String {
    if points.is_empty() {
        return "none".into();
    }
    points
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn set(s: &UpwardClosedSet) -> String {
    let tag = match &s.certification {
        Certification::Certified(c) => format!("certified, stabilization bounds {}", c.bounds),
        Certification::Heuristic { margin } => format!("heuristic, margin {margin}"),
    };
    if s.is_empty() {
        format!("none  [{tag}]")
    } else {
        format!("minimal {}  [{tag}]", list(&s.minimal_elements))
    }
}

pub fn hilbert_table(t: &HilbertTable) -> String {
    let mut out = String::new();
    let g = &t.grid;
    match g.arity() {
        2 => {
            let width = t
                .values
                .iter()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1)
                .max(3);
            let _ = write!(out, "{:>5} |", "r\\s");
            for b in g.lo[1]..=g.hi[1] {
                let _ = write!(out, " {b:>width$}");
            }
            out.push('\n');
            let _ = writeln!(out, "{}", "-".repeat(7 + (width + 1) * g.side(1)));
            for a in g.lo[0]..=g.hi[0] {
                let _ = write!(out, "{a:>5} |");
                for b in g.lo[1]..=g.hi[1] {
                    let v = t.get(&MultiIndex::from([a, b])).expect("in box");
                    let _ = write!(out, " {v:>width$}");
                }
                out.push('\n');
            }
        }
        _ => {
            let _ = writeln!(out, "{:>12}  H(n)", "n");
            for (n, v) in g.points().zip(&t.values) {
                let _ = writeln!(out, "{:>12}  {v}", n.to_string());
            }
        }
    }
    out
}

pub fn fit(r: &Report) -> String {
    let Report::Fit {
        polynomial,
        formula,
        multiplicities_positive,
        hilbert_samuel,
        graded_difference,
        ..
    } = r
    else {
        unreachable!("fit report expected")
    };
    let mut out = format!("{formula}\n");
    if let Some(rec) = polynomial.fit_record() {
        let _ = writeln!(
            out,
            "fitted at offset {}, verified there and {} steps further",
            rec.offset, rec.margin
        );
    }
    let mm: Vec<String> = polynomial
        .top_coefficients()
        .iter()
        .map(|(a, c)| format!("e{a}={c}"))
        .collect();
    let _ = writeln!(
        out,
        "mixed multiplicities: {}  ({})",
        mm.join(" "),
        if *multiplicities_positive {
            "all positive"
        } else {
            "NOT all positive"
        }
    );
    if let Some(hs) = hilbert_samuel {
        let parts: Vec<String> = hs
            .iter()
            .enumerate()
            .map(|(i, e)| format!("e{i}={e}"))
            .collect();
        let _ = writeln!(out, "Hilbert-Samuel coefficients: {}", parts.join(" "));
    }
    if let Some(q) = graded_difference {
        let top: Vec<String> = q
            .top_coefficients()
            .iter()
            .map(|(a, c)| format!("e{a}={c}"))
            .collect();
        let _ = writeln!(
            out,
            "associated graded ring, degree {}: {}",
            q.degree(),
            top.join(" ")
        );
    }
    out
}

pub fn postulation(r: &Report) -> String {
    let Report::Postulation {
        polynomial,
        set: s,
        postulation_number,
    } = r
    else {
        unreachable!("postulation report expected")
    };
    let mut out = format!("{}\n", polynomial.formula());
    let _ = writeln!(out, "postulation vectors in {}: {}", s.grid, set(s));
    if let Some(pn) = postulation_number {
        let value = pn.value.map_or("-inf".to_string(), |v| v.to_string());
        let _ = writeln!(out, "postulation number: {value}");
        if pn.box_too_small {
            out.push_str("warning: P differs from H at the top of the box; enlarge --box\n");
        }
    }
    out
}

pub fn search(opts: &SearchOptions, hits: &[SearchHit], names: &[String]) -> String {
    let mut out = format!(
        "search: deg y_j <= {}, at most {} candidates, box {}\n",
        opts.degree_bound, opts.cap, opts.hi
    );
    if hits.is_empty() {
        out.push_str("no monomial complete reduction found\n");
    }
    for (k, h) in hits.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:>3}. y = {}  matrix {}  {}",
            k + 1,
            ys(&h.candidate, names),
            matrix(&h.candidate, names),
            set(&h.reductions)
        );
    }
    out
}

pub fn correspondence(r: &CorrespondenceReport, name: &str, names: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "candidate {name}: y = {}", ys(&r.candidate, names));
    let _ = writeln!(out, "{}", r.polynomial.formula());
    let _ = writeln!(out, "shift (d-1)e = {} on box {}", r.shift, r.grid);
    let _ = writeln!(out, "postulation vectors: {}", set(&r.postulation));
    let _ = writeln!(out, "reduction vectors:   {}", set(&r.reductions));
    let fwd: Vec<String> = r
        .forward_violations
        .iter()
        .map(|v| format!("{v}↦{}", v - &r.shift))
        .collect();
    let bwd: Vec<String> = r
        .backward_violations
        .iter()
        .map(|v| format!("{v}↦{}", v + &r.shift))
        .collect();
    let _ = writeln!(
        out,
        "forward violations:  {}",
        if fwd.is_empty() {
            "none".into()
        } else {
            fwd.join(" ")
        }
    );
    let _ = writeln!(
        out,
        "backward violations: {}",
        if bwd.is_empty() {
            "none".into()
        } else {
            bwd.join(" ")
        }
    );
    let _ = writeln!(out, "CM proxy (P = H on the box): {}", r.cm_proxy);
    if let Some(sg) = &r.single_graded {
        let show = |v: Option<i64>, none: &str| v.map_or(none.to_string(), |x| x.to_string());
        let _ = writeln!(
            out,
            "single-graded pattern r = n + d: r = {}, n = {}, d = {}: {}",
            show(sg.reduction_number, "none"),
            show(sg.postulation_number, "-inf"),
            r.d,
            if sg.matches {
                "matches"
            } else {
                "does not match"
            }
        );
    }
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let _ = writeln!(
        out,
        "verdict: {} (within the box)",
        verdict.as_str().unwrap_or_default()
    );
    out
}

pub fn nakayama(r: &NakayamaReport, name: &str, names: &[String]) -> String {
    let y: Vec<String> =
        r.y.iter()
            .map(|m| m.display_with(names).to_string())
            .collect();
    let mut out = format!("candidate {name}: y = ({})\n", y.join(", "));
    let _ = writeln!(out, "checked {} points of {}", r.checked, r.grid);
    let _ = writeln!(out, "(y)F(n-e) = F(n) at: {}", list(&r.descents));
    let _ = writeln!(out, "violations: {}", list(&r.violations));
    out
}
