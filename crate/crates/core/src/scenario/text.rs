//! Aligned plain-text rendering of reports.

use std::fmt::Write;

use super::eval::{ClassOut, Report};

fn table(out: &mut String, rows: &[(String, &ClassOut)]) {
    let Some((_, first)) = rows.first() else {
        return;
    };
    let mut header: Vec<String> = vec![String::new()];
    header.extend(first.multiplicities.iter().map(|(l, _)| l.clone()));
    header.push("degree".into());
    let mut cells: Vec<Vec<String>> = vec![header];
    for (name, c) in rows {
        let mut row = vec![name.clone()];
        row.extend(c.multiplicities.iter().map(|(_, m)| m.clone()));
        row.push(c.degree.clone());
        cells.push(row);
    }
    let cols = cells[0].len();
    let width: Vec<usize> = (0..cols).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    for r in &cells {
        let mut line = format!("  {:<w$}", r[0], w = width[0]);
        for j in 1..cols {
            let _ = write!(line, "  {:>w$}", r[j], w = width[j]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// Human readable report with exact multiplicities.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario {}", r.name);
    if !r.description.is_empty() {
        let _ = writeln!(out, "  {}", r.description);
    }
    if let Some(g) = &r.group {
        let _ = writeln!(
            out,
            "group {} of order {}, {} classes, irreducible degrees {:?}",
            g.label, g.order, g.classes, g.irreducible_degrees
        );
    }
    if let Some(q) = &r.quotient {
        let _ = writeln!(
            out,
            "quotient: genera {:?}, p_a {}, nodes {} ({} smoothable), branch orders {:?}",
            q.component_genera, q.arithmetic_genus, q.nodes, q.nodes_smoothable, q.branch_orders
        );
    }
    let res = &r.results;
    let mut rows: Vec<(String, &ClassOut)> = Vec::new();
    if let Some(c) = &res.chi_g {
        rows.push(("chi_G(E)".into(), &c.chi_g));
    }
    if let Some(d) = &res.deg_g {
        rows.push(("deg_G(E)".into(), &d.deg_g));
    }
    if let Some(h) = &res.h0 {
        rows.push(("H^0(E)".into(), &h.sheaf));
        rows.push(("H^0(omega)".into(), &h.omega));
    }
    if let Some(d) = &res.dual_graph {
        rows.push(("chi_G(graph)".into(), &d.chi));
    }
    if let Some(t) = &res.topo {
        rows.push(("chi_top".into(), &t.chi));
        rows.push(("H^1(C)".into(), &t.h1));
    }
    for s in &res.sweep {
        rows.push((format!("twist {}", s.twist), &s.chi_g));
    }
    if !rows.is_empty() {
        out.push_str("classes:\n");
        table(&mut out, &rows);
    }
    if let Some(c) = &res.chi_g {
        let _ = writeln!(out, "chi(E) = {}, deg E = {}, rank {}, regular part {}", c.euler, c.degree, c.rank, c.regular_part);
    }
    if let Some(h) = &res.h0 {
        let _ = writeln!(out, "H^0 route: {:?}", h.route);
    }
    for inv in &res.invariant_dim {
        let dim = inv.dimension.as_ref().map(|d| d.to_string()).unwrap_or_else(|| "unknown".into());
        let _ = writeln!(out, "invariant dim m={}: {} (closed form {})", inv.m, dim, inv.closed_form);
    }
    if let Some(d) = &res.def_dim {
        let _ = writeln!(out, "def dim: {} (quotient p_a {})", d.value, d.quotient_arithmetic_genus);
    }
    if let Some(t) = &res.topo {
        let _ = writeln!(out, "chi_top = {}", t.euler);
    }
    if let Some(b) = &res.bounds {
        out.push_str("bounds:\n");
        for c in b {
            let state = match (c.applicable, c.holds) {
                (false, _) => "n/a".to_string(),
                (true, Some(true)) => "holds".to_string(),
                (true, _) => format!("fails at {:?}", c.witness),
            };
            let _ = writeln!(out, "  {}: {}", c.name, state);
        }
    }
    if let Some(rd) = &res.random {
        let _ = writeln!(
            out,
            "random {} law on {} curves: {}/{} passed, seed {}",
            rd.law, rd.family, rd.passed, rd.count, rd.seed
        );
        for f in &rd.failures {
            let _ = writeln!(out, "  failure: {f}");
        }
    }
    if !r.verified.is_empty() {
        out.push_str("verified:\n");
        for c in &r.verified {
            let _ = writeln!(out, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.check, c.detail);
        }
    }
    let _ = writeln!(out, "result: {}", if r.passed { "pass" } else { "FAIL" });
    out
}
