//! Pictures of the signature lattice: the n = 2 plane with the lines
//! `L_j^{+-}`, the transition arrows and the dominant region, and a DOT
//! graph for any n.

use crate::error::{Error, Result};
use crate::isotypic::Signature;
use crate::transitions::{Direction, Lattice, StructureReport};
use std::fmt::Write;

const COLORS: [&str; 6] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b2", "#937860"];

/// Index of the simple submodule containing `k`, if the module is reducible.
fn piece(rep: &StructureReport, k: &Signature) -> Option<usize> {
    if rep.irreducible {
        return None;
    }
    rep.simples.iter().position(|p| p.contains(k))
}

fn letter(i: Option<usize>) -> char {
    match i {
        Some(i) => (b'A' + i as u8) as char,
        None => 'o',
    }
}

fn check_plane(lat: &Lattice) -> Result<()> {
    if lat.n != 2 {
        return Err(Error::Unsupported("plane diagrams need n = 2; use DOT".into()));
    }
    Ok(())
}

fn levels(rep: &StructureReport, j: usize) -> (Option<i64>, Option<i64>) {
    let get = |s: char| rep.hyperplanes.iter().find(|h| h.j == j && h.sign == s).and_then(|h| h.level);
    (get('+'), get('-'))
}

fn mark(x: i64, (plus, minus): (Option<i64>, Option<i64>)) -> char {
    match (plus == Some(x), minus == Some(x)) {
        (true, true) => '*',
        (true, false) => '+',
        (false, true) => '-',
        _ => ' ',
    }
}

/// ASCII plane: columns are `k_1`, rows `k_2` (top is largest). Letters
/// name simple submodules, `o` marks the rest. Arrows show nonzero
/// transitions; the rulers mark where `L_1^{+-}` (top) and `L_2^{+-}`
/// (right) pass, `*` where they coincide.
pub fn plane_text(rep: &StructureReport, lat: &Lattice) -> Result<String> {
    check_plane(lat)?;
    let b = lat.bound;
    let has = |k: &Signature, j, d| lat.has_edge(k, j, d);
    let l1 = levels(rep, 1);
    let l2 = levels(rep, 2);
    let mut out = String::new();
    let mut ruler = String::from("      ");
    for k1 in -b..=b {
        ruler.push(mark(k1, l1));
        ruler.push_str("   ");
    }
    writeln!(out, "{}", ruler.trim_end()).unwrap();
    for k2 in (-b..=b).rev() {
        let mut row = format!("{:>4}  ", k2);
        let mut below = String::from("      ");
        for k1 in -b..=b {
            let k = Signature(vec![k1, k2]);
            if !k.is_dominant() {
                row.push_str("    ");
                below.push_str("    ");
                continue;
            }
            row.push(letter(piece(rep, &k)));
            let right = Signature(vec![k1 + 1, k2]);
            row.push_str(if k1 == b {
                "   "
            } else {
                match (has(&k, 1, Direction::Up), has(&right, 1, Direction::Down)) {
                    (true, true) => "---",
                    (true, false) => "-->",
                    (false, true) => "<--",
                    _ => "   ",
                }
            });
            let down = Signature(vec![k1, k2 - 1]);
            below.push(if k2 == -b {
                ' '
            } else {
                match (has(&down, 2, Direction::Up), has(&k, 2, Direction::Down)) {
                    (true, true) => '|',
                    (true, false) => '^',
                    (false, true) => 'v',
                    _ => ' ',
                }
            });
            below.push_str("   ");
        }
        let m = mark(k2, l2);
        let line = format!("{:<w$}{}", row, m, w = 6 + 4 * (2 * b as usize + 1));
        writeln!(out, "{}", line.trim_end()).unwrap();
        if k2 > -b {
            writeln!(out, "{}", below.trim_end()).unwrap();
        }
    }
    let mut axis = String::from("      ");
    for k1 in -b..=b {
        write!(axis, "{:<4}", k1).unwrap();
    }
    writeln!(out, "{}", axis.trim_end()).unwrap();
    writeln!(out).unwrap();
    for h in &rep.hyperplanes {
        writeln!(out, "L{}{}: k{} = {}", h.j, h.sign, h.j, h.value).unwrap();
    }
    if !rep.irreducible {
        for (i, p) in rep.simples.iter().enumerate() {
            writeln!(out, "{}: {}", letter(Some(i)), p).unwrap();
        }
    }
    Ok(out)
}

/// SVG plane with the same content as [`plane_text`].
pub fn plane_svg(rep: &StructureReport, lat: &Lattice) -> Result<String> {
    check_plane(lat)?;
    let b = lat.bound;
    let step = 48.0;
    let margin = 40.0;
    let side = 2.0 * b as f64 * step + 2.0 * margin;
    let x = |k1: f64| margin + (k1 + b as f64) * step;
    let y = |k2: f64| margin + (b as f64 - k2) * step;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="monospace" font-size="11">"#,
        w = side + 140.0,
        h = side
    )
    .unwrap();
    writeln!(
        s,
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#444\"/></marker></defs>"
    )
    .unwrap();
    // the dominant region k1 >= k2 lies below the diagonal
    let (lo, hi) = (-(b as f64) - 0.5, b as f64 + 0.5);
    writeln!(
        s,
        r##"<polygon points="{},{} {},{} {},{}" fill="#f0f0f0"/>"##,
        x(lo),
        y(lo),
        x(hi),
        y(hi),
        x(hi),
        y(lo)
    )
    .unwrap();
    for e in &lat.edges {
        let from = &lat.nodes[e.from];
        let to = lat.target(e);
        if lat.node_index(&to).is_none() {
            continue;
        }
        // offset the two directions so that both arrows stay visible
        let off = if e.direction == Direction::Up { 3.0 } else { -3.0 };
        let (dx, dy) = if e.j == 1 { (0.0, off) } else { (off, 0.0) };
        let shorten = |a: f64, b: f64| a + (b - a) * 0.78;
        let (x0, y0) = (x(from.0[0] as f64) + dx, y(from.0[1] as f64) + dy);
        let (x1, y1) = (x(to.0[0] as f64) + dx, y(to.0[1] as f64) + dy);
        writeln!(
            s,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#444" marker-end="url(#arrow)"/>"##,
            x0 + (x1 - x0) * 0.22,
            y0 + (y1 - y0) * 0.22,
            shorten(x0, x1),
            shorten(y0, y1)
        )
        .unwrap();
    }
    for h in &rep.hyperplanes {
        let Some(level) = h.level else { continue };
        let color = if h.sign == '+' { "#c0392b" } else { "#2471a3" };
        let l = level as f64;
        let (x1, y1, x2, y2) = if h.j == 1 { (x(l), y(hi), x(l), y(lo)) } else { (x(lo), y(l), x(hi), y(l)) };
        writeln!(
            s,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{}" stroke-dasharray="6 4" stroke-width="1.5"/>"#,
            x1, y1, x2, y2, color
        )
        .unwrap();
        let (tx, ty) = if h.j == 1 { (x1 + 3.0, y1 + 12.0) } else { (x2 - 30.0, y2 - 4.0) };
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" fill="{}">L{}{}</text>"#, tx, ty, color, h.j, h.sign).unwrap();
    }
    for k in &lat.nodes {
        let p = piece(rep, k);
        let color = p.map_or("#222", |i| COLORS[i % COLORS.len()]);
        writeln!(
            s,
            r#"<circle cx="{:.1}" cy="{:.1}" r="5" fill="{}"><title>{}</title></circle>"#,
            x(k.0[0] as f64),
            y(k.0[1] as f64),
            color,
            k
        )
        .unwrap();
    }
    for k1 in -b..=b {
        writeln!(s, r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, x(k1 as f64), side - 8.0, k1).unwrap();
        writeln!(s, r#"<text x="10" y="{:.1}">{}</text>"#, y(k1 as f64) + 4.0, k1).unwrap();
    }
    if !rep.irreducible {
        for (i, p) in rep.simples.iter().enumerate() {
            writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" fill="{}">{}: {}</text>"#,
                side + 4.0,
                margin + 16.0 * i as f64,
                COLORS[i % COLORS.len()],
                letter(Some(i)),
                xml_escape(&p.to_string())
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn xml_escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn dot_escape(t: &str) -> String {
    t.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the window lattice; nodes are filled by simple
/// submodule and pinned to the plane when `n = 2`.
pub fn lattice_dot(rep: &StructureReport, lat: &Lattice) -> String {
    let mut s = String::from("digraph lattice {\n  node [shape=circle, style=filled, fontsize=9, fontcolor=white];\n");
    let lines: Vec<String> = rep.hyperplanes.iter().map(|h| format!("L{}{}: k{} = {}", h.j, h.sign, h.j, h.value)).collect();
    writeln!(
        s,
        "  label=\"{}\";",
        dot_escape(&format!("n = {}, alpha = {}, beta = {}, {:?}; {}", lat.n, lat.alpha, lat.beta, rep.case, lines.join("; ")))
    )
    .unwrap();
    for (i, k) in lat.nodes.iter().enumerate() {
        let color = piece(rep, k).map_or("#222222", |p| COLORS[p % COLORS.len()]);
        let pos = if lat.n == 2 { format!(", pos=\"{},{}!\"", k.0[0], k.0[1]) } else { String::new() };
        writeln!(s, "  n{} [label=\"{}\", fillcolor=\"{}\"{}];", i, k, color, pos).unwrap();
    }
    for e in &lat.edges {
        if let Some(t) = lat.node_index(&lat.target(e)) {
            let sign = if e.direction == Direction::Up { '+' } else { '-' };
            writeln!(s, "  n{} -> n{} [label=\"{}{}\"];", e.from, t, e.j, sign).unwrap();
        }
    }
    s.push_str("}\n");
    s
}
