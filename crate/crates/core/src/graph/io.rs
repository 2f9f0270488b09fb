//! Line-based edge-list format and DOT emission.
//!
//! ```text
//! n m [colored]
//! u v          (m lines)
//! v color      (n lines, only when the header says `colored`)
//! ```
//!
//! All indices are 0-based. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;

use super::ColoredGraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<ColoredGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let colored = match fields.as_slice() {
        [_, _] => false,
        [_, _, "colored"] => true,
        _ => {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected `n m [colored]`, got `{header}`"),
            })
        }
    };
    let n = parse_num(fields[0], hline)?;
    let m = parse_num(fields[1], hline)?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: hline,
            msg: format!("expected {m} edge lines"),
        })?;
        let (a, b) = parse_pair(line, ln)?;
        edges.push((a, b));
    }
    let mut g = ColoredGraph::from_edges(n, &edges).map_err(|e| Error::Parse {
        line: hline,
        msg: e.to_string(),
    })?;

    if colored {
        let mut colors = vec![None; n];
        for _ in 0..n {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: hline,
                msg: format!("expected {n} color lines"),
            })?;
            let (v, c) = parse_pair(line, ln)?;
            if v >= n || colors[v].is_some() {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("bad or repeated color entry for vertex {v}"),
                });
            }
            colors[v] = Some(c as u32);
        }
        g = g.with_colors(colors.into_iter().map(Option::unwrap).collect())?;
    }
    if let Some((ln, extra)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            msg: format!("trailing content `{extra}`"),
        });
    }
    Ok(g)
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("not a non-negative integer: `{s}`"),
    })
}

fn parse_pair(line: &str, ln: usize) -> Result<(usize, usize)> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            line: ln,
            msg: format!("expected two integers, got `{line}`"),
        });
    }
    Ok((parse_num(parts[0], ln)?, parse_num(parts[1], ln)?))
}

pub fn write_edge_list(g: &ColoredGraph) -> String {
    let mut out = String::new();
    let suffix = if g.colors().is_some() { " colored" } else { "" };
    let _ = writeln!(out, "{} {}{}", g.vertex_count(), g.edge_count(), suffix);
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    if let Some(colors) = g.colors() {
        for (v, c) in colors.iter().enumerate() {
            let _ = writeln!(out, "{v} {c}");
        }
    }
    out
}

/// DOT rendering; `labels` (when given) replaces the numeric vertex labels.
pub fn write_dot(g: &ColoredGraph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let label = labels.map_or_else(|| v.to_string(), |l| l[v].clone());
        match g.colors() {
            Some(c) => {
                let _ = writeln!(out, "  {v} [label=\"{label}\", color_class={}];", c[v]);
            }
            None => {
                let _ = writeln!(out, "  {v} [label=\"{label}\"];");
            }
        }
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}
