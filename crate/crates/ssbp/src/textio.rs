//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m
//! u v w      (m lines; w is a decimal or `inf`)
//! h          (optional section marker)
//! value      (n lines; decimal, `inf`, or `-inf`)
//! ```

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::key::Capacity;
use std::fmt::Write as _;

/// A parsed file: a graph, optionally with initial capacities.
pub struct TextInstance {
    pub graph: Graph,
    pub h: Option<Vec<Capacity>>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_value(tok: &str, line: usize) -> Result<f64> {
    match tok {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => tok
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| err(line, format!("bad value `{}`", tok))),
    }
}

pub fn parse(text: &str) -> Result<TextInstance> {
    let total_lines = text.lines().count();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, s)| (i + 1, s.split('#').next().unwrap_or("").trim()))
        .filter(|(_, s)| !s.is_empty());

    let (lno, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(lno, "bad node count"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(lno, "bad edge count"))?;
    if it.next().is_some() {
        return Err(err(lno, "trailing tokens after `n m`"));
    }

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| err(total_lines, format!("expected {} edge lines", m)))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(lno, "edge line must be `u v w`"));
        }
        let u: u32 = toks[0]
            .parse()
            .map_err(|_| err(lno, format!("bad node id `{}`", toks[0])))?;
        let v: u32 = toks[1]
            .parse()
            .map_err(|_| err(lno, format!("bad node id `{}`", toks[1])))?;
        let w = parse_value(toks[2], lno)?;
        if w == f64::NEG_INFINITY {
            return Err(err(lno, "edge weight cannot be -inf"));
        }
        if (u as usize) >= n || (v as usize) >= n {
            return Err(err(lno, format!("node id out of range [0, {})", n)));
        }
        edges.push((u, v, w));
    }

    let h = match lines.next() {
        None => None,
        Some((lno, tok)) if tok == "h" => {
            let mut h = Vec::with_capacity(n);
            for _ in 0..n {
                let (lno, line) = lines
                    .next()
                    .ok_or_else(|| err(lno, format!("expected {} capacity lines", n)))?;
                h.push(Capacity::from_value(parse_value(line, lno)?));
            }
            Some(h)
        }
        Some((lno, tok)) => return Err(err(lno, format!("unexpected `{}`", tok))),
    };
    if let Some((lno, tok)) = lines.next() {
        return Err(err(lno, format!("unexpected trailing `{}`", tok)));
    }

    let graph = Graph::from_values(n, &edges).expect("ids validated above");
    Ok(TextInstance { graph, h })
}

fn write_value(out: &mut String, v: f64) {
    if v == f64::INFINITY {
        out.push_str("inf");
    } else if v == f64::NEG_INFINITY {
        out.push_str("-inf");
    } else {
        write!(out, "{}", v).unwrap();
    }
}

pub fn serialize(graph: &Graph, h: Option<&[Capacity]>) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", graph.n(), graph.m()).unwrap();
    for e in graph.edges() {
        write!(out, "{} {} ", e.src, e.dst).unwrap();
        write_value(&mut out, e.w.value());
        out.push('\n');
    }
    if let Some(h) = h {
        out.push_str("h\n");
        for cap in h {
            write_value(&mut out, cap.value());
            out.push('\n');
        }
    }
    out
}
