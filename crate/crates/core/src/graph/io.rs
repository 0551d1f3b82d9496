//! Edge-list text and graph6 encodings.
//!
//! Edge-list: the first meaningful line is the vertex count, then one
//! `u v` pair per line. `#` starts a comment; blank lines are skipped.
//!
//! graph6: an optional `>>graph6<<` header, the vertex count `N(n)`, then
//! the upper triangle of the adjacency matrix in column order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed big-endian into 6-bit
//! groups each offset by 63 and zero-padded at the end.

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::ParseLine { line: line_no, msg };
        let mut fields = line.split_whitespace();
        match n {
            None => {
                let tok = fields.next().unwrap_or_default();
                n = Some(tok.parse().map_err(|_| err(format!("expected vertex count, found {tok:?}")))?);
                if fields.next().is_some() {
                    return Err(err("vertex count line has extra fields".into()));
                }
            }
            Some(count) => {
                let mut vertex = || -> Result<usize> {
                    let tok = fields.next().ok_or_else(|| err("expected two vertices".into()))?;
                    let v: usize = tok.parse().map_err(|_| err(format!("bad vertex {tok:?}")))?;
                    if v >= count {
                        return Err(err(format!("vertex {v} out of range for n = {count}")));
                    }
                    Ok(v)
                };
                let u = vertex()?;
                let v = vertex()?;
                if fields.next().is_some() {
                    return Err(err("edge line has extra fields".into()));
                }
                if u == v {
                    return Err(err(format!("self-loop at {u}")));
                }
                pairs.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::ParseLine { line: 0, msg: "missing vertex count".into() })?;
    Graph::from_edge_list(n, pairs)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let err = |offset: usize, msg: &str| Error::Graph6 { offset: base + offset, msg: msg.into() };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b} outside 63..=126")));
        }
    }
    let group = |i: usize| -> Result<usize> {
        body.get(i).map(|&b| (b - 63) as usize).ok_or_else(|| err(i, "truncated vertex count"))
    };
    let (n, mut pos) = match body.first() {
        None => return Err(err(0, "empty input")),
        Some(126) if body.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | group(i)?;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | group(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() - pos != needed {
        return Err(err(
            body.len().min(pos + needed),
            &format!("expected {needed} adjacency bytes, found {}", body.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    pos += needed;
    if bits % 6 != 0 {
        let last = body[pos - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Reads either format: graph6 when the text is a single line of
/// graph6 bytes (or carries the header), edge-list otherwise.
pub fn parse_any(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed.starts_with(HEADER) {
        return from_graph6(trimmed);
    }
    let single_line = !trimmed.contains('\n');
    let looks_g6 = !trimmed.is_empty()
        && trimmed.bytes().all(|b| (63..=126).contains(&b))
        && !trimmed.bytes().all(|b| b.is_ascii_digit());
    if single_line && looks_g6 {
        from_graph6(trimmed)
    } else {
        parse_edge_list(text)
    }
}
