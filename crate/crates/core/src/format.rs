//! Text encodings: the brace-delimited adjacency-list format and graph6.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order expressible with the one-byte graph6 header.
pub const GRAPH6_MAX_SHORT: usize = 62;

/// Head vertex, its byte offset, and `(neighbor, offset)` pairs.
type Entry = (usize, usize, Vec<(usize, usize)>);

/// Parses `{0: 1 2; 1: 0 2; 2: 0 1}`.
///
/// Each vertex `0..n` must head exactly one entry. An edge listed in only
/// one direction is added in both.
pub fn parse_adjacency_list(text: &str) -> Result<Graph> {
    let mut p = Cursor { s: text.as_bytes(), pos: 0 };
    p.skip_ws();
    p.expect(b'{')?;
    let mut entries: Vec<Entry> = Vec::new();
    loop {
        p.skip_ws();
        match p.peek() {
            Some(b'}') => {
                p.pos += 1;
                break;
            }
            Some(c) if c.is_ascii_digit() => {}
            Some(_) => return Err(Error::parse(p.pos, "expected a vertex index or '}'")),
            None => return Err(Error::parse(p.pos, "unterminated adjacency list")),
        }
        let head_pos = p.pos;
        let head = p.number()?;
        p.skip_ws();
        p.expect(b':')?;
        let mut nbrs = Vec::new();
        loop {
            p.skip_ws();
            match p.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let at = p.pos;
                    nbrs.push((p.number()?, at));
                }
                Some(b';') => {
                    p.pos += 1;
                    break;
                }
                Some(b'}') => break,
                Some(_) => return Err(Error::parse(p.pos, "unexpected character in neighbor list")),
                None => return Err(Error::parse(p.pos, "unterminated adjacency list")),
            }
        }
        entries.push((head, head_pos, nbrs));
    }
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::parse(p.pos, "trailing characters after '}'"));
    }

    let n = entries.len();
    let mut rows = vec![VertexSet::EMPTY; n];
    let mut seen = VertexSet::EMPTY;
    crate::graph::check_capacity(n)?;
    for (head, pos, _) in &entries {
        if *head >= n {
            return Err(Error::VertexOutOfRange { vertex: *head, n });
        }
        if seen.contains(*head) {
            return Err(Error::parse(*pos, format!("vertex {head} listed twice")));
        }
        seen.insert(*head);
    }
    for (head, _, nbrs) in entries {
        for (v, _) in nbrs {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if v == head {
                return Err(Error::SelfLoop(v));
            }
            rows[head].insert(v);
        }
    }
    Graph::from_rows(&rows)
}

pub fn emit_adjacency_list(g: &Graph) -> String {
    let mut out = String::from("{");
    for v in 0..g.n() {
        if v > 0 {
            out.push_str("; ");
        }
        out.push_str(&v.to_string());
        out.push(':');
        for w in g.neighbors(v) {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        if g.degree(v) == 0 {
            out.push(' ');
        }
    }
    out.push('}');
    out
}

/// Encodes `g` in graph6 (short header only, `n <= 62`).
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_SHORT {
        return Err(Error::Capacity { n, max: GRAPH6_MAX_SHORT });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Decodes one graph6 line. A trailing line terminator and an optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (offset, body) = match line.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    let Some(&header) = body.first() else {
        return Err(Error::parse(offset, "empty graph6 string"));
    };
    if header == b'~' {
        return Err(Error::parse(offset, "extended graph6 length headers are not supported (n > 62)"));
    }
    if !(63..=125).contains(&header) {
        return Err(Error::parse(offset, format!("bad graph6 header byte 0x{header:02x}")));
    }
    let n = (header - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let payload = &body[1..];
    if payload.len() < need {
        return Err(Error::parse(offset + body.len(), format!("truncated payload: need {need} bytes, got {}", payload.len())));
    }
    if payload.len() > need {
        return Err(Error::parse(offset + 1 + need, "trailing characters after graph6 payload"));
    }
    for (i, &b) in payload.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset + 1 + i, format!("bad graph6 payload byte 0x{b:02x}")));
        }
    }
    let mut rows = vec![VertexSet::EMPTY; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i].insert(j);
                rows[j].insert(i);
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let pad = 6 - nbits % 6;
        if (payload[need - 1] - 63) & ((1u8 << pad) - 1) != 0 {
            return Err(Error::parse(offset + need, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Parses one graph in either format, picking by the first non-blank byte.
pub fn parse_any(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.starts_with('{') {
        parse_adjacency_list(t)
    } else {
        parse_graph6(t)
    }
}

/// Parses a file body holding one graph per non-blank line, in either format.
pub fn parse_many(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_any)
        .collect()
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(start, "bad vertex index"))
    }
}
