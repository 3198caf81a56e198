//! graph6, digraph6 and plain edge-list text formats.
//!
//! Only the single-byte size header is supported (n <= 62).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};

pub const MAX_FORMAT_VERTICES: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Digraph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "digraph6" | "d6" => Ok(Format::Digraph6),
            "edgelist" => Ok(Format::EdgeList),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Graph(Graph),
    Orientation(Orientation),
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Graph(g) => f.write_str(&encode_graph6(g).map_err(|_| fmt::Error)?),
            Parsed::Orientation(o) => f.write_str(&encode_digraph6(o).map_err(|_| fmt::Error)?),
        }
    }
}

pub fn parse(format: Format, text: &str) -> Result<Parsed> {
    match format {
        Format::Graph6 => parse_graph6(text).map(Parsed::Graph),
        Format::Digraph6 => parse_digraph6(text).map(Parsed::Orientation),
        Format::EdgeList => parse_edgelist(text).map(Parsed::Graph),
    }
}

/// Guesses the format: a leading `&` means digraph6, a numeric first line
/// means an edge list, anything else is graph6.
pub fn parse_auto(text: &str) -> Result<Parsed> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let first = first.strip_prefix(">>digraph6<<").unwrap_or(first);
    if first.starts_with('&') {
        parse(Format::Digraph6, text)
    } else if first.parse::<usize>().is_ok() {
        parse(Format::EdgeList, text)
    } else {
        parse(Format::Graph6, text)
    }
}

fn clean(text: &str, header: &str) -> Result<Vec<u8>> {
    let t = text.trim();
    let t = t.strip_prefix(header).unwrap_or(t);
    if t.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if let Some(b) = t.bytes().find(|b| !(63..=126).contains(b) && *b != b'&') {
        return Err(Error::Parse(format!("byte {b:#x} outside the printable range")));
    }
    Ok(t.as_bytes().to_vec())
}

fn read_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let (&first, rest) = bytes
        .split_first()
        .ok_or_else(|| Error::Parse("missing size header".into()))?;
    if first == 126 {
        return Err(Error::TooManyVertices(MAX_FORMAT_VERTICES + 1));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Error::Empty);
    }
    Ok((n, rest))
}

fn unpack(data: &[u8], nbits: usize) -> Result<Vec<bool>> {
    let expected = nbits.div_ceil(6);
    if data.len() != expected {
        return Err(Error::Parse(format!(
            "expected {expected} data bytes, found {}",
            data.len()
        )));
    }
    let mut out = Vec::with_capacity(expected * 6);
    for &b in data {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid data byte {b:#x}")));
        }
        let x = b - 63;
        for k in (0..6).rev() {
            out.push(x >> k & 1 == 1);
        }
    }
    if out[nbits..].iter().any(|&b| b) {
        return Err(Error::Parse("non-zero padding bits".into()));
    }
    out.truncate(nbits);
    Ok(out)
}

fn pack(out: &mut String, bits: &[bool]) {
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for k in 0..6 {
            x = x << 1 | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push((x + 63) as char);
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = clean(text, ">>graph6<<")?;
    if bytes.first() == Some(&b'&') {
        return Err(Error::Parse("digraph6 input where graph6 expected".into()));
    }
    let (n, data) = read_size(&bytes)?;
    let bits = unpack(data, n * (n - 1) / 2)?;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_FORMAT_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let mut out = String::new();
    out.push((63 + n as u8) as char);
    let mut bits = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.adjacent(i, j));
        }
    }
    pack(&mut out, &bits);
    Ok(out)
}

pub fn parse_digraph6(text: &str) -> Result<Orientation> {
    let bytes = clean(text, ">>digraph6<<")?;
    let rest = bytes
        .strip_prefix(b"&")
        .ok_or_else(|| Error::Parse("digraph6 must start with '&'".into()))?;
    let (n, data) = read_size(rest)?;
    let bits = unpack(data, n * n)?;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if bits[i * n + j] {
                if i == j {
                    return Err(Error::NotAnOrientation(format!("loop at {i}")));
                }
                arcs.push((i, j));
            }
        }
    }
    Orientation::from_arcs(n, &arcs)
}

pub fn encode_digraph6(o: &Orientation) -> Result<String> {
    let n = o.n();
    if n > MAX_FORMAT_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let mut out = String::from("&");
    out.push((63 + n as u8) as char);
    let mut bits = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            bits.push(o.has_arc(i, j));
        }
    }
    pack(&mut out, &bits);
    Ok(out)
}

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing vertex count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
        }
    }
    Graph::new(n, edges)
}

pub fn encode_edgelist(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
