//! Text form of certificates.
//!
//! A certificate file is a sequence of blocks, each opened by a header line:
//!
//! ```text
//! packing 5          # then one line per set: "U1: 0 3 6 7"
//! hom 5              # then "v bits", coordinate 1 first: "0 10010"
//! cutcont 5          # then "u v i" per edge, i in 1..=5
//! labeling           # then "n m" and "u v mask" per edge
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use super::{CertError, CutContinuous, Homomorphism, Packing};
use crate::graphs::{Graph, VertexSet};
use crate::labeling::Labeling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Packing(Packing),
    Hom(Homomorphism),
    CutCont(CutContinuous),
    Labeling(Labeling),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Packing(_) => "packing",
            Certificate::Hom(_) => "hom",
            Certificate::CutCont(_) => "cutcont",
            Certificate::Labeling(_) => "labeling",
        }
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        match self {
            Certificate::Packing(p) => {
                let _ = writeln!(out, "packing {}", p.len());
                for (i, u) in p.sets.iter().enumerate() {
                    let _ = write!(out, "U{}:", i + 1);
                    for v in u.ones() {
                        let _ = write!(out, " {v}");
                    }
                    out.push('\n');
                }
            }
            Certificate::Hom(f) => {
                let _ = writeln!(out, "hom {}", f.bits);
                for (v, &x) in f.vectors.iter().enumerate() {
                    let bits: String = (0..f.bits).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect();
                    let _ = writeln!(out, "{v} {bits}");
                }
            }
            Certificate::CutCont(c) => {
                let _ = writeln!(out, "cutcont {}", c.len);
                for (e, &i) in c.map.iter().enumerate() {
                    let (u, v) = g.endpoints(e);
                    let _ = writeln!(out, "{u} {v} {}", i + 1);
                }
            }
            Certificate::Labeling(x) => {
                out.push_str("labeling\n");
                out.push_str(&x.to_text(g));
            }
        }
        out
    }
}

fn err(line: usize, msg: impl Into<String>) -> CertError {
    CertError::Parse { line, msg: msg.into() }
}

fn num(tok: &str, line: usize) -> Result<usize, CertError> {
    tok.parse().map_err(|_| err(line, format!("expected a number, got {tok:?}")))
}

/// Parses every block of a certificate file against `g`.
pub fn parse_certificates(g: &Graph, text: &str) -> Result<Vec<Certificate>, CertError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let is_header = |l: &str| {
        let head = l.split_whitespace().next().unwrap_or("");
        matches!(head, "packing" | "hom" | "cutcont" | "labeling")
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (hline, header) = lines[i];
        let toks: Vec<&str> = header.split_whitespace().collect();
        if !is_header(header) {
            return Err(err(hline, format!("expected a block header, got {header:?}")));
        }
        let mut j = i + 1;
        while j < lines.len() && !is_header(lines[j].1) {
            j += 1;
        }
        let body = &lines[i + 1..j];
        let cert = match toks[0] {
            "packing" => Certificate::Packing(parse_packing(g, &toks, hline, body)?),
            "hom" => Certificate::Hom(parse_hom(g, &toks, hline, body)?),
            "cutcont" => Certificate::CutCont(parse_cutcont(g, &toks, hline, body)?),
            _ => {
                let text: String = body.iter().map(|(_, l)| format!("{l}\n")).collect();
                let x = Labeling::parse(g, &text).map_err(|e| err(hline, format!("labeling block: {e}")))?;
                Certificate::Labeling(x)
            }
        };
        out.push(cert);
        i = j;
    }
    Ok(out)
}

fn block_size(toks: &[&str], line: usize) -> Result<usize, CertError> {
    if toks.len() != 2 {
        return Err(err(line, format!("header must be \"{} <count>\"", toks[0])));
    }
    num(toks[1], line)
}

fn parse_packing(g: &Graph, toks: &[&str], hline: usize, body: &[(usize, &str)]) -> Result<Packing, CertError> {
    let count = block_size(toks, hline)?;
    if body.len() != count {
        return Err(err(hline, format!("expected {count} sets, found {}", body.len())));
    }
    let mut sets = Vec::with_capacity(count);
    for (k, &(line, l)) in body.iter().enumerate() {
        let (label, rest) = l.split_once(':').ok_or_else(|| err(line, "expected \"U<i>: vertices\""))?;
        if label.trim() != format!("U{}", k + 1) {
            return Err(err(line, format!("expected U{}", k + 1)));
        }
        let mut u = VertexSet::with_capacity(g.n());
        for t in rest.split_whitespace() {
            let v = num(t, line)?;
            if v >= g.n() {
                return Err(err(line, format!("vertex {v} out of range")));
            }
            u.insert(v);
        }
        sets.push(u);
    }
    Ok(Packing::new(sets))
}

fn parse_hom(g: &Graph, toks: &[&str], hline: usize, body: &[(usize, &str)]) -> Result<Homomorphism, CertError> {
    let bits = block_size(toks, hline)?;
    if !(1..=31).contains(&bits) {
        return Err(err(hline, "coordinate count must be in 1..=31"));
    }
    let mut vectors = vec![None; g.n()];
    for &(line, l) in body {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 2 || t[1].len() != bits || !t[1].bytes().all(|b| b == b'0' || b == b'1') {
            return Err(err(line, format!("expected \"v <{bits} bits>\"")));
        }
        let v = num(t[0], line)?;
        if v >= g.n() || vectors[v].is_some() {
            return Err(err(line, format!("vertex {v} out of range or repeated")));
        }
        let x = t[1].bytes().enumerate().fold(0u32, |acc, (i, b)| acc | ((b == b'1') as u32) << i);
        vectors[v] = Some(x);
    }
    let vectors: Option<Vec<u32>> = vectors.into_iter().collect();
    let vectors = vectors.ok_or_else(|| err(hline, "some vertex has no image"))?;
    Ok(Homomorphism { bits, vectors })
}

fn parse_cutcont(g: &Graph, toks: &[&str], hline: usize, body: &[(usize, &str)]) -> Result<CutContinuous, CertError> {
    let len = block_size(toks, hline)?;
    let mut map = vec![None; g.m()];
    for &(line, l) in body {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(err(line, "expected \"u v i\""));
        }
        let (u, v, i) = (num(t[0], line)?, num(t[1], line)?, num(t[2], line)?);
        if !(1..=len).contains(&i) {
            return Err(err(line, format!("cycle edge {i} outside 1..={len}")));
        }
        let e = g
            .find_edge(u, v)
            .ok_or_else(|| err(line, format!("({u}, {v}) is not an edge")))?;
        if map[e].is_some() {
            return Err(err(line, format!("edge ({u}, {v}) listed twice")));
        }
        map[e] = Some(i - 1);
    }
    let map: Option<Vec<usize>> = map.into_iter().collect();
    let map = map.ok_or_else(|| err(hline, "some edge has no image"))?;
    Ok(CutContinuous { len, map })
}
