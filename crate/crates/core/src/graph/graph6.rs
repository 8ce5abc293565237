//! The graph6 text encoding.
//!
//! Layout: the vertex count `N(n)` followed by the upper-triangle adjacency
//! bits `x(0,1) x(0,2) x(1,2) x(0,3) ...` (column by column), packed six bits
//! per printable byte with an offset of 63 and zero-padded at the end.

use super::SimpleGraph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 68_719_476_735;

pub fn encode_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    out
}

fn encode_n(n: usize, out: &mut String) {
    let push6 = |out: &mut String, v: usize, groups: u32| {
        for k in (0..groups).rev() {
            out.push((((v >> (6 * k)) & 63) as u8 + 63) as char);
        }
    };
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push6(out, n, 3);
    } else {
        out.push_str("~~");
        push6(out, n, 6);
    }
}

pub fn decode_graph6(code: &str) -> Result<SimpleGraph> {
    let code = code.trim_end_matches(['\n', '\r']);
    let code = code.strip_prefix(HEADER).unwrap_or(code);
    let bytes = code.as_bytes();
    let mut values = Vec::with_capacity(bytes.len());
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!(
                "byte {b:#04x} at position {pos} outside the printable range 63..=126"
            )));
        }
        values.push(b - 63);
    }
    let (n, body) = decode_n(&values)?;
    if n > MAX_N {
        return Err(Error::Graph6(format!("vertex count {n} too large")));
    }
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() < bytes_needed {
        return Err(Error::Graph6(format!(
            "truncated: {} adjacency bytes for n={n}, need {bytes_needed}",
            body.len()
        )));
    }
    if body.len() > bytes_needed {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after adjacency data",
            body.len() - bytes_needed
        )));
    }
    let mut g = SimpleGraph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_n(values: &[u8]) -> Result<(usize, &[u8])> {
    let truncated = || Error::Graph6("truncated vertex count".into());
    let read = |slice: &[u8]| slice.iter().fold(0usize, |acc, &v| (acc << 6) | v as usize);
    match values {
        [] => Err(truncated()),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(truncated());
            }
            Ok((read(&rest[..6]), &rest[6..]))
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(truncated());
            }
            Ok((read(&rest[..3]), &rest[3..]))
        }
        [first, rest @ ..] => Ok((*first as usize, rest)),
    }
}
