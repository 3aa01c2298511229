//! The graph6 text format for simple graphs.
//!
//! graph6 numbers vertices `0..n`; they are read as `1..=n`. Graphs with
//! other vertex ids are written with their ids compacted in ascending order.

use p2c_core::{SimpleGraph, VertexId};

use crate::error::FormatError;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: u64) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as one graph6 line, without header or newline.
pub fn encode(g: &SimpleGraph) -> String {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n as u64);
    let (mut acc, mut bits) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(ids[i], ids[j]) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                (acc, bits) = (0, 0);
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is skipped).
pub fn decode(line: &str) -> Result<SimpleGraph, FormatError> {
    let line = line.trim();
    let body = line.strip_prefix(HEADER).unwrap_or(line).as_bytes();
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("byte {b:#04x} is outside the graph6 range")));
    }
    let (n, rest) = match body {
        [] => return Err(FormatError::Graph6("empty line".into())),
        [126, 126, tail @ ..] if tail.len() >= 6 => {
            (tail[..6].iter().fold(0u64, |a, &b| (a << 6) | u64::from(b - 63)), &tail[6..])
        }
        [126, tail @ ..] if tail.len() >= 3 && tail[0] != 126 => {
            (tail[..3].iter().fold(0u64, |a, &b| (a << 6) | u64::from(b - 63)), &tail[3..])
        }
        [126, ..] => return Err(FormatError::Graph6("truncated size field".into())),
        [b, tail @ ..] => (u64::from(b - 63), tail),
    };
    let n = u32::try_from(n).map_err(|_| FormatError::Graph6(format!("{n} vertices is too many")))?;
    let pairs = u64::from(n) * u64::from(n.saturating_sub(1)) / 2;
    if rest.len() as u64 != pairs.div_ceil(6) {
        return Err(FormatError::Graph6(format!(
            "{n} vertices need {} data bytes, found {}",
            pairs.div_ceil(6),
            rest.len()
        )));
    }
    let mut g = SimpleGraph::with_vertices(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(VertexId(i + 1), VertexId(j + 1)).expect("vertices exist");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Decodes every non-empty line of `text`.
pub fn decode_all(text: &str) -> Result<Vec<SimpleGraph>, FormatError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}
