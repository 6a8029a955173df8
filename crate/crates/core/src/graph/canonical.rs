use std::collections::VecDeque;

use super::LabeledGraph;
use crate::error::{Error, Result};

/// Canonical byte encoding of a folded connected graph.
///
/// With `based = true` vertices are renumbered breadth-first from the
/// basepoint, visiting half-edges in `(label, dir)` order; on a folded graph
/// that numbering is forced, so two based graphs get the same bytes exactly
/// when they are label-, direction- and basepoint-preserving isomorphic.
/// With `based = false` the encoding is the minimum over all basepoints.
pub fn canonical_form(g: &LabeledGraph, based: bool) -> Result<Vec<u8>> {
    g.require_folded()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if based {
        let root = g.basepoint().ok_or(Error::MissingBasepoint)?;
        Ok(encode_from(g, root))
    } else {
        Ok((0..g.vertex_count())
            .map(|v| encode_from(g, v))
            .min()
            .expect("connected graphs have a vertex"))
    }
}

fn encode_from(g: &LabeledGraph, root: usize) -> Vec<u8> {
    let stars = g.stars();
    let mut order = vec![usize::MAX; g.vertex_count()];
    order[root] = 0;
    let mut next = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for h in &stars[v] {
            if order[h.far] == usize::MAX {
                order[h.far] = next;
                next += 1;
                queue.push_back(h.far);
            }
        }
    }
    let mut rows: Vec<(u32, u32, u32)> = g
        .edges()
        .iter()
        .map(|e| (order[e.src] as u32, e.label, order[e.dst] as u32))
        .collect();
    rows.sort_unstable();

    let mut bytes = Vec::with_capacity(12 + rows.len() * 12);
    bytes.extend_from_slice(&g.ambient_rank().to_be_bytes());
    bytes.extend_from_slice(&(g.vertex_count() as u32).to_be_bytes());
    bytes.extend_from_slice(&(rows.len() as u32).to_be_bytes());
    for (s, l, d) in rows {
        bytes.extend_from_slice(&s.to_be_bytes());
        bytes.extend_from_slice(&l.to_be_bytes());
        bytes.extend_from_slice(&d.to_be_bytes());
    }
    bytes
}

/// Vertices `v` of `g` such that `(g, v)` is based-isomorphic to `(h, h.basepoint)`.
pub fn matching_basepoints(g: &LabeledGraph, h: &LabeledGraph) -> Result<Vec<usize>> {
    let target = canonical_form(h, true)?;
    g.require_folded()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok((0..g.vertex_count())
        .filter(|&v| encode_from(g, v) == target)
        .collect())
}
