//! Stallings folding.

use super::{Dir, Edge, LabeledGraph};

/// Two distinct edges with the same label and direction at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FoldCandidate {
    pub vertex: usize,
    pub label: u32,
    pub dir: Dir,
    /// Edge that survives the fold (the smaller index).
    pub kept: usize,
    /// Edge that is identified with `kept` and removed.
    pub removed: usize,
}

/// One identification performed while folding. Ids refer to the graph as it
/// was just before this step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldStep {
    pub candidate: FoldCandidate,
    /// `(survivor, absorbed)` when the far endpoints were distinct vertices.
    pub merged_vertices: Option<(usize, usize)>,
}

impl FoldStep {
    /// A fold of two edges that already share both endpoints kills a loop
    /// and lowers the rank by one; every other fold is a homotopy equivalence.
    pub fn loses_rank(&self) -> bool {
        self.merged_vertices.is_none()
    }
}

/// Result of folding: the immersed graph, the trace, and the folding map.
#[derive(Debug, Clone)]
pub struct Folding {
    pub graph: LabeledGraph,
    pub trace: Vec<FoldStep>,
    /// Original vertex → folded vertex.
    pub vertex_map: Vec<usize>,
    /// Original edge → folded edge.
    pub edge_map: Vec<usize>,
}

impl Folding {
    /// True iff no step lowered the rank, i.e. the folding map is a homotopy
    /// equivalence on every component.
    pub fn is_homotopy_equivalence(&self) -> bool {
        self.trace.iter().all(|s| !s.loses_rank())
    }
}

/// Every available fold of `g`, sorted by `(vertex, label, dir, kept, removed)`.
pub fn fold_candidates(g: &LabeledGraph) -> Vec<FoldCandidate> {
    let mut out = Vec::new();
    for (v, star) in g.stars().iter().enumerate() {
        for (i, a) in star.iter().enumerate() {
            for b in &star[i + 1..] {
                if a.label != b.label || a.dir != b.dir {
                    break;
                }
                if a.edge == b.edge {
                    continue;
                }
                out.push(FoldCandidate {
                    vertex: v,
                    label: a.label,
                    dir: a.dir,
                    kept: a.edge.min(b.edge),
                    removed: a.edge.max(b.edge),
                });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Folds with the deterministic schedule: always the first candidate in
/// `(vertex, label, dir)` order.
pub fn fold(g: &LabeledGraph) -> Folding {
    fold_with(g, |_| 0)
}

/// Folds, letting `choose` pick which of the current candidates to fold next.
/// The folded graph does not depend on the choices up to isomorphism.
pub fn fold_with<F>(g: &LabeledGraph, mut choose: F) -> Folding
where
    F: FnMut(&[FoldCandidate]) -> usize,
{
    let mut cur = g.clone();
    let mut vertex_map: Vec<usize> = (0..g.vertex_count()).collect();
    let mut edge_map: Vec<usize> = (0..g.edge_count()).collect();
    let mut trace = Vec::new();
    loop {
        let candidates = fold_candidates(&cur);
        if candidates.is_empty() {
            break;
        }
        let c = candidates[choose(&candidates).min(candidates.len() - 1)];
        let far = |e: &Edge| match c.dir {
            Dir::Out => e.dst,
            Dir::In => e.src,
        };
        let a = far(&cur.edges[c.kept]);
        let b = far(&cur.edges[c.removed]);
        cur.edges.remove(c.removed);
        for m in edge_map.iter_mut() {
            if *m == c.removed {
                *m = c.kept;
            } else if *m > c.removed {
                *m -= 1;
            }
        }
        let merged_vertices = if a != b {
            let (keep, gone) = (a.min(b), a.max(b));
            let relabel = |v: usize| {
                if v == gone {
                    keep
                } else if v > gone {
                    v - 1
                } else {
                    v
                }
            };
            for e in cur.edges.iter_mut() {
                e.src = relabel(e.src);
                e.dst = relabel(e.dst);
            }
            cur.basepoint = cur.basepoint.map(relabel);
            cur.vertex_count -= 1;
            for m in vertex_map.iter_mut() {
                *m = relabel(*m);
            }
            Some((keep, gone))
        } else {
            None
        };
        trace.push(FoldStep {
            candidate: c,
            merged_vertices,
        });
    }
    Folding {
        graph: cur,
        trace,
        vertex_map,
        edge_map,
    }
}
