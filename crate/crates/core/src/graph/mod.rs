//! Directed graphs whose edges are labelled by generators of a free group.
//!
//! A [`LabeledGraph`] stores each geometric edge once, in its positive
//! orientation. Crossing an edge against its orientation reads the inverse
//! letter. Such a graph is the same thing as a combinatorial map to the rose
//! whose petals are the generators, and the graph is an immersion exactly when
//! it is folded.

mod canonical;
mod fold;
mod io;
mod morphism;

pub use canonical::{canonical_form, matching_basepoints};
pub use fold::{fold, fold_with, FoldCandidate, FoldStep, Folding};
pub use io::{export_graph, import_text, ExportFormat};
pub use morphism::{check_cover, CoverReport, GraphMorphism};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: u32,
}

/// Direction in which a half-edge leaves a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// The edge starts here; crossing it reads the positive letter.
    Out,
    /// The edge ends here; crossing it reads the inverse letter.
    In,
}

impl Dir {
    pub fn name(self) -> &'static str {
        match self {
            Dir::Out => "outgoing",
            Dir::In => "incoming",
        }
    }
}

/// One end of an edge as seen from a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfEdge {
    pub label: u32,
    pub dir: Dir,
    pub edge: usize,
    /// Vertex reached by crossing the edge.
    pub far: usize,
}

impl HalfEdge {
    pub fn letter(&self) -> Letter {
        Letter::new(self.label, self.dir == Dir::Out)
    }
}

/// A step of an edge path: the edge index and whether it is crossed forwards.
pub type PathStep = (usize, bool);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    basepoint: Option<usize>,
    ambient_rank: u32,
}

impl LabeledGraph {
    pub fn new(
        ambient_rank: u32,
        vertex_count: usize,
        edges: Vec<Edge>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        for e in &edges {
            for v in [e.src, e.dst] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if e.label == 0 || e.label > ambient_rank {
                return Err(Error::GeneratorOutOfRange {
                    generator: e.label,
                    rank: ambient_rank,
                });
            }
        }
        if let Some(b) = basepoint {
            if b >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: b,
                    count: vertex_count,
                });
            }
        }
        Ok(LabeledGraph {
            vertex_count,
            edges,
            basepoint,
            ambient_rank,
        })
    }

    /// Convenience constructor from `(src, dst, label)` triples.
    pub fn from_triples(
        ambient_rank: u32,
        vertex_count: usize,
        triples: &[(usize, usize, u32)],
        basepoint: Option<usize>,
    ) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(src, dst, label)| Edge { src, dst, label })
            .collect();
        LabeledGraph::new(ambient_rank, vertex_count, edges, basepoint)
    }

    /// The rose: one vertex, one loop per generator, based at its vertex.
    pub fn rose(rank: u32) -> Self {
        let edges = (1..=rank)
            .map(|label| Edge {
                src: 0,
                dst: 0,
                label,
            })
            .collect();
        LabeledGraph {
            vertex_count: 1,
            edges,
            basepoint: Some(0),
            ambient_rank: rank,
        }
    }

    /// Wedge of subdivided loops at vertex 0, one loop spelling each word.
    pub fn bouquet(ambient_rank: u32, words: &[Word]) -> Result<Self> {
        let mut g = LabeledGraph {
            vertex_count: 1,
            edges: Vec::new(),
            basepoint: Some(0),
            ambient_rank,
        };
        for w in words {
            w.check_rank(ambient_rank)?;
            g.attach_path(0, 0, w);
        }
        Ok(g)
    }

    /// Subdivides every edge into a path spelling its image word.
    ///
    /// Vertex `i` of `self` keeps the id `i` in the result. An empty image
    /// word is not allowed because it would collapse an edge.
    pub fn realize(&self, images: &[Word], target_rank: u32) -> Result<Self> {
        assert_eq!(images.len(), self.edges.len(), "one image per edge");
        let mut g = LabeledGraph {
            vertex_count: self.vertex_count,
            edges: Vec::new(),
            basepoint: self.basepoint,
            ambient_rank: target_rank,
        };
        for (e, w) in self.edges.iter().zip(images) {
            w.check_rank(target_rank)?;
            if w.is_empty() {
                return Err(Error::InvalidMorphism(
                    "edge image must be a non-empty word".into(),
                ));
            }
            g.attach_path(e.src, e.dst, w);
        }
        Ok(g)
    }

    /// Adds a path from `from` to `to` spelling `w`, creating interior vertices.
    pub(crate) fn attach_path(&mut self, from: usize, to: usize, w: &Word) {
        let letters = w.letters();
        if letters.is_empty() {
            assert_eq!(from, to, "an empty path must be closed");
            return;
        }
        let mut cur = from;
        for (i, l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                to
            } else {
                self.vertex_count += 1;
                self.vertex_count - 1
            };
            self.push_letter_edge(cur, next, *l);
            cur = next;
        }
    }

    pub(crate) fn push_letter_edge(&mut self, from: usize, to: usize, l: Letter) {
        let e = if l.is_positive() {
            Edge {
                src: from,
                dst: to,
                label: l.generator(),
            }
        } else {
            Edge {
                src: to,
                dst: from,
                label: l.generator(),
            }
        };
        self.edges.push(e);
    }

    pub(crate) fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn ambient_rank(&self) -> u32 {
        self.ambient_rank
    }

    pub fn with_basepoint(&self, basepoint: Option<usize>) -> Result<Self> {
        LabeledGraph::new(
            self.ambient_rank,
            self.vertex_count,
            self.edges.clone(),
            basepoint,
        )
    }

    /// Half-edges at every vertex, sorted by `(label, dir, edge)`.
    pub fn stars(&self) -> Vec<Vec<HalfEdge>> {
        let mut stars = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            stars[e.src].push(HalfEdge {
                label: e.label,
                dir: Dir::Out,
                edge: i,
                far: e.dst,
            });
            stars[e.dst].push(HalfEdge {
                label: e.label,
                dir: Dir::In,
                edge: i,
                far: e.src,
            });
        }
        for s in &mut stars {
            s.sort();
        }
        stars
    }

    /// Number of half-edges at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.src == v) as usize + (e.dst == v) as usize)
            .sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let stars = self.stars();
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for h in &stars[v] {
                    if !seen[h.far] {
                        seen[h.far] = true;
                        comp.push(h.far);
                        stack.push(h.far);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.components().len() == 1
    }

    /// Rank of the fundamental group, `1 − χ`. Rejects disconnected graphs.
    pub fn rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok((1 - self.euler_characteristic()) as usize)
    }

    /// First pair of distinct edges with equal label and direction at a vertex.
    pub fn fold_violation(&self) -> Option<(usize, u32, Dir)> {
        for (v, star) in self.stars().iter().enumerate() {
            for pair in star.windows(2) {
                if pair[0].label == pair[1].label && pair[0].dir == pair[1].dir {
                    return Some((v, pair[0].label, pair[0].dir));
                }
            }
        }
        None
    }

    /// True iff no vertex has two distinct edges with the same label and
    /// direction, i.e. the labelling map to the rose is an immersion.
    pub fn is_immersion(&self) -> bool {
        self.fold_violation().is_none()
    }

    pub(crate) fn require_folded(&self) -> Result<()> {
        match self.fold_violation() {
            Some((vertex, generator, dir)) => Err(Error::NotFolded {
                vertex,
                generator,
                direction: dir.name(),
            }),
            None => Ok(()),
        }
    }

    /// Keeps the vertices flagged in `keep` and every edge between them.
    /// Returns the subgraph and the old → new vertex map.
    pub fn induced(&self, keep: &[bool]) -> (LabeledGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count];
        let mut n = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                map[v] = Some(n);
                n += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    src: map[e.src]?,
                    dst: map[e.dst]?,
                    label: e.label,
                })
            })
            .collect();
        let basepoint = self.basepoint.and_then(|b| map[b]);
        let g = LabeledGraph {
            vertex_count: n,
            edges,
            basepoint,
            ambient_rank: self.ambient_rank,
        };
        (g, map)
    }

    /// The connected component containing `v`, based at (the image of) `v`.
    pub fn component_of(&self, v: usize) -> Result<(LabeledGraph, Vec<Option<usize>>)> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        let comp = self
            .components()
            .into_iter()
            .find(|c| c.binary_search(&v).is_ok())
            .expect("every vertex lies in a component");
        let mut keep = vec![false; self.vertex_count];
        for &u in &comp {
            keep[u] = true;
        }
        let (mut g, map) = self.induced(&keep);
        g.basepoint = map[v];
        Ok((g, map))
    }

    /// Repeatedly deletes vertices of degree ≤ 1 other than `keep`.
    ///
    /// With `keep = None` the result is the cyclic core (the empty graph is
    /// never produced: a tree collapses to a single vertex).
    pub fn pruned(&self, keep: Option<usize>) -> (LabeledGraph, Vec<Option<usize>>) {
        let mut alive = vec![true; self.vertex_count];
        let mut alive_count = self.vertex_count;
        let mut degree: Vec<usize> = (0..self.vertex_count).map(|_| 0).collect();
        let mut edge_alive = vec![true; self.edges.len()];
        for e in &self.edges {
            degree[e.src] += 1;
            degree[e.dst] += 1;
        }
        let stars = self.stars();
        let mut queue: VecDeque<usize> = (0..self.vertex_count)
            .filter(|&v| degree[v] <= 1 && Some(v) != keep)
            .collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] || degree[v] > 1 || Some(v) == keep || alive_count == 1 {
                continue;
            }
            alive[v] = false;
            alive_count -= 1;
            for h in &stars[v] {
                if edge_alive[h.edge] {
                    edge_alive[h.edge] = false;
                    degree[h.far] -= 1;
                    degree[v] -= 1;
                    if alive[h.far] && degree[h.far] <= 1 && Some(h.far) != keep {
                        queue.push_back(h.far);
                    }
                }
            }
        }
        self.induced(&alive)
    }

    /// BFS spanning tree from `root`, exploring half-edges in `(label, dir)`
    /// order. Returns for every reached vertex the tree half-edge used to
    /// enter it, as `(parent, step)`.
    pub fn bfs_tree(&self, root: usize) -> Vec<Option<(usize, PathStep)>> {
        let stars = self.stars();
        let mut parent: Vec<Option<(usize, PathStep)>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for h in &stars[v] {
                if !seen[h.far] {
                    seen[h.far] = true;
                    parent[h.far] = Some((v, (h.edge, h.dir == Dir::Out)));
                    queue.push_back(h.far);
                }
            }
        }
        parent
    }

    /// Tree path from the root of `tree` to `v`.
    pub fn tree_path(tree: &[Option<(usize, PathStep)>], v: usize) -> Vec<PathStep> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some((p, step)) = tree[cur] {
            path.push(step);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Free basis of π₁ at `root` as closed edge paths, one per non-tree edge
    /// in edge order: tree path to the source, the edge, tree path back.
    pub fn basis_paths(&self, root: usize) -> Vec<Vec<PathStep>> {
        let tree = self.bfs_tree(root);
        let mut reached = vec![false; self.vertex_count];
        reached[root] = true;
        let mut tree_edges = vec![false; self.edges.len()];
        for (v, p) in tree.iter().enumerate() {
            if let Some((_, (e, _))) = p {
                tree_edges[*e] = true;
                reached[v] = true;
            }
        }
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree_edges[i] || !reached[e.src] {
                continue;
            }
            let mut path = LabeledGraph::tree_path(&tree, e.src);
            path.push((i, true));
            let back = LabeledGraph::tree_path(&tree, e.dst);
            path.extend(back.iter().rev().map(|&(edge, fwd)| (edge, !fwd)));
            out.push(path);
        }
        out
    }

    /// The word read along an edge path.
    pub fn path_word(&self, path: &[PathStep]) -> Word {
        path.iter()
            .map(|&(e, fwd)| Letter::new(self.edges[e].label, fwd))
            .collect()
    }

    /// Follows `w` from `start`; `None` as soon as a letter has no edge.
    /// On unfolded graphs the first matching half-edge is taken.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        let stars = self.stars();
        let mut cur = start;
        for l in w.letters() {
            let dir = if l.is_positive() { Dir::Out } else { Dir::In };
            cur = stars[cur]
                .iter()
                .find(|h| h.label == l.generator() && h.dir == dir)?
                .far;
        }
        Some(cur)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientMismatch {
                left: self.ambient_rank,
                right: other.ambient_rank,
            });
        }
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            src: e.src + shift,
            dst: e.dst + shift,
            label: e.label,
        }));
        Ok(LabeledGraph {
            vertex_count: self.vertex_count + other.vertex_count,
            edges,
            basepoint: self.basepoint,
            ambient_rank: self.ambient_rank,
        })
    }
}
