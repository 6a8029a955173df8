use super::{Dir, LabeledGraph};
use crate::error::{Error, Result};

/// A combinatorial, label-preserving map sending vertices to vertices and
/// edges to single edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    source: LabeledGraph,
    target: LabeledGraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

impl GraphMorphism {
    pub fn new(
        source: LabeledGraph,
        target: LabeledGraph,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() || edge_map.len() != source.edge_count() {
            return Err(Error::InvalidMorphism("maps must be total".into()));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::InvalidMorphism(format!(
                "vertex image {v} out of range"
            )));
        }
        for (i, (e, &img)) in source.edges().iter().zip(&edge_map).enumerate() {
            let t = target
                .edges()
                .get(img)
                .ok_or_else(|| Error::InvalidMorphism(format!("edge image {img} out of range")))?;
            if t.label != e.label {
                return Err(Error::InvalidMorphism(format!(
                    "edge {i} has label g{} but its image has label g{}",
                    e.label, t.label
                )));
            }
            if vertex_map[e.src] != t.src || vertex_map[e.dst] != t.dst {
                return Err(Error::InvalidMorphism(format!(
                    "edge {i} endpoints do not map to the endpoints of its image"
                )));
            }
        }
        Ok(GraphMorphism {
            source,
            target,
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(g: &LabeledGraph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    /// The labelling map of `g` onto the rose of its ambient rank.
    pub fn to_rose(g: &LabeledGraph) -> Self {
        let rose = LabeledGraph::rose(g.ambient_rank());
        let edge_map = g.edges().iter().map(|e| e.label as usize - 1).collect();
        GraphMorphism {
            vertex_map: vec![0; g.vertex_count()],
            source: g.clone(),
            target: rose,
            edge_map,
        }
    }

    pub fn source(&self) -> &LabeledGraph {
        &self.source
    }

    pub fn target(&self) -> &LabeledGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverReport {
    pub is_cover: bool,
    pub degree: Option<usize>,
}

/// Decides whether `m` is a covering map.
///
/// Requires, at every source vertex, a bijection between its half-edges and
/// the half-edges of its image vertex, plus vertex fibres of one constant
/// size, which is reported as the degree.
pub fn check_cover(m: &GraphMorphism) -> CoverReport {
    let not_cover = CoverReport {
        is_cover: false,
        degree: None,
    };
    let src_stars = m.source.stars();
    let tgt_stars = m.target.stars();
    for (v, star) in src_stars.iter().enumerate() {
        let mut images: Vec<(usize, Dir)> =
            star.iter().map(|h| (m.edge_map[h.edge], h.dir)).collect();
        let mut expected: Vec<(usize, Dir)> = tgt_stars[m.vertex_map[v]]
            .iter()
            .map(|h| (h.edge, h.dir))
            .collect();
        images.sort();
        expected.sort();
        if images != expected {
            return not_cover;
        }
    }
    let mut fibre = vec![0usize; m.target.vertex_count()];
    for &w in &m.vertex_map {
        fibre[w] += 1;
    }
    let degree = fibre[0];
    if m.target.vertex_count() == 0 || fibre.iter().any(|&f| f != degree) || degree == 0 {
        return not_cover;
    }
    CoverReport {
        is_cover: true,
        degree: Some(degree),
    }
}
