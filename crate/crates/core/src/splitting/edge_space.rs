//! The edge space `X_C` of the star presentation, its covering map onto
//! `X_B`, and its folded image `X̄_C` over `X_A`.

use crate::error::{Error, Result};
use crate::graph::{check_cover, fold, Folding, GraphMorphism, LabeledGraph};
use crate::subgroup::SubgroupGraph;
use crate::word::{Alphabet, Word};

use super::{ArtinParams, Parity};

/// The vertex of `X_C` before the midpoint of `b`.
pub const B_MINUS: usize = 0;
/// The vertex of `X_C` after the midpoint of `b`.
pub const B_PLUS: usize = 1;

const X: u32 = 1;
const Y: u32 = 2;

/// A 2-cell of the star presentation; each contributes one circle of `X_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// `r_M(b, x)`
    X,
    /// `r_N(b, y)`
    Y,
    /// `b x⁻¹ y b⁻¹ = y x⁻¹`
    Commutation,
}

impl Cell {
    /// Name of the corresponding generator of `π₁(X_B)`.
    pub fn circle_name(self) -> &'static str {
        match self {
            Cell::X => "sx",
            Cell::Y => "sy",
            Cell::Commutation => "sz",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EdgeSpaceData {
    pub cells: Vec<Cell>,
    /// Vertices `b₋ = 0`, `b₊ = 1` plus no others; edge labels are cells
    /// (1-based, in `cells` order). Based at `b₋`.
    pub x_c: LabeledGraph,
    pub to_xb: GraphMorphism,
    /// Image word over `{x, y}` of each `X_C` edge.
    pub to_xa_words: Vec<Word>,
    /// Folding of the realization of `to_xa_words`; `folding.graph` is `X̄_C`.
    pub folding: Folding,
}

impl EdgeSpaceData {
    pub fn folded(&self) -> &LabeledGraph {
        &self.folding.graph
    }

    pub fn is_connected(&self) -> bool {
        self.x_c.is_connected()
    }

    /// `π₁(X̄_C)` at the image of `v ∈ {b₋, b₊}`, as a subgroup of `⟨x, y⟩`.
    pub fn subgroup_at(&self, v: usize) -> Result<SubgroupGraph> {
        let g = self
            .folded()
            .with_basepoint(Some(self.folding.vertex_map[v]))?;
        SubgroupGraph::from_graph(&g)
    }

    /// Rank of `X_C` (of each component when disconnected).
    pub fn component_ranks(&self) -> Vec<usize> {
        self.x_c
            .components()
            .iter()
            .map(|c| {
                let (g, _) = self.x_c.component_of(c[0]).expect("vertex exists");
                g.rank().expect("components are connected")
            })
            .collect()
    }

    /// The image in `⟨x, y⟩` of a path in `X_C`.
    pub fn path_image(&self, path: &[(usize, bool)]) -> Word {
        path.iter()
            .map(|&(e, fwd)| {
                if fwd {
                    self.to_xa_words[e].clone()
                } else {
                    self.to_xa_words[e].inverse()
                }
            })
            .fold(Word::empty(), |acc, w| acc.concat(&w))
    }

    /// A free basis of `π₁(X_C, b₋)`, as pairs (word in the circles of `X_B`,
    /// image word in `⟨x, y⟩`).
    pub fn c_basis(&self) -> Vec<(Word, Word)> {
        self.x_c
            .basis_paths(B_MINUS)
            .iter()
            .map(|p| (self.x_c.path_word(p), self.path_image(p)))
            .collect()
    }

    /// Word of the loop of `cell` at `v`; only exists for even cells and the
    /// commutation cell.
    pub fn loop_word(&self, cell: Cell, v: usize) -> Option<&Word> {
        let label = self.cells.iter().position(|&c| c == cell)? as u32 + 1;
        self.x_c
            .edges()
            .iter()
            .position(|e| e.label == label && e.src == v && e.dst == v)
            .map(|i| &self.to_xa_words[i])
    }

    pub fn circle_alphabet(&self) -> Alphabet {
        let names: Vec<&str> = self.cells.iter().map(|c| c.circle_name()).collect();
        Alphabet::new(&names)
    }
}

/// Edges `(src, dst, word)` of `X_C` coming from one relator cell.
fn cell_edges(cell: Cell, big: u32) -> Vec<(usize, usize, Word)> {
    let g = match cell {
        Cell::X => X,
        Cell::Y => Y,
        Cell::Commutation => {
            return vec![
                (B_MINUS, B_MINUS, Word::from_signed(&[2, -1])),
                (B_PLUS, B_PLUS, Word::from_signed(&[-1, 2])),
            ]
        }
    };
    let h = i64::from(big / 2);
    if big % 2 == 0 {
        // cylinder: one circle on each side of the centre
        vec![
            (B_MINUS, B_MINUS, Word::power_of(g, h)),
            (B_PLUS, B_PLUS, Word::power_of(g, h)),
        ]
    } else {
        // Möbius strip: one circle crossing the centre twice
        vec![
            (B_MINUS, B_PLUS, Word::power_of(g, h + 1)),
            (B_PLUS, B_MINUS, Word::power_of(g, h)),
        ]
    }
}

/// Builds `X_C` from the cell templates and checks it: double cover of `X_B`,
/// expected rank, and a folding onto `X_A` that loses no rank.
pub fn build_edge_space(params: &ArtinParams) -> Result<EdgeSpaceData> {
    let mut cells = vec![Cell::X, Cell::Y];
    if !params.is_infty() {
        cells.push(Cell::Commutation);
    }
    let mut triples = Vec::new();
    let mut words = Vec::new();
    for (i, &cell) in cells.iter().enumerate() {
        let big = match cell {
            Cell::X => params.big_m(),
            Cell::Y => params.big_n(),
            Cell::Commutation => 0,
        };
        for (s, d, w) in cell_edges(cell, big) {
            triples.push((s, d, i as u32 + 1));
            words.push(w);
        }
    }
    let k = cells.len() as u32;
    let x_c = LabeledGraph::from_triples(k, 2, &triples, Some(B_MINUS))?;
    let to_xb = GraphMorphism::to_rose(&x_c);
    let folding = fold(&x_c.realize(&words, 2)?);
    let data = EdgeSpaceData {
        cells,
        x_c,
        to_xb,
        to_xa_words: words,
        folding,
    };

    let cover = check_cover(&data.to_xb);
    if cover.degree != Some(2) {
        return Err(Error::Template(format!(
            "X_C -> X_B is not a double cover ({cover:?})"
        )));
    }
    let ranks = data.component_ranks();
    let expected = match (params.parity() == Parity::BothEven, params.is_infty()) {
        (false, false) => vec![5],
        (false, true) => vec![3],
        (true, false) => vec![3, 3],
        (true, true) => vec![2, 2],
    };
    if ranks != expected {
        return Err(Error::Template(format!(
            "X_C component ranks {ranks:?}, expected {expected:?}"
        )));
    }
    if !data.folding.is_homotopy_equivalence() || !data.folded().is_immersion() {
        return Err(Error::Template("folding X_C onto X_A lost rank".into()));
    }
    Ok(data)
}
