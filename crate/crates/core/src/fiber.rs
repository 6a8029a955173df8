//! Fiber products of subgroup graphs over the rose, and the classification of
//! intersections `H ∩ g⁻¹Hg` they produce.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, Edge, LabeledGraph};
use crate::subgroup::SubgroupGraph;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentKind {
    /// No edges.
    Trivial,
    /// The copy of the factor sitting on the diagonal `{(v, v)}`.
    Diagonal,
    Proper,
}

#[derive(Debug, Clone)]
pub struct FiberComponent {
    /// The component, based at `anchor`.
    pub component: LabeledGraph,
    /// `(v1, v2)`: the basepoint pair when it lies here, else the smallest pair.
    pub anchor: (usize, usize),
    /// Vertex `i` of `component` is the pair `pairs[i]`.
    pub pairs: Vec<(usize, usize)>,
    pub kind: ComponentKind,
    /// π₁ at the anchor; `None` for trivial components.
    pub subgroup: Option<SubgroupGraph>,
}

/// The whole product graph. Vertex `(v1, v2)` has id `v1 * n2 + v2`.
pub fn product_graph(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<LabeledGraph> {
    if g1.ambient_rank() != g2.ambient_rank() {
        return Err(Error::AmbientMismatch {
            left: g1.ambient_rank(),
            right: g2.ambient_rank(),
        });
    }
    let n2 = g2.vertex_count();
    let mut by_label: BTreeMap<u32, Vec<&Edge>> = BTreeMap::new();
    for e in g2.edges() {
        by_label.entry(e.label).or_default().push(e);
    }
    let mut edges = Vec::new();
    for e1 in g1.edges() {
        for e2 in by_label.get(&e1.label).into_iter().flatten() {
            edges.push(Edge {
                src: e1.src * n2 + e2.src,
                dst: e1.dst * n2 + e2.dst,
                label: e1.label,
            });
        }
    }
    let base = match (g1.basepoint(), g2.basepoint()) {
        (Some(a), Some(b)) => Some(a * n2 + b),
        _ => None,
    };
    LabeledGraph::new(g1.ambient_rank(), g1.vertex_count() * n2, edges, base)
}

/// Connected components of `h1.core ⊗ h2.core`, ordered by
/// `(vertex count, edge count, unbased canonical form)`.
pub fn fiber_product(h1: &SubgroupGraph, h2: &SubgroupGraph) -> Result<Vec<FiberComponent>> {
    let (g1, g2) = (h1.core(), h2.core());
    let product = product_graph(g1, g2)?;
    let n2 = g2.vertex_count();
    let pair = |id: usize| (id / n2, id % n2);
    let base_id = h1.basepoint() * n2 + h2.basepoint();
    let same_shape = g1.vertex_count() == g2.vertex_count() && g1.edge_count() == g2.edge_count();

    let mut keyed = Vec::new();
    for comp in product.components() {
        let anchor_id = if comp.binary_search(&base_id).is_ok() {
            base_id
        } else {
            comp[0]
        };
        let mut keep = vec![false; product.vertex_count()];
        for &v in &comp {
            keep[v] = true;
        }
        let (mut graph, map) = product.induced(&keep);
        graph = graph.with_basepoint(map[anchor_id])?;
        let pairs: Vec<(usize, usize)> = comp.iter().map(|&id| pair(id)).collect();

        let kind = if graph.edge_count() == 0 {
            ComponentKind::Trivial
        } else if same_shape
            && pairs.iter().all(|&(a, b)| a == b)
            && graph.vertex_count() == g1.vertex_count()
            && graph.edge_count() == g1.edge_count()
        {
            ComponentKind::Diagonal
        } else {
            ComponentKind::Proper
        };
        let subgroup = match kind {
            ComponentKind::Trivial => None,
            _ => Some(SubgroupGraph::from_graph(&graph)?),
        };
        let key = (
            graph.vertex_count(),
            graph.edge_count(),
            canonical_form(&graph, false)?,
        );
        keyed.push((
            key,
            FiberComponent {
                component: graph,
                anchor: pair(anchor_id),
                pairs,
                kind,
                subgroup,
            },
        ));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.anchor.cmp(&b.1.anchor)));
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// Checks that every basis word of the component subgroup lies in
/// `h1^{g1} ∩ h2^{g2}`, the loops at the anchor coordinates.
pub fn component_is_consistent(
    h1: &SubgroupGraph,
    h2: &SubgroupGraph,
    c: &FiberComponent,
) -> Result<bool> {
    let Some(sub) = &c.subgroup else {
        return Ok(true);
    };
    let left = h1.rebase(c.anchor.0)?;
    let right = h2.rebase(c.anchor.1)?;
    Ok(sub
        .basis()
        .iter()
        .all(|w| left.contains(w) && right.contains(w)))
}

#[derive(Debug, Clone)]
pub struct IntersectionEntry {
    /// Unbased canonical form of the cyclic core; equal iff conjugate.
    pub conjugacy_form: Vec<u8>,
    pub rank: usize,
    /// Basis of a canonical representative of the conjugacy class.
    pub basis: Vec<Word>,
    /// Number of fiber-product components in this class.
    pub multiplicity: usize,
    /// Anchor pairs of those components, so the literal subgroups
    /// `H^{g1} ∩ H^{g2}` can be recovered.
    pub anchors: Vec<(usize, usize)>,
    /// Every component basis word was found in both rebased factors.
    pub verified: bool,
}

#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub source: SubgroupGraph,
    pub entries: Vec<IntersectionEntry>,
}

impl IntersectionReport {
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# {} conjugacy classes of H ∩ g⁻¹Hg (non-diagonal, non-trivial); mult counts fiber-product components",
            self.entries.len()
        )
        .unwrap();
        for e in &self.entries {
            let basis: Vec<String> = e.basis.iter().map(|w| alphabet.format(w)).collect();
            writeln!(
                out,
                "isect rank={} mult={} basis={}",
                e.rank,
                e.multiplicity,
                basis.join(";")
            )
            .unwrap();
        }
        out
    }

    pub fn forms(&self) -> Vec<&[u8]> {
        self.entries
            .iter()
            .map(|e| e.conjugacy_form.as_slice())
            .collect()
    }
}

/// Canonical representative of the conjugacy class of `h`: the cyclic core
/// based at the vertex giving the smallest based encoding.
pub fn conjugacy_representative(h: &SubgroupGraph) -> Result<SubgroupGraph> {
    let (cyclic, _) = h.core().pruned(None);
    let best = (0..cyclic.vertex_count())
        .map(|v| {
            let g = cyclic.with_basepoint(Some(v))?;
            Ok((canonical_form(&g, true)?, v))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("cyclic core has a vertex")
        .1;
    SubgroupGraph::from_graph(&cyclic.with_basepoint(Some(best))?)
}

/// Classifies the intersections `H ∩ g⁻¹Hg` up to conjugacy from the
/// non-diagonal components of `H ⊗ H` with non-trivial π₁.
pub fn conjugate_intersections(h: &SubgroupGraph) -> Result<IntersectionReport> {
    let components = fiber_product(h, h)?;
    let mut classes: BTreeMap<Vec<u8>, IntersectionEntry> = BTreeMap::new();
    let mut order = Vec::new();
    for c in &components {
        if c.kind != ComponentKind::Proper {
            continue;
        }
        let sub = c
            .subgroup
            .as_ref()
            .expect("proper components carry a subgroup");
        if sub.rank() == 0 {
            continue;
        }
        let verified = component_is_consistent(h, h, c)?;
        let form = sub.conjugacy_form();
        match classes.get_mut(&form) {
            Some(e) => {
                e.multiplicity += 1;
                e.anchors.push(c.anchor);
                e.verified &= verified;
            }
            None => {
                let rep = conjugacy_representative(sub)?;
                order.push(form.clone());
                classes.insert(
                    form.clone(),
                    IntersectionEntry {
                        conjugacy_form: form,
                        rank: sub.rank(),
                        basis: rep.basis(),
                        multiplicity: 1,
                        anchors: vec![c.anchor],
                        verified,
                    },
                );
            }
        }
    }
    let entries = order
        .into_iter()
        .map(|f| classes.remove(&f).expect("inserted above"))
        .collect();
    Ok(IntersectionReport {
        source: h.clone(),
        entries,
    })
}

const PALETTE: [&str; 8] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
];

/// DOT rendering of `h1 ⊗ h2` with one colour per connected component.
pub fn fiber_product_dot(h1: &SubgroupGraph, h2: &SubgroupGraph, name: &str) -> Result<String> {
    let product = product_graph(h1.core(), h2.core())?;
    let n2 = h2.core().vertex_count();
    let mut colour = vec![0usize; product.vertex_count()];
    for (i, comp) in product.components().iter().enumerate() {
        for &v in comp {
            colour[v] = i;
        }
    }
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    for v in 0..product.vertex_count() {
        let shape = if product.basepoint() == Some(v) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "  v{v} [shape={shape}, label=\"({},{})\", color={}];",
            v / n2,
            v % n2,
            PALETTE[colour[v] % PALETTE.len()]
        )
        .unwrap();
    }
    for e in product.edges() {
        writeln!(
            out,
            "  v{} -> v{} [label=\"g{}\", color={}];",
            e.src,
            e.dst,
            e.label,
            PALETTE[colour[e.src] % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
