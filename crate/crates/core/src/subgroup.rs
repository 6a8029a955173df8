//! Finitely generated subgroups of a free group as based core graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, fold, Dir, LabeledGraph};
use crate::word::Word;

/// Index of a subgroup in the ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// A subgroup `H ≤ F_k` held as its Stallings graph: folded, connected,
/// based, and with no vertex of degree ≤ 1 except possibly the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    core: LabeledGraph,
}

impl SubgroupGraph {
    /// The subgroup generated by `gens`.
    pub fn from_words(gens: &[Word], ambient_rank: u32) -> Result<Self> {
        let bouquet = LabeledGraph::bouquet(ambient_rank, gens)?;
        SubgroupGraph::from_graph(&bouquet)
    }

    /// π₁ of the component of `g` containing its basepoint: folds, restricts
    /// to that component and prunes hanging trees.
    pub fn from_graph(g: &LabeledGraph) -> Result<Self> {
        let base = g.basepoint().ok_or(Error::MissingBasepoint)?;
        let (component, _) = g.component_of(base)?;
        let folded = fold(&component).graph;
        let base = folded.basepoint().expect("folding keeps the basepoint");
        let (core, _) = folded.pruned(Some(base));
        Ok(SubgroupGraph { core })
    }

    /// The whole free group: the rose.
    pub fn full(ambient_rank: u32) -> Self {
        SubgroupGraph {
            core: LabeledGraph::rose(ambient_rank),
        }
    }

    pub fn trivial(ambient_rank: u32) -> Self {
        SubgroupGraph {
            core: LabeledGraph::new(ambient_rank, 1, vec![], Some(0)).expect("valid"),
        }
    }

    pub fn core(&self) -> &LabeledGraph {
        &self.core
    }

    pub fn ambient_rank(&self) -> u32 {
        self.core.ambient_rank()
    }

    pub fn basepoint(&self) -> usize {
        self.core.basepoint().expect("subgroup graphs are based")
    }

    pub fn rank(&self) -> usize {
        self.core.rank().expect("core graphs are connected")
    }

    /// Membership by tracing `w` from the basepoint.
    pub fn contains(&self, w: &Word) -> bool {
        if w.max_generator() > self.ambient_rank() {
            return false;
        }
        self.core.trace(self.basepoint(), w) == Some(self.basepoint())
    }

    /// Finite (and equal to the vertex count) iff every vertex has one
    /// outgoing and one incoming edge of every label.
    pub fn index(&self) -> Index {
        let k = self.ambient_rank() as usize;
        let full = self.core.stars().iter().all(|star| {
            star.len() == 2 * k
                && (1..=k as u32).all(|g| {
                    star.iter().any(|h| h.label == g && h.dir == Dir::Out)
                        && star.iter().any(|h| h.label == g && h.dir == Dir::In)
                })
        });
        if full {
            Index::Finite(self.core.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// Free basis read off a breadth-first spanning tree at the basepoint.
    pub fn basis(&self) -> Vec<Word> {
        self.core
            .basis_paths(self.basepoint())
            .iter()
            .map(|p| self.core.path_word(p))
            .collect()
    }

    /// The subgroup of loops at vertex `v`, i.e. `g⁻¹Hg` where `g` labels a
    /// path from the basepoint to `v`.
    pub fn rebase(&self, v: usize) -> Result<Self> {
        let g = self.core.with_basepoint(Some(v))?;
        let (core, _) = g.pruned(Some(v));
        Ok(SubgroupGraph { core })
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: &Word) -> Result<Self> {
        g.check_rank(self.ambient_rank())?;
        let mut graph = self.core.clone();
        let mut cur = self.basepoint();
        let stars = graph.stars();
        let mut on_graph = true;
        for l in g.letters() {
            if on_graph {
                let dir = if l.is_positive() { Dir::Out } else { Dir::In };
                if let Some(h) = stars[cur]
                    .iter()
                    .find(|h| h.label == l.generator() && h.dir == dir)
                {
                    cur = h.far;
                    continue;
                }
                on_graph = false;
            }
            let next = graph.add_vertex();
            graph.push_letter_edge(cur, next, *l);
            cur = next;
        }
        SubgroupGraph::from_graph(&graph.with_basepoint(Some(cur))?)
    }

    /// Based canonical form: equal iff the subgroups are equal.
    pub fn canonical_form(&self) -> Vec<u8> {
        canonical_form(&self.core, true).expect("core graphs are folded and connected")
    }

    /// Unbased canonical form of the cyclic core: equal iff the subgroups are
    /// conjugate in the ambient free group.
    pub fn conjugacy_form(&self) -> Vec<u8> {
        let (cyclic, _) = self.core.pruned(None);
        canonical_form(&cyclic, false).expect("core graphs are folded and connected")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Alphabet::new(&["x", "y"]).parse(s).unwrap()
    }

    fn b244() -> SubgroupGraph {
        SubgroupGraph::from_words(&[w("x^2"), w("y^2"), w("x^-1.y")], 2).unwrap()
    }

    #[test]
    fn example_244_subgroup() {
        let h = b244();
        assert_eq!(h.core().vertex_count(), 2);
        assert_eq!(h.core().edge_count(), 4);
        assert_eq!(h.rank(), 3);
        assert_eq!(h.index(), Index::Finite(2));
        assert!(h.contains(&w("x^2")));
        assert!(!h.contains(&w("x")));
        assert!(h.contains(&Word::empty()));
    }

    #[test]
    fn cyclic_subgroups() {
        let x = SubgroupGraph::from_words(&[w("x")], 2).unwrap();
        assert_eq!(x.rank(), 1);
        assert_eq!(x.core().vertex_count(), 1);
        assert_eq!(x.index(), Index::Infinite);
        let x2 = SubgroupGraph::from_words(&[w("x^2")], 2).unwrap();
        // ⟨x²⟩ up to length 4 is {1, x^±2, x^±4}
        assert!(x2.contains(&w("x^4")));
        assert!(x2.contains(&w("x^-2")));
        assert!(!x2.contains(&w("x^3")));
        assert!(!x2.contains(&w("x.y")));
    }

    #[test]
    fn inverse_generators_collapse() {
        let h = SubgroupGraph::from_words(&[w("x.y.x^-1.y^-1"), w("y.x.y^-1.x^-1")], 2).unwrap();
        assert_eq!(h.rank(), 1);
    }

    #[test]
    fn out_of_range_generator_rejected() {
        assert!(SubgroupGraph::from_words(&[Word::from_signed(&[3])], 2).is_err());
    }

    #[test]
    fn full_rose_basis_and_index() {
        let f = SubgroupGraph::full(2);
        assert_eq!(f.index(), Index::Finite(1));
        assert_eq!(f.basis(), vec![w("x"), w("y")]);
        let loop_x = SubgroupGraph::from_words(&[w("x")], 2).unwrap();
        assert_eq!(loop_x.basis(), vec![w("x")]);
    }

    #[test]
    fn basis_words_are_members_and_count_equals_rank() {
        let h = b244();
        let basis = h.basis();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|b| h.contains(b)));
    }

    #[test]
    fn nielsen_schreier_count_for_finite_index() {
        let h = b244();
        if let Index::Finite(i) = h.index() {
            assert_eq!(h.rank(), i * (2 - 1) + 1);
        }
    }

    #[test]
    fn hanging_basepoint_is_kept() {
        // y x y⁻¹ : the basepoint hangs off the x loop by a y edge
        let h = SubgroupGraph::from_words(&[w("y.x.y^-1")], 2).unwrap();
        assert_eq!(h.core().vertex_count(), 2);
        assert!(h.contains(&w("y.x^3.y^-1")));
        assert!(!h.contains(&w("x")));
        assert_eq!(
            h.conjugacy_form(),
            SubgroupGraph::from_words(&[w("x")], 2)
                .unwrap()
                .conjugacy_form()
        );
    }

    #[test]
    fn conjugate_and_rebase_agree() {
        let h = b244();
        // the non-base vertex is reached by x, so loops there form x⁻¹Hx
        let other = 1 - h.basepoint();
        let rebased = h.rebase(other).unwrap();
        let conj = h.conjugate(&w("x")).unwrap();
        assert_eq!(rebased.canonical_form(), conj.canonical_form());
        for b in h.basis() {
            assert!(conj.contains(&b.conjugate_by(&w("x"))));
        }
    }

    #[test]
    fn conjugating_off_the_graph() {
        let h = SubgroupGraph::from_words(&[w("x")], 2).unwrap();
        let c = h.conjugate(&w("y")).unwrap();
        assert!(c.contains(&w("y^-1.x.y")));
        assert!(!c.contains(&w("x")));
        assert_eq!(c.conjugacy_form(), h.conjugacy_form());
    }
}
