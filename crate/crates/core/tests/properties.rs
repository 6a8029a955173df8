use std::collections::BTreeMap;

use artinfold::fiber::fiber_product;
use artinfold::graph::{
    canonical_form, export_graph, fold, fold_with, import_text, ExportFormat, LabeledGraph,
};
use artinfold::presentation::{smith_normal_form, IntegerMatrix, Presentation};
use artinfold::subgroup::SubgroupGraph;
use artinfold::word::Word;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = i32> {
    prop_oneof![Just(1), Just(-1), Just(2), Just(-2)]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 1..=max).prop_map(|v| Word::from_signed(&v))
}

fn gens() -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(5), 1..=3)
}

/// Connected random graphs over two generators, based at 0.
fn graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=7).prop_flat_map(|n| {
        let tree = prop::collection::vec((any::<prop::sample::Index>(), 1u32..=2), n - 1);
        let extra = prop::collection::vec((0..n, 0..n, 1u32..=2), 0..=7);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut triples: Vec<(usize, usize, u32)> = tree
                .iter()
                .enumerate()
                .map(|(i, (p, l))| (p.index(i + 1), i + 1, *l))
                .collect();
            triples.extend(extra);
            LabeledGraph::from_triples(2, n, &triples, Some(0)).unwrap()
        })
    })
}

fn det_oracle(m: &[Vec<i64>]) -> i128 {
    if m.len() == 1 {
        return i128::from(m[0][0]);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * i128::from(m[0][j]) * det_oracle(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn word_inverse_cancels(w in word(12), u in word(12)) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        let sums: Vec<i64> = w.exponent_sums(2).iter().zip(u.exponent_sums(2)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(w.concat(&u).exponent_sums(2), sums);
    }

    #[test]
    fn folding_is_idempotent(g in graph()) {
        let once = fold(&g);
        let twice = fold(&once.graph);
        prop_assert!(twice.trace.is_empty());
        prop_assert!(once.graph.is_immersion());
        prop_assert_eq!(canonical_form(&once.graph, true).unwrap(), canonical_form(&twice.graph, true).unwrap());
    }

    #[test]
    fn folding_is_confluent(g in graph(), picks in prop::collection::vec(any::<prop::sample::Index>(), 64)) {
        let mut it = picks.into_iter().cycle();
        let other = fold_with(&g, |c| it.next().unwrap().index(c.len()));
        prop_assert_eq!(
            canonical_form(&fold(&g).graph, true).unwrap(),
            canonical_form(&other.graph, true).unwrap()
        );
    }

    #[test]
    fn subgroup_contains_generators(gs in gens()) {
        let h = SubgroupGraph::from_words(&gs, 2).unwrap();
        for g in &gs {
            prop_assert!(h.contains(g));
            prop_assert!(h.contains(&g.inverse()));
        }
        let g = h.core();
        prop_assert_eq!(h.rank() as i64, g.edge_count() as i64 - g.vertex_count() as i64 + 1);
        let rebuilt = SubgroupGraph::from_words(&h.basis(), 2).unwrap();
        prop_assert_eq!(rebuilt.canonical_form(), h.canonical_form());
        prop_assert_eq!(h.basis().len(), h.rank());
    }

    #[test]
    fn conjugation_moves_membership(gs in gens(), c in word(4)) {
        let h = SubgroupGraph::from_words(&gs, 2).unwrap();
        let hc = h.conjugate(&c).unwrap();
        for g in &gs {
            prop_assert!(hc.contains(&g.conjugate_by(&c)));
        }
        prop_assert_eq!(hc.conjugacy_form(), h.conjugacy_form());
    }

    #[test]
    fn fiber_product_is_symmetric(a in gens(), b in gens()) {
        let (h1, h2) = (SubgroupGraph::from_words(&a, 2).unwrap(), SubgroupGraph::from_words(&b, 2).unwrap());
        let shape = |cs: Vec<artinfold::fiber::FiberComponent>| {
            let mut m = BTreeMap::new();
            for c in cs {
                *m.entry((c.component.vertex_count(), c.component.edge_count(), canonical_form(&c.component, false).unwrap())).or_insert(0) += 1;
            }
            m
        };
        prop_assert_eq!(shape(fiber_product(&h1, &h2).unwrap()), shape(fiber_product(&h2, &h1).unwrap()));
    }

    #[test]
    fn graph_text_round_trip(g in graph()) {
        let (name, back) = import_text(&export_graph(&g, "g", ExportFormat::Text)).unwrap();
        prop_assert_eq!(name, "g");
        prop_assert_eq!(back, g);
    }

    #[test]
    fn smith_form_invariants(rows in 1usize..=5, cols in 1usize..=5, seed in prop::collection::vec(-6i64..=6, 25)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * 5..r * 5 + cols].to_vec()).collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&m).unwrap());
        for d in &snf.diagonal {
            prop_assert!(d.is_positive());
        }
        for w in snf.diagonal.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        if rows == cols {
            let det = det_oracle(&m);
            let product: BigInt = snf.diagonal.iter().product();
            if snf.rank() == rows {
                prop_assert_eq!(product, BigInt::from(det.abs()));
            } else {
                prop_assert!(det.is_zero());
            }
        }
    }

    #[test]
    fn presentation_text_round_trip(rels in prop::collection::vec(word(8), 0..4)) {
        let p = Presentation::new(&["x", "y"], rels).unwrap();
        prop_assert_eq!(Presentation::from_text(&p.to_text()).unwrap(), p);
    }
}
