use artinfold::fiber::{fiber_product, ComponentKind};
use artinfold::graph::{canonical_form, check_cover};
use artinfold::splitting::{split, ArtinParams, B_MINUS, B_PLUS};
use artinfold::subgroup::{Index, SubgroupGraph};
use artinfold::word::Alphabet;

#[test]
fn edge_graphs_differ_only_in_basepoint() {
    let s = split(&ArtinParams::new(4, 6).unwrap()).unwrap();
    let es = s.edge_space().unwrap();
    let minus = es.subgroup_at(B_MINUS).unwrap();
    let plus = es.subgroup_at(B_PLUS).unwrap();
    assert_eq!(
        canonical_form(minus.core(), false).unwrap(),
        canonical_form(plus.core(), false).unwrap()
    );
    assert_ne!(minus.canonical_form(), plus.canonical_form());
}

#[test]
fn one_odd_edge_space() {
    let s = split(&ArtinParams::new(5, 4).unwrap()).unwrap();
    let es = s.edge_space().unwrap();
    let cover = check_cover(&es.to_xb);
    assert!(cover.is_cover);
    assert_eq!(cover.degree, Some(2));
    assert!(es.folded().is_immersion());
    assert_eq!(es.folded().rank().unwrap(), 5);
    assert_eq!(s.ranks().unwrap(), vec![2, 3, 5]);
}

#[test]
fn example_244_index_and_square() {
    let a = Alphabet::new(&["x", "y"]);
    let gens: Vec<_> = ["x^2", "y^2", "x^-1.y"]
        .iter()
        .map(|w| a.parse(w).unwrap())
        .collect();
    let b = SubgroupGraph::from_words(&gens, 2).unwrap();
    assert_eq!(b.index(), Index::Finite(2));
    let comps = fiber_product(&b, &b).unwrap();
    let non_trivial: Vec<_> = comps
        .iter()
        .filter(|c| c.kind != ComponentKind::Trivial)
        .collect();
    assert_eq!(non_trivial.len(), 2);
    for c in non_trivial {
        assert_eq!(c.subgroup.as_ref().unwrap().rank(), 3);
    }
}
