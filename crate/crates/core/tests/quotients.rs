use artinfold::rf::{
    check_quotient_conditions, ping_pong_check, quotient_for, triangle_rep, RfStatus,
};
use artinfold::splitting::{ArtinParams, Parity};
use artinfold::word::Word;

#[test]
fn ping_pong_has_no_failures() {
    for (big_m, big_n, p) in [(5, 4, 6), (5, 4, 7), (7, 4, 6), (5, 6, 6)] {
        let params = ArtinParams::new(big_m, big_n).unwrap();
        let rep = triangle_rep(quotient_for(&params, p).unwrap(), 1e-9).unwrap();
        let r = ping_pong_check(&rep, params.m(), p, 4).unwrap();
        let expected: usize = (1..=4u32).map(|k| 2 * (p as usize - 1).pow(k)).sum();
        assert_eq!(r.words_tested, expected);
        assert!(
            r.passed(),
            "({big_m},{big_n},{p}): {:?}",
            r.failures.first()
        );
        assert!(r.min_distance > 1e-6);
    }
}

#[test]
fn relator_residuals_on_the_grid() {
    for big_m in 4..=9 {
        for big_n in 4..=9 {
            let params = ArtinParams::new(big_m, big_n).unwrap();
            let p = if params.parity() == Parity::BothEven {
                7
            } else {
                6
            };
            // (2,2,7) is spherical, so Art_{2,4,4} has no hyperbolic quotient
            let Ok(q) = quotient_for(&params, p) else {
                assert_eq!((big_m, big_n), (4, 4));
                continue;
            };
            let rep = triangle_rep(q, 1e-9).unwrap();
            let rels = [
                Word::power_of(1, i64::from(q.x_order)),
                Word::power_of(2, i64::from(q.y_order)),
                Word::from_signed(&[-1, 2]).pow(i64::from(q.z_order)),
            ];
            for r in &rels {
                assert!(rep.distance(r).unwrap() < 1e-9, "({big_m},{big_n}) {r}");
            }
        }
    }
}

#[test]
fn both_even_grid_satisfies_the_conditions() {
    for (big_m, big_n) in [(6, 4), (4, 6), (6, 6), (8, 4), (8, 8)] {
        let r =
            check_quotient_conditions(&ArtinParams::new(big_m, big_n).unwrap(), 7, 1e-9).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(
            r.status("finite-intersections"),
            Some(RfStatus::NotApplicable)
        );
    }
}

#[test]
fn hyperbolicity_is_never_reported_as_pass() {
    for (big_m, big_n, p) in [(6, 4, 7), (5, 4, 6), (5, 5, 6)] {
        let r =
            check_quotient_conditions(&ArtinParams::new(big_m, big_n).unwrap(), p, 1e-9).unwrap();
        assert_eq!(r.status("hyperbolic"), Some(RfStatus::Assumed));
        assert!(r.to_text().contains("RF hyperbolic assumed residual="));
    }
}
