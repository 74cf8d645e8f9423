mod common;

use bimodule::problem::{direct_sum, hom_space};
use bimodule::reduce::{decompose, is_isomorphic};
use common::*;

#[test]
fn fixture_splits_into_the_two_displayed_summands() {
    for lam in [s(1), s(2), s(-3), bimodule::exactmath::Scalar::from_frac(1, 2), s(7)] {
        let (p, rep) = decomposition_fixture(lam.clone());
        let parts = decompose(&p, &rep).unwrap();
        assert_eq!(parts.len(), 2);
        let (m1, m2) = fixture_summands(&p, lam);
        for part in &parts {
            assert_eq!(part.multiplicity, 1);
            assert_eq!(hom_space(&p, &part.rep, &part.rep).len(), 1);
        }
        let matched = |x: &bimodule::problem::Representation| {
            parts.iter().filter(|q| q.rep.sizes() == x.sizes() && is_isomorphic(&p, &q.rep, x).unwrap()).count()
        };
        assert_eq!(matched(&m1), 1);
        assert_eq!(matched(&m2), 1);
        assert!(is_isomorphic(&p, &rep, &direct_sum(&m1, &m2).unwrap()).unwrap());
    }
}
