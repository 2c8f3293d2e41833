use std::collections::BTreeSet;

use mckay::chambers::{enumerate_chambers, enumerate_with, Backend, Limits};
use mckay::grouplat::parse_group;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn graph_1_6() -> &'static mckay::chambers::ChamberGraph {
    static G: std::sync::OnceLock<mckay::chambers::ChamberGraph> = std::sync::OnceLock::new();
    G.get_or_init(|| enumerate_chambers(&parse_group("1/6(1,2,3)").unwrap(), &Limits::default()).unwrap())
}

#[test]
fn enumeration_is_deterministic() {
    let g = parse_group("1/6(1,2,3)").unwrap();
    let again = enumerate_chambers(&g, &Limits::default()).unwrap();
    let keys = |gr: &mckay::chambers::ChamberGraph| gr.chambers.iter().map(|c| c.state.key()).collect::<Vec<_>>();
    assert_eq!(keys(&again), keys(graph_1_6()));
    assert_eq!(graph_1_6().chambers.len(), 264);
}

#[test]
fn backends_agree() {
    let g = parse_group("1/3(1,1,1)").unwrap();
    let a = enumerate_with(&g, &Limits::default(), Backend::Lp).unwrap();
    let b = enumerate_with(&g, &Limits::default(), Backend::RayShooting).unwrap();
    let facets = |gr: &mckay::chambers::ChamberGraph| -> Vec<BTreeSet<Vec<i64>>> {
        gr.chambers.iter().map(|c| c.facets.iter().map(|f| f.normal.clone()).collect()).collect()
    };
    assert_eq!(facets(&a), facets(&b));
    assert!(a.lps > 0);
    assert_eq!(b.lps, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The chambers of a complete search tile the space: a generic θ lies
    /// in exactly one of them.
    #[test]
    fn chambers_tile(theta in proptest::collection::vec(-50i64..=50, 5)) {
        let theta: Vec<BigRational> = theta.iter().map(|&x| BigRational::from_integer(BigInt::from(x)) + BigRational::new(1.into(), 997.into()) * BigRational::from_integer(BigInt::from(x * x + 1))).collect();
        let gr = graph_1_6();
        let value = |n: &[i64]| n.iter().zip(&theta).fold(BigRational::from_integer(0.into()), |s, (&a, t)| s + t * BigRational::from_integer(a.into()));
        prop_assume!(gr.chambers.iter().all(|c| c.facets.iter().all(|f| !value(&f.normal).is_zero())));
        let hits = gr.chambers.iter().filter(|c| c.facets.iter().all(|f| value(&f.normal).is_positive())).count();
        prop_assert_eq!(hits, 1);
    }
}
