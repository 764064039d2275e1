#![allow(clippy::int_plus_one)]

mod common;

use common::{gcd, SieveSemigroup};
use proptest::prelude::*;

use semigroup_forge::bounds::{BoundContext, BoundId};
use semigroup_forge::enumerate::{self, TreeOptions};
use semigroup_forge::{
    apery_partition_witness, apery_set, pf_partition_witness, pseudo_frobenius, symmetry_class,
    Semigroup, SymmetryClass,
};

fn coprime_gens() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..40, 1..6)
        .prop_filter("coprime", |v| v.iter().fold(0, |a, &b| gcd(a, b)) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_sieve(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let oracle = SieveSemigroup::new(&gens);
        prop_assert_eq!(s.frobenius(), oracle.frobenius);
        prop_assert_eq!(s.genus(), oracle.genus);
        prop_assert_eq!(s.small_count(), oracle.small_count);
        prop_assert_eq!(s.multiplicity(), oracle.multiplicity);
        prop_assert_eq!(s.gens(), oracle.min_gens.as_slice());
        for x in -3..=s.frobenius() + 2 * s.multiplicity() {
            prop_assert_eq!(s.contains(x), oracle.contains(x), "x = {}", x);
        }
    }

    #[test]
    fn canonical_and_minimal(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let again = Semigroup::from_generators(s.gens()).unwrap();
        prop_assert_eq!(&again, &s);
        for &g in s.gens() {
            prop_assert!(!(1..=g / 2).any(|a| s.contains(a) && s.contains(g - a)));
        }
        let (f, g1, q) = (s.frobenius(), s.multiplicity(), s.q());
        prop_assert_eq!(s.small_count() + s.genus(), f + 1);
        prop_assert!(q * g1 >= f + 1 && f + 1 > (q - 1) * g1);
        prop_assert!(1 <= q && q <= s.small_count());
        prop_assert_eq!(q == 1, s.is_half_line());
    }

    #[test]
    fn apery_sets(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let f = s.frobenius();
        for m in (1..=3 * s.multiplicity()).filter(|&m| s.contains(m)) {
            let ap = apery_set(&s, m).unwrap();
            prop_assert_eq!(ap.elements.len() as i64, m);
            prop_assert_eq!(ap.elements[0], 0);
            prop_assert_eq!(*ap.elements.last().unwrap(), f + m);
            for &w in &ap.elements {
                prop_assert!(s.contains(w) && !s.contains(w - m));
            }
        }
    }

    #[test]
    fn pseudo_frobenius_definitional(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let oracle = SieveSemigroup::new(&gens);
        let pf = pseudo_frobenius(&s).unwrap();
        prop_assert_eq!(&pf.elements, &oracle.pf);
        prop_assert_eq!(*pf.elements.last().unwrap(), s.frobenius());
        prop_assert!(pf.type_t <= s.multiplicity() - 1);
        let class = symmetry_class(&s).unwrap();
        prop_assert_eq!(class == SymmetryClass::Symmetric, pf.type_t == 1);
        prop_assert_eq!(class.is_almost_symmetric(), oracle.almost_symmetric());
    }

    #[test]
    fn bound_consistency(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let ctx = BoundContext::new(&s).unwrap();
        let rhs = |id| ctx.check(id).unwrap().rhs;
        prop_assert!(rhs(BoundId::Type) <= rhs(BoundId::TypeWeak));
        prop_assert!(rhs(BoundId::WilfQ) <= rhs(BoundId::WilfN2));
        for id in BoundId::ALL {
            if id == BoundId::CorollaryAS && !ctx.almost_symmetric {
                continue;
            }
            let r = ctx.check(id).unwrap();
            prop_assert!(r.holds, "{:?} fails on {}", id, s);
            prop_assert_eq!(r.slack, r.rhs - r.lhs);
        }
    }

    #[test]
    fn witnesses(gens in coprime_gens()) {
        let s = Semigroup::from_generators(&gens).unwrap();
        let pf = pseudo_frobenius(&s).unwrap();
        let ap = apery_partition_witness(&s).unwrap();
        prop_assert_eq!(ap.blocks.len() as i64, s.multiplicity() - 1);
        let pw = pf_partition_witness(&s).unwrap();
        let expected = if pf.f2.is_some() { pf.type_t - 2 } else { pf.type_t - 1 };
        prop_assert_eq!(pw.blocks.len() as i64, expected);
    }
}

#[test]
fn sylvester_pairs_up_to_40() {
    for a in 2..40i64 {
        for b in a + 1..=40 {
            if gcd(a, b) == 1 {
                let s = Semigroup::from_generators(&[a, b]).unwrap();
                assert_eq!(s.frobenius(), a * b - a - b, "<{a},{b}>");
            }
        }
    }
}

#[test]
fn tree_matches_oracle_through_genus_10() {
    let report = enumerate::oracle_crosscheck(10, &TreeOptions::default().with_workers(2)).unwrap();
    assert!(report.equal, "{report:?}");
}

#[test]
fn tree_has_no_duplicates() {
    let keys = enumerate::tree_keys(13, &TreeOptions::default().with_workers(4)).unwrap();
    let mut dedup = keys.clone();
    dedup.dedup();
    assert_eq!(keys.len(), dedup.len());
}

#[test]
fn tree_nodes_regenerate_from_their_generators() {
    enumerate::enumerate_tree(10, &TreeOptions::default(), |node| {
        let s = &node.semigroup;
        if !node.is_degenerate() {
            assert_eq!(&Semigroup::from_generators(s.gens()).unwrap(), s);
            assert_eq!(s.genus() as u32, node.depth());
            let oracle = SieveSemigroup::new(s.gens());
            assert_eq!(oracle.genus, s.genus());
        }
        Ok(())
    })
    .unwrap();
}
