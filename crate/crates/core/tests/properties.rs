use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use ybe::retract::{self, Partition};
use ybe::search::{self, oracle, EnumFilter};
use ybe::solution::{self, canonical_form, invert, properties, validate_braid, Property};
use ybe::{FiniteSolution, Tables};

fn population() -> &'static [FiniteSolution] {
    static POP: OnceLock<Vec<FiniteSolution>> = OnceLock::new();
    POP.get_or_init(|| search::enumerate(3, &EnumFilter::all()).unwrap())
}

fn nd_population() -> &'static [FiniteSolution] {
    static POP: OnceLock<Vec<FiniteSolution>> = OnceLock::new();
    POP.get_or_init(|| {
        let mut v = search::enumerate(2, &EnumFilter::nd()).unwrap();
        v.extend(search::enumerate(3, &EnumFilter::nd()).unwrap());
        v.extend(search::enumerate(4, &EnumFilter::nd()).unwrap());
        v
    })
}

fn tables(max_n: usize) -> impl Strategy<Value = Tables> {
    (1..=max_n).prop_flat_map(|n| {
        let cell = 0..n as u8;
        (
            prop::collection::vec(cell.clone(), n * n),
            prop::collection::vec(cell, n * n),
        )
            .prop_map(move |(s, t)| Tables::from_flat(n, s, t).unwrap())
    })
}

fn relabeling(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((0..n as u8).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn braid_check_agrees_with_direct_evaluation(t in tables(3)) {
        let valid = validate_braid(&t).is_empty();
        prop_assert_eq!(valid, oracle::satisfies_braid(t.n(), t.sigma_flat(), t.tau_flat()));
        prop_assert_eq!(valid, FiniteSolution::new(t.clone()).is_ok());
    }

    #[test]
    fn property_witnesses_replay(t in tables(4)) {
        let report = properties(&t);
        for (p, w) in &report.witnesses {
            prop_assert!(!report.flag(*p));
            prop_assert!(p.replay(&t, w), "{:?} witness {:?} does not replay", p, w);
        }
        for p in [Property::LeftNondegenerate, Property::RightNondegenerate, Property::Bijective,
                  Property::Involutive, Property::SquareFree] {
            prop_assert_eq!(report.flag(p), !report.witnesses.contains_key(&p));
        }
    }

    #[test]
    fn invert_is_an_involution(i in any::<Index>()) {
        let s = i.get(population());
        if s.is_bijective() {
            let inv = invert(s).unwrap();
            prop_assert!(solution::inverse_identities(s, &inv).all_hold());
            prop_assert_eq!(&invert(&inv).unwrap(), s);
        } else {
            prop_assert!(invert(s).is_err());
        }
    }

    #[test]
    fn canonical_form_ignores_relabeling((i, pi) in (any::<Index>(), relabeling(3))) {
        let s = i.get(population());
        let pi: Vec<u8> = pi.into_iter().filter(|&v| (v as usize) < s.n()).collect();
        let moved = s.relabel(&pi);
        prop_assert_eq!(canonical_form(&moved).unwrap(), canonical_form(s).unwrap());
        prop_assert!(solution::is_isomorphic(&moved, s).unwrap().is_some());
    }

    #[test]
    fn retract_is_invariant_under_relabeling((i, pi) in (any::<Index>(), relabeling(4))) {
        let s = i.get(nd_population());
        let pi: Vec<u8> = pi.into_iter().filter(|&v| (v as usize) < s.n()).collect();
        let moved = s.relabel(&pi);
        let (a, b) = (retract::retract(s).unwrap(), retract::retract(&moved).unwrap());
        prop_assert!(solution::is_isomorphic(&a.quotient, &b.quotient).unwrap().is_some());
        prop_assert_eq!(retract::mpl(s), retract::mpl(&moved));
        prop_assert_eq!(retract::mpl_prime(s), retract::mpl_prime(&moved));
    }

    #[test]
    fn partition_blocks_are_labelled_by_their_minimum(keys in prop::collection::vec(0u8..4, 1..10)) {
        let p = Partition::from_key(keys.len(), |x| keys[x]);
        let mut seen = Vec::new();
        for x in 0..keys.len() {
            let b = p.block_of[x];
            prop_assert!(b <= x);
            prop_assert_eq!(p.block_of[b], b);
            prop_assert_eq!(keys[b], keys[x]);
            for y in 0..keys.len() {
                prop_assert_eq!(p.same(x, y), keys[x] == keys[y]);
            }
            if b == x {
                seen.push(x);
            }
        }
        prop_assert_eq!(p.representatives(), seen);
        let blocks = p.blocks();
        prop_assert_eq!(blocks.len(), p.num_blocks());
        prop_assert_eq!(blocks.iter().map(Vec::len).sum::<usize>(), keys.len());
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(i in any::<Index>()) {
        let s = i.get(nd_population());
        let ret = retract::retract(s).unwrap();
        let q = &ret.quotient;
        for x in 0..s.n() {
            for y in 0..s.n() {
                let (px, py) = (ret.projection[x], ret.projection[y]);
                prop_assert_eq!(ret.projection[s.sigma(x, y)], q.sigma(px, py));
                prop_assert_eq!(ret.projection[s.tau(y, x)], q.tau(py, px));
            }
        }
    }
}
