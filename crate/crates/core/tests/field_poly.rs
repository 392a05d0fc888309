use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rsdlog::ffield::field_of_order;
use rsdlog::{Fe, Poly, PolyRing};

const SMALL: [u64; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64];

fn field_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![4u64, 9, 16, 25, 27, 49, 64, 101, 243, 256, 625, 1024])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(q in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field_of_order(q).unwrap();
        let (a, b, c) = (Fe(a % f.q()), Fe(b % f.q()), Fe(c % f.q()));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn divmod_identity(q in field_strategy(), a in prop::collection::vec(any::<u32>(), 0..12), b in prop::collection::vec(any::<u32>(), 1..6)) {
        let f = field_of_order(q).unwrap();
        let ring = PolyRing::new(&f);
        let a = Poly::new(a.into_iter().map(|x| Fe(x % f.q())).collect());
        let b = Poly::new(b.into_iter().map(|x| Fe(x % f.q())).collect());
        prop_assume!(!b.is_zero());
        let (quo, rem) = ring.divmod(&a, &b).unwrap();
        prop_assert_eq!(ring.add(&ring.mul(&quo, &b), &rem), a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }
}

#[test]
fn frobenius_and_trace_exhaustive() {
    for q in SMALL {
        let f = field_of_order(q).unwrap();
        let p = f.p() as u64;
        let mut hits = vec![false; p as usize];
        for a in f.elements() {
            let ta = f.trace(a);
            assert!(ta.0 < f.p(), "trace must land in the prime field");
            hits[ta.0 as usize] = true;
            for b in f.elements() {
                assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                assert_eq!(f.trace(f.add(a, b)), f.add(ta, f.trace(b)));
            }
            for c in 0..f.p() {
                assert_eq!(f.trace(f.mul(Fe(c), a)), f.mul(Fe(c), ta));
            }
        }
        assert!(hits.iter().all(|&h| h), "trace is onto F_p for q = {q}");
    }
}

#[test]
fn interpolation_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(171);
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = field_of_order(q).unwrap();
        let ring = PolyRing::new(&f);
        for m in 1..=(q as usize).min(8) {
            for _ in 0..10 {
                let poly = Poly::new((0..m).map(|_| Fe(rng.gen_range(0..f.q()))).collect());
                let pts: Vec<Fe> =
                    rand::seq::index::sample(&mut rng, q as usize, m).into_iter().map(|i| Fe(i as u32)).collect();
                let samples: Vec<(Fe, Fe)> = pts.iter().map(|&x| (x, ring.eval(&poly, x))).collect();
                assert_eq!(ring.interpolate(&samples).unwrap(), poly);
            }
        }
    }
}

#[test]
fn split_recovers_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(172);
    let fields: Vec<_> = [16u64, 27, 81, 101, 256].iter().map(|&q| field_of_order(q).unwrap()).collect();
    for trial in 0..500 {
        let f = &fields[trial % fields.len()];
        let ring = PolyRing::new(f);
        let size = rng.gen_range(1..=12);
        let mut a: Vec<Fe> =
            rand::seq::index::sample(&mut rng, f.q() as usize, size).into_iter().map(|i| Fe(i as u32)).collect();
        a.sort();
        let p = ring.from_roots(&a);
        let (lead, mut roots) = ring.split_distinct_linear(&p).expect("distinct linear factors");
        roots.sort();
        assert_eq!((lead, roots), (Fe::ONE, a.clone()));
        // roots agree with the definition
        let by_def: Vec<Fe> = f.elements().filter(|&x| ring.eval(&p, x).is_zero()).collect();
        let mut found = ring.roots(&p).unwrap();
        found.sort();
        assert_eq!(found, by_def);
        // a repeated root is rejected
        let doubled = ring.mul(&p, &ring.from_roots(&a[..1]));
        assert!(ring.split_distinct_linear(&doubled).is_none());
    }
}
