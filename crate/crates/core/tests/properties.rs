use plat_core::closure::{biclosure_bits, dump_closure, enumerate_closed, is_closed_bits, parse_closure_dump, polar_bits};
use plat_core::orthospace::{dump_space, load_space};
use plat_core::{Bits, Limits, OrthoSpace};
use proptest::prelude::*;

/// Random symmetric irreflexive relation on 1..=10 atoms.
fn space() -> impl Strategy<Value = OrthoSpace> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |flags| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .zip(flags)
                .filter_map(|(p, keep)| keep.then_some(p))
                .collect();
            let labels = (0..n).map(|i| format!("x{i}")).collect();
            OrthoSpace::from_pairs(labels, &pairs).unwrap()
        })
    })
}

fn subset(n: usize, m: u64) -> Bits {
    Bits::from_indices((0..n).filter(|i| m >> i & 1 == 1))
}

proptest! {
    #[test]
    fn closure_laws(s in space(), a in any::<u64>(), b in any::<u64>()) {
        let n = s.size();
        let (a, b) = (subset(n, a), subset(n, b));
        let ab = a.or(&b);
        let h = biclosure_bits(&s, &a);
        prop_assert!(a.is_subset(&h));
        prop_assert_eq!(biclosure_bits(&s, &h), h);
        prop_assert!(h.is_subset(&biclosure_bits(&s, &ab)));
        prop_assert_eq!(polar_bits(&s, &h), polar_bits(&s, &a));
        prop_assert!(is_closed_bits(&s, &polar_bits(&s, &a)));
    }

    #[test]
    fn enumeration_matches_filter(s in space()) {
        let sys = enumerate_closed(&s, &Limits::default()).unwrap();
        let n = s.size();
        let brute = (0..1u64 << n).map(|m| subset(n, m)).filter(|x| is_closed_bits(&s, x)).count();
        prop_assert_eq!(sys.len(), brute);
        for c in sys.sets() {
            prop_assert!(is_closed_bits(&s, c));
        }
    }

    #[test]
    fn dumps_round_trip(s in space()) {
        let loaded = load_space(&dump_space(&s)).unwrap();
        prop_assert_eq!(loaded.rows(), s.rows());
        prop_assert_eq!(loaded.labels(), s.labels());

        let sys = enumerate_closed(&s, &Limits::default()).unwrap();
        let text = dump_closure(&sys);
        let (size, sets) = parse_closure_dump(&text).unwrap();
        prop_assert_eq!(size, s.size());
        prop_assert_eq!(&sets[..], sys.sets());
    }
}
