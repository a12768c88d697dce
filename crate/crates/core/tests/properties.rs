use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use bs_core::necklace::{brandt_partition, Bead, Necklace};
use bs_core::orbit::{level_census, Limits};
use bs_core::partition::{partitions_of, Partition};
use bs_core::polyrat::{IntPoly, RatFn};

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| IntPoly::from_i64s(&c))
}

/// Denominators with constant term 1, so every series is integral.
fn unit_den() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|mut c| {
        c.insert(0, 1);
        IntPoly::from_i64s(&c)
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (small_poly(), unit_den()).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

fn cauchy(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

proptest! {
    #[test]
    fn series_of_sum_and_product(a in ratfn(), b in ratfn()) {
        let m = 8;
        let sa = a.series_integers(m).unwrap();
        let sb = b.series_integers(m).unwrap();
        let sum: Vec<BigInt> = sa.iter().zip(&sb).map(|(x, y)| x + y).collect();
        prop_assert_eq!((&a + &b).series_integers(m).unwrap(), sum);
        prop_assert_eq!((&a * &b).series_integers(m).unwrap(), cauchy(&sa, &sb));
    }

    #[test]
    fn canonical_form_is_stable(a in ratfn(), c in 1i64..5) {
        let scaled = RatFn::new(a.num().scale(&BigInt::from(c)), a.den().scale(&BigInt::from(c))).unwrap();
        prop_assert_eq!(&scaled, &a);
        let text = a.to_string();
        prop_assert_eq!(text, scaled.to_string());
    }

    #[test]
    fn poly_text_round_trip(p in small_poly()) {
        let back: IntPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn reverse_moves_invert_the_map(parts in prop::collection::vec(1u32..9, 1..8)) {
        let lam = Partition::from_unsorted(parts);
        for pre in lam.preimages() {
            prop_assert_eq!(pre.beta(), lam.clone());
        }
    }
}

/// Every partition of `n` lies in exactly one orbit, so the orbit sizes of
/// the necklaces whose recurrent partitions have size `n` add up to `p(n)`.
#[test]
fn orbits_partition_all_partitions() {
    let limits = Limits::default();
    let mut by_size: HashMap<u64, BigInt> = HashMap::new();
    for len in 1..=6u32 {
        for bits in 0..(1u32 << len) {
            let word: Vec<Bead> = (0..len)
                .map(|i| if bits >> i & 1 == 1 { Bead::B } else { Bead::W })
                .collect();
            let n = Necklace::canonicalize(&word).unwrap();
            // B^m and W^(m+1) name the same staircase
            if n.word() != word.as_slice() || bits == (1 << len) - 1 {
                continue;
            }
            let size = brandt_partition(&word).size();
            let census = level_census(&n, &limits).unwrap();
            *by_size.entry(size).or_default() += census.eval(&BigInt::from(1));
        }
    }
    for n in 1..=12u32 {
        assert_eq!(
            by_size[&(n as u64)],
            BigInt::from(partitions_of(n).len()),
            "n = {n}"
        );
    }
}
