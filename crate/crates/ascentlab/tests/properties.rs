//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use ascentlab::bijections::{krattenthaler_from_path, krattenthaler_to_path};
use ascentlab::distributions::{
    sample_uniform_avoider, sample_uniform_dyck_path, sample_uniform_permutation, seeded_rng,
};
use ascentlab::Permutation;

/// An arbitrary permutation of [n] built from a seed.
fn arb_permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = seeded_rng(seed);
        sample_uniform_permutation(n, &mut rng)
    })
}

proptest! {
    #[test]
    fn fast_avoidance_scan_matches_cubic(p in arb_permutation(40)) {
        prop_assert_eq!(p.is_123_avoiding(), p.is_123_avoiding_naive());
    }

    #[test]
    fn rlm_decomposition_reassembles(p in arb_permutation(60)) {
        let d = p.right_to_left_maxima();
        prop_assert_eq!(d.reassemble(), p);
    }

    #[test]
    fn first_ascent_in_range(p in arb_permutation(60)) {
        let k = p.first_ascent_position();
        prop_assert!(1 <= k && k <= p.len());
        let descending = p.entries().windows(2).all(|w| w[0] > w[1]);
        prop_assert_eq!(k == p.len(), descending);
    }

    #[test]
    fn sampled_avoiders_roundtrip(n in 1usize..=60, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let p = sample_uniform_avoider(n, &mut rng);
        prop_assert!(p.is_123_avoiding());
        let path = krattenthaler_to_path(&p).unwrap();
        prop_assert_eq!(krattenthaler_from_path(&path).unwrap(), p);
    }

    #[test]
    fn sampled_dyck_paths_roundtrip_the_other_way(n in 1usize..=60, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let path = sample_uniform_dyck_path(n, &mut rng);
        prop_assert_eq!(path.order(), n);
        let p = krattenthaler_from_path(&path).unwrap();
        prop_assert_eq!(krattenthaler_to_path(&p).unwrap(), path);
    }

    #[test]
    fn permutation_text_format_roundtrips(p in arb_permutation(30)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), p);
    }
}
