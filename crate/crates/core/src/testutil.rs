//! Shared proptest strategies.

use proptest::prelude::*;

use crate::weights::{weights_from_signature, Signature, WeightVector};

/// Random valid signature with n in [min_n, max_n] and d in [2, max_d].
pub fn arb_signature(min_n: usize, max_n: usize, max_d: i64) -> impl Strategy<Value = Signature> {
    (2i64..=max_d, min_n..=max_n)
        .prop_filter("no signature exists", |&(d, n)| n as i64 * (d - 1) >= 2 * d)
        .prop_flat_map(|(d, n)| {
            // shifted orders l_i = k_i + d - 1 >= 0 with fixed total
            let total = n as i64 * (d - 1) - 2 * d;
            (Just(d), Just(total), proptest::collection::vec(0..=total, n - 1))
        })
        .prop_map(|(d, total, mut cuts)| {
            cuts.sort();
            let mut l = Vec::with_capacity(cuts.len() + 1);
            let mut prev = 0;
            for c in cuts {
                l.push(c - prev);
                prev = c;
            }
            l.push(total - prev);
            Signature::new(l.into_iter().map(|x| x - (d - 1)).collect(), d).unwrap()
        })
}

pub fn arb_weights(min_n: usize, max_n: usize, max_d: i64) -> impl Strategy<Value = WeightVector> {
    arb_signature(min_n, max_n, max_d).prop_map(|k| weights_from_signature(&k))
}
