#![allow(dead_code)]

use proptest::prelude::*;

use listcolor::enumerate::{graph_from_mask, pairs};
use listcolor::Graph;

/// Random simple graph on at most `max_n <= 11` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, mask)| {
        let bits = pairs(n).len();
        graph_from_mask(
            n,
            if bits == 64 {
                mask
            } else {
                mask & ((1u64 << bits) - 1)
            },
        )
    })
}
