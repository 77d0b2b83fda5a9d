//! Fixtures shared by the benchmarks.

use hopfweave::{BandSign, PlumbingTree};

/// Linear chain of `n` bands with alternating signs, each glued once to
/// its predecessor.
pub fn chain(n: usize) -> PlumbingTree {
    (0..n).fold(PlumbingTree::unknot(), |t, k| {
        let sign = if k % 2 == 0 {
            BandSign::Positive
        } else {
            BandSign::Negative
        };
        let mut x = vec![0; k];
        if let Some(last) = x.last_mut() {
            *last = 1;
        }
        t.hopf_plumb(sign, &x).expect("gluing fits")
    })
}

/// Star: one positive centre with `n - 1` positive leaves.
pub fn star(n: usize) -> PlumbingTree {
    (0..n).fold(PlumbingTree::unknot(), |t, k| {
        let mut x = vec![0; k];
        if k > 0 {
            x[0] = 1;
        }
        t.hopf_plumb(BandSign::Positive, &x).expect("gluing fits")
    })
}
