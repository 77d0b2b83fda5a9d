#![allow(dead_code)]

use hopfweave::{Band, BandSign, IntMatrix, PlumbingTree};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// Tree with up to `max_mu` bands and gluing coordinates in `[-b, b]`.
pub fn tree_strategy(max_mu: usize, b: i64) -> impl Strategy<Value = PlumbingTree> {
    prop::collection::vec(
        (any::<bool>(), prop::collection::vec(-b..=b, max_mu)),
        0..=max_mu,
    )
    .prop_map(|raw| {
        let bands = raw
            .into_iter()
            .enumerate()
            .map(|(k, (neg, coords))| Band {
                sign: if neg {
                    BandSign::Negative
                } else {
                    BandSign::Positive
                },
                gluing: coords[..k].to_vec(),
                label: None,
            })
            .collect();
        PlumbingTree::from_bands(bands).unwrap()
    })
}

pub fn random_tree<R: Rng>(rng: &mut R, max_mu: usize, b: i64) -> PlumbingTree {
    let mu = rng.gen_range(0..=max_mu);
    (0..mu).fold(PlumbingTree::unknot(), |t, k| {
        let sign = if rng.gen_bool(0.5) {
            BandSign::Negative
        } else {
            BandSign::Positive
        };
        let x: Vec<i64> = (0..k).map(|_| rng.gen_range(-b..=b)).collect();
        t.hopf_plumb(sign, &x).unwrap()
    })
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, b: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-b..=b)))
        .collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

/// Product of random elementary row operations: determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        for c in 0..n {
            let v = &p[(j, c)] * &k;
            p[(i, c)] += v;
        }
        if rng.gen_bool(0.2) {
            for c in 0..n {
                p[(i, c)] = -p[(i, c)].clone();
            }
        }
    }
    p
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::from(0);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical form by trying every band permutation, keeping those that leave
/// the Seifert matrix upper triangular, and taking the smallest
/// column-by-column upper-triangle key.
pub fn canonical_by_enumeration(t: &PlumbingTree) -> PlumbingTree {
    let v = t.seifert_matrix();
    let n = t.mu();
    let mut best: Option<(Vec<BigInt>, IntMatrix)> = None;
    for p in permutations(n) {
        let w = v.permuted(&p);
        let upper = (0..n).all(|i| (0..i).all(|j| w[(i, j)] == BigInt::from(0)));
        if !upper {
            continue;
        }
        let key: Vec<BigInt> = (0..n)
            .flat_map(|j| (0..=j).map(move |i| (i, j)))
            .map(|c| w[c].clone())
            .collect();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, w));
        }
    }
    let (_, w) = best.unwrap();
    (0..n).fold(PlumbingTree::unknot(), |acc, k| {
        let sign = if w[(k, k)] == BigInt::from(-1) {
            BandSign::Positive
        } else {
            BandSign::Negative
        };
        let x: Vec<i64> = (0..k).map(|i| i64::try_from(&w[(i, k)]).unwrap()).collect();
        acc.hopf_plumb(sign, &x).unwrap()
    })
}
