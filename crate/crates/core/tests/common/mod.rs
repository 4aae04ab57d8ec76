//! Independent oracles shared by the integration and acceptance tests.
//!
//! None of these call into the algorithms they check: Lyndon words are found
//! by brute force, nullities by dense Gaussian elimination over `Q`, and
//! incidences by evaluating the embedding at random points over a prime field.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use polyfree_core::{AlgebraSpec, LieElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All Lyndon words of length `q` over `k` letters, by checking every word
/// against all of its rotations.
pub fn brute_lyndon(k: usize, q: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let total = k.pow(q as u32);
    for mut idx in 0..total {
        let mut w = vec![0u16; q];
        for slot in w.iter_mut().rev() {
            *slot = (idx % k) as u16;
            idx /= k;
        }
        let minimal = (1..q).all(|s| {
            let rot: Vec<u16> = w[s..].iter().chain(&w[..s]).copied().collect();
            w < rot
        });
        if minimal {
            out.push(w);
        }
    }
    out
}

/// Dimension of the null space of the rows (as vectors in `Q^cols`), i.e.
/// `#rows - rank`, by dense fraction-valued elimination.
pub fn rational_left_nullity(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rows.len() - rank
}

/// Rows `([e, g])_{g ∈ gens}` for `e` in `weight_basis(w)`, via the public
/// bracket and coordinate API only.
pub fn bracket_rows(spec: &AlgebraSpec, gens: &[String], w: usize) -> Vec<Vec<BigInt>> {
    spec.weight_basis(w)
        .iter()
        .map(|e| {
            let x = spec.basis_element(e, w + 1);
            let mut row = Vec::new();
            for g in gens {
                let y = spec.generator(g, w + 1).unwrap();
                let b = spec.bracket(&x, &y, w + 1).unwrap();
                row.extend(spec.coordinates(&b, w + 1).unwrap());
            }
            row
        })
        .collect()
}

/// Weight-1 coordinates of the sum of the named generators.
pub fn coords_of_sum(spec: &AlgebraSpec, names: &[String]) -> Vec<BigInt> {
    let x: LieElement = spec.sum_of(names, 1).unwrap();
    spec.coordinates(&x, 1).unwrap()
}

pub const PRIME: u64 = 1_000_000_009;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// A primitive `r`-th root of unity mod [`PRIME`] (needs `r | PRIME - 1`).
pub fn root_of_unity(r: u64) -> u64 {
    assert_eq!((PRIME - 1) % r, 0);
    (2..)
        .map(|g| powmod(g, (PRIME - 1) / r))
        .find(|&z| (1..r).all(|k| powmod(z, k) != 1))
        .unwrap()
}

/// Source hyperplane, as in the library: `Coordinate(i)` or `Difference(i, j, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hyp {
    Coord(usize),
    Diff(usize, usize, usize),
}

/// Hyperplanes in generator order of `monomial_orbit(r, n)`.
pub fn hyperplanes(r: usize, n: usize) -> Vec<Hyp> {
    let mut v: Vec<Hyp> = (1..=n).map(Hyp::Coord).collect();
    for j in 2..=n {
        for i in 1..j {
            v.extend((1..=r).map(|p| Hyp::Diff(i, j, p)));
        }
    }
    v
}

/// `{(a, b) : y_a = y_b}` at several random points of the hyperplane over
/// `F_PRIME`; a pair survives only if it is equal at every sample.
pub fn sampled_incidence(r: usize, n: usize, h: Hyp, seed: u64) -> BTreeSet<(usize, usize)> {
    let zeta = root_of_unity(r as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result: Option<BTreeSet<(usize, usize)>> = None;
    for _ in 0..4 {
        let mut x: Vec<u64> = (0..n).map(|_| rng.gen_range(1..PRIME)).collect();
        match h {
            Hyp::Coord(i) => x[i - 1] = 0,
            Hyp::Diff(i, j, p) => x[i - 1] = mulmod(powmod(zeta, p as u64), x[j - 1]),
        }
        let mut y = vec![0u64];
        for xi in &x {
            for e in 0..r {
                y.push(mulmod(powmod(zeta, e as u64), *xi));
            }
        }
        let mut s = BTreeSet::new();
        for a in 0..y.len() {
            for b in a + 1..y.len() {
                if y[a] == y[b] {
                    s.insert((a + 1, b + 1));
                }
            }
        }
        result = Some(match result {
            None => s,
            Some(prev) => prev.intersection(&s).copied().collect(),
        });
    }
    result.unwrap()
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn one() -> BigInt {
    BigInt::one()
}
