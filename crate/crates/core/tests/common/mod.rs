//! Independent oracles shared by the oracle suite and the acceptance run.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropx_core::complex::{inertia, Inertia};
use tropx_core::graph::subsets;
use tropx_core::linalg::{int_determinant, smith_normal_form, IntMatrix};

pub const ZERO_THRESHOLD: f64 = 1e-9;

pub fn seed() -> u64 {
    std::env::var("TROPX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240917)
}

pub fn float_inertia(m: &[Vec<i64>]) -> (Inertia, f64) {
    let n = m.len();
    let f = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
    let eig = f.symmetric_eigenvalues();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    for &l in eig.iter() {
        if l > ZERO_THRESHOLD {
            out.positive += 1;
        } else if l < -ZERO_THRESHOLD {
            out.negative += 1;
        } else {
            out.zero += 1;
        }
    }
    let closest = eig.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
    (out, closest)
}

pub fn random_symmetric(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=8);
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-10..=10);
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    // rank-deficient cases exercise the zero count
    if rng.gen_bool(0.2) && n > 1 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for k in 0..n {
            m[b][k] = m[a][k];
        }
        for k in 0..n {
            m[k][b] = m[k][a];
        }
    }
    m
}

pub fn invariant_factors_by_minors(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<BigInt> {
    let a = IntMatrix::from_i64(cols, m).unwrap();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                g = g.gcd(&int_determinant(&a.submatrix(&rs, &cs)).unwrap());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Exact inertia of `m`, and whether the float count agrees. A disagreement is only tolerated
/// when some float eigenvalue sits within rounding of zero; the exact count stands.
pub fn inertia_agrees(m: &[Vec<i64>]) -> (Inertia, bool) {
    let exact = inertia(&IntMatrix::from_i64(m.len(), m).unwrap()).unwrap();
    let (float, closest) = float_inertia(m);
    assert!(exact == float || closest < 1e-6, "{m:?}: exact {exact:?}, float {float:?}");
    (exact, exact == float)
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-10..=10)).collect()).collect()
}

pub fn smith_agrees(m: &[Vec<i64>]) -> bool {
    let (rows, cols) = (m.len(), m[0].len());
    smith_normal_form(&IntMatrix::from_i64(cols, m).unwrap()).invariant_factors()
        == invariant_factors_by_minors(m, rows, cols)
}
