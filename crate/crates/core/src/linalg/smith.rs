use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal, `s[i][i] | s[i+1][i+1]`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

fn row_sub(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    let s = m.row(src).to_vec();
    for (x, y) in m.row_mut(dst).iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= f * y;
        }
    }
}

fn col_sub(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for i in 0..m.rows() {
        let y = m[(i, src)].clone();
        if !y.is_zero() {
            m[(i, dst)] -= f * y;
        }
    }
}

/// Smallest nonzero magnitude in the trailing block starting at `(t, t)`.
fn smallest_in_block(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero magnitude in row `t` and column `t`, from the pivot onwards.
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut mag = a[(t, t)].abs();
    for i in t + 1..a.rows() {
        let x = a[(i, t)].abs();
        if !x.is_zero() && (mag.is_zero() || x < mag) {
            mag = x;
            best = (i, t);
        }
    }
    for j in t + 1..a.cols() {
        let x = a[(t, j)].abs();
        if !x.is_zero() && (mag.is_zero() || x < mag) {
            mag = x;
            best = (t, j);
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_in_block(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let piv = s[(t, t)].clone();
            for i in t + 1..m {
                if !s[(i, t)].is_zero() {
                    let q = s[(i, t)].div_floor(&piv);
                    row_sub(&mut s, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                }
            }
            for j in t + 1..n {
                if !s[(t, j)].is_zero() {
                    let q = s[(t, j)].div_floor(&piv);
                    col_sub(&mut s, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                }
            }
            let (bi, bj) = smallest_in_cross(&s, t);
            if (bi, bj) != (t, t) {
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            let cross_clear = (t + 1..m).all(|i| s[(i, t)].is_zero()) && (t + 1..n).all(|j| s[(t, j)].is_zero());
            if !cross_clear {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&piv)));
            match bad_row {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut s, t, i, &minus_one);
                    row_sub(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            for x in s.row_mut(t) {
                *x = -&*x;
            }
            for x in u.row_mut(t) {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let rank = (0..m.min(n)).take_while(|&i| !s[(i, i)].is_zero()).count();
    let check = u.mul(a).and_then(|ua| ua.mul(&v)).expect("shapes agree by construction");
    assert_eq!(check, s, "Smith decomposition failed its product check");
    SmithDecomposition { u, s, v, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_determinant;

    fn int(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(cols, rows).unwrap()
    }

    #[test]
    fn classic_example() {
        let a = int(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let d = smith_normal_form(&a);
        assert_eq!(d.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn transforms_are_unimodular() {
        let a = int(4, &[vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8]]);
        let d = smith_normal_form(&a);
        assert_eq!(int_determinant(&d.u).unwrap().abs(), BigInt::from(1));
        assert_eq!(int_determinant(&d.v).unwrap().abs(), BigInt::from(1));
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).rank, 0);
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(smith_normal_form(&e).rank, 0);
    }

    #[test]
    fn divisibility_chain_forced() {
        let a = int(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&a).invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
