use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Coefficients of `det(x I - a)`, leading coefficient first.
///
/// Division-free (Berkowitz), so every intermediate value is an exact integer.
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial needs a square matrix");
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut p = vec![BigInt::one(), -a[(0, 0)].clone()];
    for r in 1..n {
        // Leading block M = a[..r][..r], row R = a[r][..r], column C = a[..r][r].
        let mut t = vec![BigInt::one(), -a[(r, r)].clone()];
        let mut v: Vec<BigInt> = (0..r).map(|i| a[(i, r)].clone()).collect();
        for _ in 0..r {
            let rv: BigInt = (0..r).map(|j| &a[(r, j)] * &v[j]).sum();
            t.push(-rv);
            v = (0..r).map(|i| (0..r).map(|j| &a[(i, j)] * &v[j]).sum()).collect();
        }
        let next: Vec<BigInt> = (0..r + 2).map(|i| (0..=i.min(r)).map(|j| &t[i - j] * &p[j]).sum()).collect();
        p = next;
    }
    p
}

/// Sign changes in a coefficient sequence, zeros skipped.
pub fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let neg = c.is_negative();
        if last.is_some_and(|l| l != neg) {
            count += 1;
        }
        last = Some(neg);
    }
    count
}

/// Counts of (positive, negative, zero) roots of a real-rooted polynomial, leading coefficient first.
pub fn real_root_signs(coeffs: &[BigInt]) -> (usize, usize, usize) {
    let zeros = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let q = &coeffs[..coeffs.len() - zeros];
    let deg = q.len().saturating_sub(1);
    let reflected: Vec<BigInt> =
        q.iter().enumerate().map(|(i, c)| if (deg - i) % 2 == 1 { -c } else { c.clone() }).collect();
    (sign_variations(q), sign_variations(&reflected), zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_determinant, IntMatrix};

    fn poly_eval(p: &[BigInt], x: i64) -> BigInt {
        p.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_i64(2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let p = characteristic_polynomial(&a);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-5), BigInt::from(-2)]);
    }

    #[test]
    fn agrees_with_determinant_evaluation() {
        let a = IntMatrix::from_i64(4, &[vec![2, -1, 0, 3], vec![1, 0, 4, -2], vec![0, 5, -3, 1], vec![7, 2, 1, 1]])
            .unwrap();
        let p = characteristic_polynomial(&a);
        for x in -3..=3 {
            let mut shifted = a.map(|v| -v);
            for i in 0..4 {
                shifted[(i, i)] += BigInt::from(x);
            }
            assert_eq!(poly_eval(&p, x), int_determinant(&shifted).unwrap());
        }
    }

    #[test]
    fn root_sign_counts() {
        // x^2 (x - 1)(x + 2)(x + 3) = x^5 + 4x^4 + x^3 - 6x^2
        let p: Vec<BigInt> = [1, 4, 1, -6, 0, 0].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(real_root_signs(&p), (1, 2, 2));
    }
}
