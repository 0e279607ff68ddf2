use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError, RationalMatrix};

/// Reduced row echelon form together with the invertible transform that produced it.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    /// `transform * a == reduced`.
    pub reduced: RationalMatrix,
    pub transform: RationalMatrix,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn row_echelon(a: &RationalMatrix) -> RowEchelon {
    let (m, n) = a.shape();
    let mut r = a.clone();
    let mut t = RationalMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        r.swap_rows(row, p);
        t.swap_rows(row, p);
        let inv = r[(row, col)].recip();
        scale_row(&mut r, row, &inv);
        scale_row(&mut t, row, &inv);
        for i in 0..m {
            if i != row && !r[(i, col)].is_zero() {
                let f = r[(i, col)].clone();
                axpy_row(&mut r, i, row, &f);
                axpy_row(&mut t, i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    RowEchelon { reduced: r, transform: t, pivots }
}

fn scale_row(m: &mut RationalMatrix, i: usize, f: &BigRational) {
    for x in m.row_mut(i) {
        *x = &*x * f;
    }
}

/// Row `i` minus `f` times row `src`.
fn axpy_row(m: &mut RationalMatrix, i: usize, src: usize, f: &BigRational) {
    let src_row = m.row(src).to_vec();
    for (x, s) in m.row_mut(i).iter_mut().zip(src_row) {
        if !s.is_zero() {
            *x = &*x - f * s;
        }
    }
}

pub fn rank(a: &RationalMatrix) -> usize {
    row_echelon(a).rank()
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// One solution of `a x = b`, free variables set to zero.
///
/// An inconsistent system yields a primitive integer `y` with `y a = 0` and `y b != 0`.
pub fn solve_rational(a: &RationalMatrix, b: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
    let (m, n) = a.shape();
    if b.len() != m {
        return Err(LinalgError::DimensionMismatch { expected: m, found: b.len() });
    }
    let ech = row_echelon(a);
    let tb = ech.transform.mul_vec(b)?;
    for i in ech.rank()..m {
        if !tb[i].is_zero() {
            let y = primitive_integer_vector(ech.transform.row(i));
            return Err(LinalgError::Inconsistent { certificate: y });
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in ech.pivots.iter().enumerate() {
        x[c] = tb[i].clone();
    }
    Ok(x)
}

/// Basis of `{x : a x = 0}`.
pub fn right_kernel(a: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let n = a.cols();
    let ech = row_echelon(a);
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{y : y a = 0}`.
pub fn left_kernel(a: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let ech = row_echelon(a);
    (ech.rank()..a.rows()).map(|i| ech.transform.row(i).to_vec()).collect()
}

pub fn determinant(a: &RationalMatrix) -> Result<BigRational, LinalgError> {
    let (m, n) = a.shape();
    if m != n {
        return Err(LinalgError::DimensionMismatch { expected: m, found: n });
    }
    let mut r = a.clone();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !r[(i, col)].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != col {
            r.swap_rows(p, col);
            det = -det;
        }
        let piv = r[(col, col)].clone();
        det *= &piv;
        for i in col + 1..n {
            if !r[(i, col)].is_zero() {
                let f = &r[(i, col)] / &piv;
                axpy_row(&mut r, i, col, &f);
            }
        }
    }
    Ok(det)
}

/// Exact integer determinant.
pub fn int_determinant(a: &IntMatrix) -> Result<BigInt, LinalgError> {
    Ok(determinant(&a.to_rational())?.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qm(cols: usize, rows: &[Vec<i64>]) -> RationalMatrix {
        IntMatrix::from_i64(cols, rows).unwrap().to_rational()
    }

    #[test]
    fn inconsistent_system_certificate() {
        let a = qm(2, &[vec![1, 1], vec![2, 2]]);
        let err = solve_rational(&a, &[q(1), q(3)]).unwrap_err();
        match err {
            LinalgError::Inconsistent { certificate } => {
                assert_eq!(certificate, vec![BigInt::from(2), BigInt::from(-1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solves_underdetermined_system() {
        let a = qm(3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let b = vec![q(6), q(2)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn kernels_are_annihilated() {
        let a = qm(4, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 1]]);
        let rk = right_kernel(&a);
        assert_eq!(rk.len(), 2);
        for v in &rk {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let lk = left_kernel(&a);
        assert_eq!(lk.len(), 1);
        assert!(a.vec_mul(&lk[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(int_determinant(&IntMatrix::from_i64(2, &[vec![2, 1], vec![0, 1]]).unwrap()).unwrap(), 2.into());
        let a = IntMatrix::from_i64(3, &[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).unwrap();
        assert_eq!(int_determinant(&a).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn dimension_mismatch_reported() {
        let a = qm(2, &[vec![1, 0]]);
        assert!(matches!(solve_rational(&a, &[q(1), q(2)]), Err(LinalgError::DimensionMismatch { .. })));
    }
}
