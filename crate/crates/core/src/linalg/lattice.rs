use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{smith_normal_form, IntMatrix, LinalgError};

/// Finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`, `t_i | t_{i+1}`, `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::io::ser_bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^rows / (column span of a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let d = smith_normal_form(a);
    let torsion = d.invariant_factors().into_iter().filter(|x| !x.is_one()).collect();
    AbelianGroup { free_rank: a.rows() - d.rank, torsion }
}

/// Basis of `{x in Z^cols : a x = 0}`, one vector per entry.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_normal_form(a);
    (d.rank..a.cols()).map(|j| d.v.column(j)).collect()
}

/// An integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let d = smith_normal_form(a);
    let c = d.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < d.rank {
            let (q, r) = ci.div_rem(&d.s[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(d.v.mul_vec(&y)?))
}

/// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &IntMatrix) -> IntMatrix {
    let (m, n) = rows.shape();
    let mut h = rows.clone();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..m).filter(|&i| !h[(i, col)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| h[(i, col)].abs()).expect("nonempty");
            h.swap_rows(r, p);
            let piv = h[(r, col)].clone();
            let mut done = true;
            for i in r + 1..m {
                if !h[(i, col)].is_zero() {
                    let q = h[(i, col)].div_floor(&piv);
                    let src = h.row(r).to_vec();
                    for (x, s) in h.row_mut(i).iter_mut().zip(src) {
                        *x -= &q * s;
                    }
                    if !h[(i, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m && !h[(r, col)].is_zero() {
            if h[(r, col)].is_negative() {
                for x in h.row_mut(r) {
                    *x = -&*x;
                }
            }
            let piv = h[(r, col)].clone();
            for i in 0..r {
                let q = h[(i, col)].div_floor(&piv);
                if !q.is_zero() {
                    let src = h.row(r).to_vec();
                    for (x, s) in h.row_mut(i).iter_mut().zip(src) {
                        *x -= &q * s;
                    }
                }
            }
            r += 1;
        }
    }
    let kept: Vec<usize> = (0..r).collect();
    let cols: Vec<usize> = (0..n).collect();
    h.submatrix(&kept, &cols)
}

/// Basis (in Hermite form) of `(Q-span of the rows) ∩ Z^cols`.
pub fn saturate(rows: &IntMatrix) -> IntMatrix {
    let n = rows.cols();
    let kernel = integer_kernel(rows);
    let k = IntMatrix::from_rows(n, &kernel).expect("kernel vectors have full length");
    let sat = integer_kernel(&k);
    hermite_normal_form(&IntMatrix::from_rows(n, &sat).expect("kernel vectors have full length"))
}

/// True when both row sets span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && hermite_normal_form(a) == hermite_normal_form(b)
}

/// Gcd of all entries; zero for the zero matrix.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(cols, rows).unwrap()
    }

    #[test]
    fn cokernel_of_diagonal() {
        let a = int(2, &[vec![2, 0], vec![0, 3], vec![0, 0]]);
        let g = cokernel(&a);
        assert_eq!(g, AbelianGroup { free_rank: 1, torsion: vec![BigInt::from(6)] });
        assert_eq!(g.to_string(), "Z + Z/6");
    }

    #[test]
    fn saturation_of_a_scaled_line() {
        let l = int(2, &[vec![2, 4]]);
        assert_eq!(saturate(&l), int(2, &[vec![1, 2]]));
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        let a = int(1, &[vec![2]]);
        assert_eq!(solve_integer(&a, &[BigInt::from(4)]).unwrap(), Some(vec![BigInt::from(2)]));
        assert_eq!(solve_integer(&a, &[BigInt::from(3)]).unwrap(), None);
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = int(3, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let b = int(3, &[vec![5, 7, 9], vec![1, 2, 3]]);
        assert!(same_lattice(&a, &b));
        let c = int(3, &[vec![2, 4, 6], vec![4, 5, 6]]);
        assert!(!same_lattice(&a, &c));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let a = int(3, &[vec![1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }
}
