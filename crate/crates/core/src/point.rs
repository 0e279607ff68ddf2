//! Rational points given by barycentric coordinates on a simplex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{DeltaComplex, SimplexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("point outside complex: {0}")]
pub struct PointOutsideComplex(pub String);

/// Barycentric coordinates are nonnegative, sum to one and follow the simplex's vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    simplex: SimplexId,
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(complex: &DeltaComplex, simplex: &str, coords: Vec<BigRational>) -> Result<Self, PointOutsideComplex> {
        let sid = complex.lookup(simplex).ok_or_else(|| PointOutsideComplex(format!("unknown simplex `{simplex}`")))?;
        Self::at(complex, sid, coords)
    }

    pub fn at(
        complex: &DeltaComplex,
        simplex: SimplexId,
        coords: Vec<BigRational>,
    ) -> Result<Self, PointOutsideComplex> {
        if simplex.dim > complex.dim() || simplex.index >= complex.count(simplex.dim) {
            return Err(PointOutsideComplex(format!("no simplex {simplex:?}")));
        }
        if coords.len() != simplex.dim + 1 {
            return Err(PointOutsideComplex(format!(
                "`{}` needs {} coordinates, got {}",
                complex.id(simplex),
                simplex.dim + 1,
                coords.len()
            )));
        }
        if coords.iter().any(Signed::is_negative) {
            return Err(PointOutsideComplex("negative barycentric coordinate".into()));
        }
        let total: BigRational = coords.iter().sum();
        if !total.is_one() {
            return Err(PointOutsideComplex(format!("coordinates sum to {total}, not 1")));
        }
        Ok(RationalPoint { simplex, coords })
    }

    pub fn from_ints(
        complex: &DeltaComplex,
        simplex: &str,
        nums: &[i64],
        den: i64,
    ) -> Result<Self, PointOutsideComplex> {
        let coords = nums.iter().map(|&x| BigRational::new(x.into(), den.into())).collect();
        Self::new(complex, simplex, coords)
    }

    pub fn vertex(v: usize) -> Self {
        RationalPoint { simplex: SimplexId::new(0, v), coords: vec![BigRational::one()] }
    }

    pub fn simplex(&self) -> SimplexId {
        self.simplex
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The same point on the smallest face containing it; all coordinates positive.
    pub fn minimal(&self, complex: &DeltaComplex) -> RationalPoint {
        let keep: Vec<usize> = (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect();
        RationalPoint {
            simplex: complex.face_at_positions(self.simplex, &keep),
            coords: keep.iter().map(|&i| self.coords[i].clone()).collect(),
        }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}
