//! Ridge divisors, piecewise-linear functions and their divisors.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{SimplexId, WeakTropicalComplex};
use crate::linalg::{
    cokernel, integer_kernel, left_kernel, primitive_integer_vector, saturate, solve_integer, solve_rational,
    AbelianGroup, IntMatrix, LinalgError,
};
use crate::point::{PointOutsideComplex, RationalPoint};
use crate::subdivision::{reexpress, subdivide, Subdivision, SubdivisionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("function has a non-integral slope on `{simplex}`")]
    NonIntegralSlopes { simplex: String },
    #[error("unknown ridge `{0}`")]
    UnknownRidgeId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertexId(String),
    #[error(transparent)]
    PointOutsideComplex(#[from] PointOutsideComplex),
    #[error("divisor has a non-integral coefficient on `{ridge}`")]
    NonIntegral { ridge: String },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finitely supported rational combination of ridges of a complex at subdivision order `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RidgeDivisor {
    pub order: u32,
    pub coeffs: Vec<BigRational>,
}

impl RidgeDivisor {
    pub fn zero(num_ridges: usize, order: u32) -> Self {
        RidgeDivisor { order, coeffs: vec![BigRational::zero(); num_ridges] }
    }

    pub fn from_integers(order: u32, coeffs: &[i64]) -> Self {
        RidgeDivisor { order, coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    /// Divisor from `(ridge id, coefficient)` pairs; unnamed ridges get zero.
    pub fn from_named(
        w: &WeakTropicalComplex,
        order: u32,
        entries: &[(String, BigRational)],
    ) -> Result<Self, DivisorError> {
        let mut d = Self::zero(w.num_ridges(), order);
        for (id, c) in entries {
            let r = w.ridge_index(id).ok_or_else(|| DivisorError::UnknownRidgeId(id.clone()))?;
            d.coeffs[r] += c;
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&r| !self.coeffs[r].is_zero()).collect()
    }

    pub fn scaled(&self, f: &BigRational) -> Self {
        RidgeDivisor { order: self.order, coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "divisors on different complexes");
        RidgeDivisor { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-BigRational::one()))
    }

    /// Integer coefficients, or the first ridge carrying a fraction.
    pub fn integer_coeffs(&self, w: &WeakTropicalComplex) -> Result<Vec<BigInt>, DivisorError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(r, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(DivisorError::NonIntegral { ridge: w.ridge_id(r).to_string() })
                }
            })
            .collect()
    }

    /// Nonzero coefficients keyed by ridge id.
    pub fn named(&self, w: &WeakTropicalComplex) -> BTreeMap<String, BigRational> {
        self.support().into_iter().map(|r| (w.ridge_id(r).to_string(), self.coeffs[r].clone())).collect()
    }
}

/// Function on the vertices of a complex at subdivision order `order`, extended linearly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLFunction {
    pub order: u32,
    pub values: Vec<BigRational>,
}

impl PLFunction {
    pub fn zero(num_vertices: usize, order: u32) -> Self {
        PLFunction { order, values: vec![BigRational::zero(); num_vertices] }
    }

    pub fn from_integers(order: u32, values: &[i64]) -> Self {
        PLFunction { order, values: values.iter().map(|&c| BigRational::from_integer(c.into())).collect() }
    }

    pub fn from_bigints(order: u32, values: &[BigInt]) -> Self {
        PLFunction { order, values: values.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    pub fn named(&self, w: &WeakTropicalComplex) -> BTreeMap<String, BigRational> {
        (0..self.values.len()).map(|v| (w.vertex_id(v).to_string(), self.values[v].clone())).collect()
    }
}

fn int_q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Integer matrix of the divisor map, ridges by vertices.
pub fn div_matrix(w: &WeakTropicalComplex) -> IntMatrix {
    let mut a = IntMatrix::zeros(w.num_ridges(), w.num_vertices());
    for r in 0..w.num_ridges() {
        for &f in w.facets_of(r) {
            a[(r, w.apex(f, r))] += BigInt::one();
        }
        for (i, &v) in w.ridge_vertices(r).iter().enumerate() {
            a[(r, v)] -= BigInt::from(w.alpha(r, i));
        }
    }
    a
}

/// Sparse rows of the divisor map: `(vertex, coefficient)` pairs per ridge.
pub fn div_rows(w: &WeakTropicalComplex) -> Vec<Vec<(usize, i64)>> {
    (0..w.num_ridges())
        .map(|r| {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for &f in w.facets_of(r) {
                *row.entry(w.apex(f, r)).or_default() += 1;
            }
            for (i, &v) in w.ridge_vertices(r).iter().enumerate() {
                *row.entry(v).or_default() -= w.alpha(r, i);
            }
            row.into_iter().filter(|&(_, c)| c != 0).collect()
        })
        .collect()
}

/// Checks that `phi` changes by an integer along every edge.
pub fn check_integral_slopes(w: &WeakTropicalComplex, phi: &PLFunction) -> Result<(), DivisorError> {
    let c = w.complex();
    if phi.values.len() != w.num_vertices() {
        return Err(DivisorError::SizeMismatch { expected: w.num_vertices(), found: phi.values.len() });
    }
    for e in c.simplices(1) {
        let vs = c.vertices(e);
        if !(&phi.values[vs[1]] - &phi.values[vs[0]]).is_integer() {
            return Err(DivisorError::NonIntegralSlopes { simplex: c.id(e).to_string() });
        }
    }
    Ok(())
}

/// `coeff_r = sum over facets f ⊃ r of phi(apex) - sum_i alpha(r, i) phi(v_i)`.
pub fn div_pl(w: &WeakTropicalComplex, phi: &PLFunction) -> Result<RidgeDivisor, DivisorError> {
    check_integral_slopes(w, phi)?;
    let coeffs =
        div_rows(w).into_iter().map(|row| row.into_iter().map(|(v, c)| int_q(c) * &phi.values[v]).sum()).collect();
    Ok(RidgeDivisor { order: phi.order, coeffs })
}

/// Divisor from per-ridge intersection numbers.
pub fn assemble_specialization(
    w: &WeakTropicalComplex,
    intersections: &[(String, i64)],
) -> Result<RidgeDivisor, DivisorError> {
    let entries: Vec<(String, BigRational)> = intersections.iter().map(|(r, v)| (r.clone(), int_q(*v))).collect();
    RidgeDivisor::from_named(w, 1, &entries)
}

/// `sum_r (deg r - 2) [r]`.
pub fn canonical_divisor(w: &WeakTropicalComplex) -> RidgeDivisor {
    RidgeDivisor::from_integers(1, &w.canonical_coefficients())
}

/// Equations of the divisor map restricted to ridges containing a simplex.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub center: SimplexId,
    pub ridges: Vec<usize>,
    pub vertices: Vec<usize>,
    /// Rows follow `ridges`, columns follow `vertices`.
    pub matrix: IntMatrix,
}

pub fn local_system(w: &WeakTropicalComplex, center: SimplexId) -> LocalSystem {
    let c = w.complex();
    let n = w.dim();
    let star = c.star(center);
    let ridges: Vec<usize> = star.iter().filter(|s| s.dim + 1 == n).map(|s| s.index).collect();
    let vertices: Vec<usize> =
        star.iter().flat_map(|s| c.vertices(*s).iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let rows = div_rows(w);
    let mut matrix = IntMatrix::zeros(ridges.len(), vertices.len());
    for (i, &r) in ridges.iter().enumerate() {
        for &(v, coef) in &rows[r] {
            let j = vertices.binary_search(&v).expect("facets through a ridge lie in the star");
            matrix[(i, j)] = BigInt::from(coef);
        }
    }
    LocalSystem { center, ridges, vertices, matrix }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CartierMode {
    /// Local function with integral slopes.
    Integral,
    /// Local function after scaling the divisor by some positive integer.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierVerdict {
    pub holds: bool,
    pub mode: CartierMode,
    /// Smallest simplex containing the point.
    pub simplex: SimplexId,
    /// Local function on the star vertices when `holds`.
    pub local_function: Option<Vec<(usize, BigRational)>>,
    /// Left-kernel vector of the local system pairing nonzero with the divisor, when the rational test fails.
    pub obstruction: Option<Vec<BigInt>>,
}

/// Whether `d` agrees near `p` with the divisor of a local PL function.
pub fn is_cartier_at(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    p: &RationalPoint,
    mode: CartierMode,
) -> Result<CartierVerdict, DivisorError> {
    if d.len() != w.num_ridges() {
        return Err(DivisorError::SizeMismatch { expected: w.num_ridges(), found: d.len() });
    }
    let c = w.complex();
    if p.simplex().dim > c.dim() || p.simplex().index >= c.count(p.simplex().dim) {
        return Err(PointOutsideComplex(format!("no simplex {:?}", p.simplex())).into());
    }
    let sigma = p.minimal(c).simplex();
    let sys = local_system(w, sigma);
    let rhs: Vec<BigRational> = sys.ridges.iter().map(|&r| d.coeffs[r].clone()).collect();
    let verdict = |holds, local: Option<Vec<(usize, BigRational)>>, obstruction| CartierVerdict {
        holds,
        mode,
        simplex: sigma,
        local_function: local,
        obstruction,
    };
    if sys.ridges.is_empty() {
        return Ok(verdict(true, Some(sys.vertices.iter().map(|&v| (v, BigRational::zero())).collect()), None));
    }
    match mode {
        CartierMode::Rational => match solve_rational(&sys.matrix.to_rational(), &rhs) {
            Ok(x) => Ok(verdict(true, Some(sys.vertices.iter().copied().zip(x).collect()), None)),
            Err(LinalgError::Inconsistent { certificate }) => Ok(verdict(false, None, Some(certificate))),
            Err(e) => Err(e.into()),
        },
        CartierMode::Integral => {
            if !rhs.iter().all(BigRational::is_integer) {
                return Ok(verdict(false, None, None));
            }
            let b: Vec<BigInt> = rhs.iter().map(BigRational::to_integer).collect();
            match solve_integer(&sys.matrix, &b)? {
                Some(x) => {
                    let vals = x.into_iter().map(BigRational::from_integer);
                    Ok(verdict(true, Some(sys.vertices.iter().copied().zip(vals).collect()), None))
                }
                None => Ok(verdict(false, None, None)),
            }
        }
    }
}

/// Integer linear forms on ridge divisors cutting out the Q-Cartier condition at each
/// `(n-2)`-simplex, plus vanishing on facetless ridges whose constants are all zero.
/// Each row is tagged with the simplex it comes from.
pub fn weil_constraints(w: &WeakTropicalComplex) -> Vec<(SimplexId, Vec<BigInt>)> {
    let n = w.dim();
    let nr = w.num_ridges();
    let mut out = Vec::new();
    if n >= 2 {
        for q in w.complex().simplices(n - 2) {
            let sys = local_system(w, q);
            for y in left_kernel(&sys.matrix.to_rational()) {
                let y = primitive_integer_vector(&y);
                let mut row = vec![BigInt::zero(); nr];
                for (i, &r) in sys.ridges.iter().enumerate() {
                    row[r] += &y[i];
                }
                out.push((q, row));
            }
        }
    }
    for r in 0..nr {
        if w.degree(r) == 0 && w.alpha_row(r).iter().all(|&a| a == 0) {
            let mut row = vec![BigInt::zero(); nr];
            row[r] = BigInt::one();
            out.push((w.ridge(r), row));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilReport {
    pub holds: bool,
    /// Simplices where the divisor is not locally Q-Cartier.
    pub failing: Vec<String>,
}

pub fn is_weil(w: &WeakTropicalComplex, d: &RidgeDivisor) -> Result<WeilReport, DivisorError> {
    if d.len() != w.num_ridges() {
        return Err(DivisorError::SizeMismatch { expected: w.num_ridges(), found: d.len() });
    }
    let mut failing = BTreeSet::new();
    for (s, row) in weil_constraints(w) {
        let pairing: BigRational =
            row.iter().zip(&d.coeffs).map(|(a, c)| BigRational::from_integer(a.clone()) * c).sum();
        if !pairing.is_zero() {
            failing.insert(s);
        }
    }
    let failing: Vec<String> = failing.into_iter().map(|s| w.complex().id(s).to_string()).collect();
    Ok(WeilReport { holds: failing.is_empty(), failing })
}

/// Basis (rows, Hermite form) of the integral Weil divisors inside `Z^ridges`.
pub fn weil_lattice(w: &WeakTropicalComplex) -> IntMatrix {
    let nr = w.num_ridges();
    let rows: Vec<Vec<BigInt>> = weil_constraints(w).into_iter().map(|(_, r)| r).collect();
    let c = IntMatrix::from_rows(nr, &rows).expect("constraint rows span all ridges");
    let kernel = integer_kernel(&c);
    saturate(&IntMatrix::from_rows(nr, &kernel).expect("kernel vectors span all ridges"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassGroupScope {
    AllRidges,
    WeilOnly,
}

/// Integral divisors of the given scope modulo divisors of integral PL functions.
pub fn class_group(w: &WeakTropicalComplex, scope: ClassGroupScope) -> Result<AbelianGroup, DivisorError> {
    let a = div_matrix(w);
    match scope {
        ClassGroupScope::AllRidges => Ok(cokernel(&a)),
        ClassGroupScope::WeilOnly => {
            let basis = weil_lattice(w).transpose();
            let mut coords = Vec::with_capacity(a.cols());
            for j in 0..a.cols() {
                let col = a.column(j);
                let x = solve_integer(&basis, &col)?
                    .ok_or_else(|| LinalgError::Inconsistent { certificate: Vec::new() })?;
                coords.push(x);
            }
            let k = basis.cols();
            let m = IntMatrix::from_rows(k, &coords).expect("coordinates have basis length").transpose();
            Ok(cokernel(&m))
        }
    }
}

/// A PL function with integral slopes witnessing `d + div(phi) = d'` at subdivision `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub order: u32,
    pub phi: PLFunction,
}

impl EquivalenceCertificate {
    /// Recomputes `d + div(phi) - d'` on a freshly built subdivision.
    pub fn verify(
        &self,
        base: &WeakTropicalComplex,
        d: &RidgeDivisor,
        d2: &RidgeDivisor,
    ) -> Result<bool, DivisorError> {
        let target = subdivide(base, self.order)?;
        let lhs = lift(base, &target, d)?;
        let rhs = lift(base, &target, d2)?;
        let div = div_pl(target.complex(), &self.phi)?;
        Ok(lhs.plus(&div) == rhs)
    }
}

/// Reads a divisor of order `d.order` on the subdivision `target`.
pub fn lift(base: &WeakTropicalComplex, target: &Subdivision, d: &RidgeDivisor) -> Result<RidgeDivisor, DivisorError> {
    if d.order == target.order() {
        return Ok(d.clone());
    }
    if d.order == 0 || !target.order().is_multiple_of(d.order) {
        return Err(SubdivisionError::IncompatibleOrders { from: d.order, to: target.order() }.into());
    }
    if d.order == 1 {
        return Ok(target.pull_divisor(d));
    }
    let from = subdivide(base, d.order)?;
    Ok(reexpress(&from, target, d)?)
}

fn lcm_orders(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Searches subdivision orders up to `max_order` for an integral PL function with `d + div(phi) = d2`.
pub fn lin_equiv(
    base: &WeakTropicalComplex,
    d: &RidgeDivisor,
    d2: &RidgeDivisor,
    max_order: u32,
) -> Result<Option<EquivalenceCertificate>, DivisorError> {
    let step = lcm_orders(d.order.max(1), d2.order.max(1));
    let mut m = step;
    while m <= max_order {
        let sub = subdivide(base, m)?;
        let diff = lift(base, &sub, d2)?.minus(&lift(base, &sub, d)?);
        let w = sub.complex();
        if diff.is_integral() {
            let b = diff.integer_coeffs(w)?;
            if let Some(x) = solve_integer(&div_matrix(w), &b)? {
                let phi = PLFunction::from_bigints(m, &x);
                return Ok(Some(EquivalenceCertificate { order: m, phi }));
            }
        }
        m += step;
    }
    Ok(None)
}

/// Integer coefficient of a divisor as `i64`, for search kernels.
pub fn small_integer_coeffs(w: &WeakTropicalComplex, d: &RidgeDivisor) -> Result<Vec<i64>, DivisorError> {
    d.integer_coeffs(w)?
        .into_iter()
        .enumerate()
        .map(|(r, c)| c.to_i64().ok_or_else(|| DivisorError::NonIntegral { ridge: w.ridge_id(r).to_string() }))
        .collect()
}
