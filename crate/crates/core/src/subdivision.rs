//! Order-`m` subdivisions of complexes of dimension at most two.
//!
//! Each new simplex is a cell of a unimodular triangulation of `m` times its host,
//! the smallest old simplex containing it. Cells are keyed by host and by the
//! lattice coordinates of their vertices in the host; vertices are listed in
//! lex-descending coordinate order, which agrees with every face map.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, RawSimplex, SimplexId, WeakTropicalComplex};
use crate::divisor::{PLFunction, RidgeDivisor};
use crate::linalg::{solve_rational, RationalMatrix};
use crate::point::{PointOutsideComplex, RationalPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("subdivision is implemented up to dimension 2, not {0}")]
    UnsupportedDimension(usize),
    #[error("subdivision order must be positive")]
    ZeroOrder,
    #[error("order {to} is not a multiple of order {from}")]
    IncompatibleOrders { from: u32, to: u32 },
    #[error("refined structure constant at ridge `{ridge}` is not integral: {value}")]
    NonIntegralConstant { ridge: String, value: String },
    #[error("refined complex is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Point(#[from] PointOutsideComplex),
}

type Cell = Vec<Vec<u32>>;

/// Lattice triangulation of `m` times the standard `k`-simplex by unimodular simplices.
pub trait UnimodularTriangulation: Send + Sync {
    /// Maximal cells; each point has `k + 1` coordinates summing to `m`.
    fn maximal_cells(&self, k: usize, m: u32) -> Result<Vec<Cell>, SubdivisionError>;
}

/// Cut by all hyperplanes `x_i = c`, `c` integral. Invariant under permuting coordinates.
#[derive(Clone, Copy, Debug, Default)]
pub struct Staircase;

impl UnimodularTriangulation for Staircase {
    fn maximal_cells(&self, k: usize, m: u32) -> Result<Vec<Cell>, SubdivisionError> {
        match k {
            0 => Ok(vec![vec![vec![m]]]),
            1 => Ok((1..=m).map(|a| vec![vec![a, m - a], vec![a - 1, m - a + 1]]).collect()),
            2 => {
                let mut cells = Vec::new();
                for i in 0..m {
                    for j in 0..m - i {
                        let k = m - 1 - i - j;
                        cells.push(vec![vec![i + 1, j, k], vec![i, j + 1, k], vec![i, j, k + 1]]);
                    }
                }
                if m >= 2 {
                    for i in 0..m - 1 {
                        for j in 0..m - 1 - i {
                            let k = m - 2 - i - j;
                            cells.push(vec![vec![i, j + 1, k + 1], vec![i + 1, j, k + 1], vec![i + 1, j + 1, k]]);
                        }
                    }
                }
                Ok(cells)
            }
            k => Err(SubdivisionError::UnsupportedDimension(k)),
        }
    }
}

/// The old simplex carrying a new one, with the new vertices' coordinates in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Host {
    pub simplex: SimplexId,
    pub coords: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    order: u32,
    base: WeakTropicalComplex,
    refined: WeakTropicalComplex,
    hosts: Vec<Vec<Host>>,
    by_host: HashMap<SimplexId, Vec<SimplexId>>,
    by_key: HashMap<(SimplexId, Cell), SimplexId>,
}

/// Cells of `m Δ_k` with full support, grouped by dimension.
fn interior_cells(tri: &dyn UnimodularTriangulation, k: usize, m: u32) -> Result<Vec<Vec<Cell>>, SubdivisionError> {
    let mut by_dim: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); k + 1];
    for cell in tri.maximal_cells(k, m)? {
        let size = cell.len();
        for mask in 1u32..(1 << size) {
            let mut sub: Cell = (0..size).filter(|i| mask & (1 << i) != 0).map(|i| cell[i].clone()).collect();
            let full = (0..=k).all(|t| sub.iter().any(|p| p[t] > 0));
            if full {
                sub.sort_by(|a, b| b.cmp(a));
                by_dim[sub.len() - 1].insert(sub);
            }
        }
    }
    Ok(by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn is_host_itself(cell: &Cell, m: u32) -> bool {
    cell.len() == cell[0].len()
        && cell.iter().enumerate().all(|(i, p)| p.iter().enumerate().all(|(t, &x)| x == if t == i { m } else { 0 }))
}

fn cell_name(host: &str, cell: &Cell) -> String {
    let pts: Vec<String> = cell.iter().map(|p| p.iter().map(u32::to_string).collect::<Vec<_>>().join(".")).collect();
    format!("{host}|{}", pts.join("-"))
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn subdivide(w: &WeakTropicalComplex, m: u32) -> Result<Subdivision, SubdivisionError> {
    subdivide_with(w, m, &Staircase)
}

pub fn subdivide_with(
    w: &WeakTropicalComplex,
    m: u32,
    tri: &dyn UnimodularTriangulation,
) -> Result<Subdivision, SubdivisionError> {
    let n = w.dim();
    if n > 2 {
        return Err(SubdivisionError::UnsupportedDimension(n));
    }
    if m == 0 {
        return Err(SubdivisionError::ZeroOrder);
    }
    let c = w.complex();
    let templates: Vec<Vec<Vec<Cell>>> = (0..=n).map(|k| interior_cells(tri, k, m)).collect::<Result<_, _>>()?;
    let mut raws = Vec::new();
    let mut hosts: Vec<Vec<Host>> = vec![Vec::new(); n + 1];
    let mut by_key: HashMap<(SimplexId, Cell), SimplexId> = HashMap::new();
    let mut by_host: HashMap<SimplexId, Vec<SimplexId>> = HashMap::new();
    let mut names: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for d in 0..=n {
        for k in d..=n {
            for s in c.simplices(k) {
                for cell in &templates[k][d] {
                    let name = if is_host_itself(cell, m) { c.id(s).to_string() } else { cell_name(c.id(s), cell) };
                    let mut faces = Vec::new();
                    if d > 0 {
                        for i in 0..=d {
                            let sub: Cell =
                                cell.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
                            let keep: Vec<usize> = (0..=k).filter(|&t| sub.iter().any(|p| p[t] > 0)).collect();
                            let fhost = c.face_at_positions(s, &keep);
                            let fcell: Cell = sub.iter().map(|p| keep.iter().map(|&t| p[t]).collect()).collect();
                            let fid = by_key.get(&(fhost, fcell)).ok_or_else(|| {
                                SubdivisionError::Inconsistent(format!("face {i} of `{name}` is missing"))
                            })?;
                            faces.push(names[d - 1][fid.index].clone());
                        }
                    }
                    let sid = SimplexId::new(d, hosts[d].len());
                    by_key.insert((s, cell.clone()), sid);
                    by_host.entry(s).or_default().push(sid);
                    hosts[d].push(Host { simplex: s, coords: cell.clone() });
                    names[d].push(name.clone());
                    raws.push(RawSimplex { id: name, dim: d, faces });
                }
            }
        }
    }
    let refined = build_complex(n, &raws).map_err(|e| SubdivisionError::Inconsistent(e.to_string()))?;
    let mut alpha = Vec::with_capacity(refined.count(n - 1));
    for r in refined.simplices(n - 1) {
        let host = &hosts[n - 1][r.index];
        let rhs: Vec<BigRational>;
        let y: Vec<Vec<BigRational>>;
        if host.simplex.dim == n {
            // Midpoint of the two apexes, written in the ridge's vertices.
            let cof = refined.cofaces(r);
            if cof.len() != 2 {
                return Err(SubdivisionError::Inconsistent(format!(
                    "interior ridge `{}` lies in {} facets",
                    refined.id(r),
                    cof.len()
                )));
            }
            let mut mid = vec![BigRational::zero(); n + 1];
            for &f in cof {
                let fs = SimplexId::new(n, f);
                let j = refined.faces(fs).iter().position(|&x| x == r.index).expect("ridge is a face");
                let apex = &hosts[n][f].coords[j];
                for (t, &x) in apex.iter().enumerate() {
                    mid[t] += BigRational::new(BigInt::from(x), BigInt::from(2));
                }
            }
            rhs = mid;
            y = (0..=n).map(|t| host.coords.iter().map(|p| q(p[t] as i64)).collect()).collect();
        } else {
            let old_r = host.simplex.index;
            let mut total: Vec<BigRational> = w.alpha_row(old_r).iter().map(|&a| q(a)).collect();
            for &f in refined.cofaces(r) {
                let fhost = &hosts[n][f];
                let fs = SimplexId::new(n, f);
                let j_new = refined.faces(fs).iter().position(|&x| x == r.index).expect("ridge is a face");
                let j_old = c.faces(fhost.simplex).iter().position(|&x| x == old_r).ok_or_else(|| {
                    SubdivisionError::Inconsistent(format!("`{}` does not bound its host facet", refined.id(r)))
                })?;
                let apex = &fhost.coords[j_new];
                let mut t_r = 0;
                for (t, &x) in apex.iter().enumerate() {
                    if t != j_old {
                        total[t_r] += q(x as i64);
                        t_r += 1;
                    }
                }
            }
            rhs = total;
            y = (0..n).map(|t| host.coords.iter().map(|p| q(p[t] as i64)).collect()).collect();
        }
        let ymat = RationalMatrix::from_rows(n, &y).expect("rows have n entries");
        let sol = solve_rational(&ymat, &rhs).map_err(|_| {
            SubdivisionError::Inconsistent(format!("no constants solve the transfer at `{}`", refined.id(r)))
        })?;
        let factor = if host.simplex.dim == n { q(2) } else { BigRational::one() };
        let mut row = Vec::with_capacity(n);
        for v in sol {
            let v = v * &factor;
            let int = v.is_integer().then(|| v.to_integer().to_i64()).flatten().ok_or_else(|| {
                SubdivisionError::NonIntegralConstant { ridge: refined.id(r).to_string(), value: v.to_string() }
            })?;
            row.push(int);
        }
        alpha.push(row);
    }
    let refined = WeakTropicalComplex::new(refined, alpha).map_err(|e| match e {
        ComplexError::RidgeIdentityViolated { .. } => SubdivisionError::Inconsistent(e.to_string()),
        other => SubdivisionError::Inconsistent(other.to_string()),
    })?;
    Ok(Subdivision { order: m, base: w.clone(), refined, hosts, by_host, by_key })
}

impl Subdivision {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn base(&self) -> &WeakTropicalComplex {
        &self.base
    }

    pub fn complex(&self) -> &WeakTropicalComplex {
        &self.refined
    }

    pub fn host(&self, s: SimplexId) -> &Host {
        &self.hosts[s.dim][s.index]
    }

    /// Position of a new vertex as a point of the base complex.
    pub fn vertex_point(&self, v: usize) -> RationalPoint {
        self.barycenter(SimplexId::new(0, v))
    }

    /// Barycenter of a new simplex as a point of the base complex.
    pub fn barycenter(&self, s: SimplexId) -> RationalPoint {
        let h = self.host(s);
        let k = h.simplex.dim;
        let den = BigInt::from(self.order) * BigInt::from(h.coords.len());
        let coords = (0..=k)
            .map(|t| BigRational::new(BigInt::from(h.coords.iter().map(|p| p[t] as u64).sum::<u64>()), den.clone()))
            .collect();
        RationalPoint::at(self.base.complex(), h.simplex, coords).expect("barycenters lie in their host")
    }

    /// A point of the refined complex in base coordinates.
    pub fn to_base(&self, p: &RationalPoint) -> RationalPoint {
        let h = self.host(p.simplex());
        let m = BigRational::from_integer(BigInt::from(self.order));
        let coords = (0..=h.simplex.dim)
            .map(|t| p.coords().iter().zip(&h.coords).map(|(l, pt)| l * q(pt[t] as i64)).sum::<BigRational>() / &m)
            .collect();
        RationalPoint::at(self.base.complex(), h.simplex, coords).expect("convex combination stays in the host")
    }

    /// The new simplex whose relative interior contains `p` (a point of the base complex).
    pub fn locate(&self, p: &RationalPoint) -> Result<SimplexId, SubdivisionError> {
        let p = p.minimal(self.base.complex());
        let scale = BigRational::from_integer(BigInt::from(self.order));
        let x: Vec<BigRational> = p.coords().iter().map(|c| c * &scale).collect();
        if x.iter().all(BigRational::is_integer) {
            let key: Vec<u32> = x.iter().map(|c| c.to_integer().to_u32().expect("bounded by order")).collect();
            if let Some(&v) = self.by_key.get(&(p.simplex(), vec![key])) {
                return Ok(v);
            }
        }
        let cells = self.by_host.get(&p.simplex()).map(Vec::as_slice).unwrap_or(&[]);
        for &cell in cells {
            let pts = &self.host(cell).coords;
            let rows: Vec<Vec<BigRational>> =
                (0..x.len()).map(|t| pts.iter().map(|pt| q(pt[t] as i64)).collect()).collect();
            let a = RationalMatrix::from_rows(pts.len(), &rows).expect("rectangular");
            if let Ok(lambda) = solve_rational(&a, &x) {
                if lambda.iter().all(|l| l.is_positive()) {
                    return Ok(cell);
                }
            }
        }
        Err(SubdivisionError::Inconsistent("point not covered by any cell".into()))
    }

    /// The new vertex at `p`, if `p` is a lattice point of this subdivision.
    pub fn vertex_at(&self, p: &RationalPoint) -> Result<Option<usize>, SubdivisionError> {
        let s = self.locate(p)?;
        Ok((s.dim == 0).then_some(s.index))
    }

    /// New ridges whose closure contains `p`.
    pub fn ridges_containing(&self, p: &RationalPoint) -> Result<Vec<usize>, SubdivisionError> {
        let s = self.locate(p)?;
        let n = self.refined.dim();
        Ok(self.refined.complex().star(s).into_iter().filter(|t| t.dim + 1 == n).map(|t| t.index).collect())
    }

    /// PL function on the base, rescaled to this order: value at a new vertex is `sum_i x_i phi(v_i)`.
    pub fn transfer_pl(&self, phi: &PLFunction) -> PLFunction {
        let base = self.base.complex();
        let values = (0..self.refined.num_vertices())
            .map(|v| {
                let h = self.host(SimplexId::new(0, v));
                let verts = base.vertices(h.simplex);
                h.coords[0].iter().zip(verts).map(|(&x, &bv)| q(x as i64) * &phi.values[bv]).sum()
            })
            .collect();
        PLFunction { order: phi.order * self.order, values }
    }

    /// Ridge divisor of the base read on this subdivision.
    pub fn pull_divisor(&self, d: &RidgeDivisor) -> RidgeDivisor {
        let n = self.refined.dim();
        let coeffs = (0..self.refined.num_ridges())
            .map(|r| {
                let h = self.host(SimplexId::new(n - 1, r));
                if h.simplex.dim == n - 1 {
                    d.coeffs[h.simplex.index].clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        RidgeDivisor { order: d.order * self.order, coeffs }
    }
}

/// Re-expresses a divisor living on `from` on the finer subdivision `to` of the same base.
pub fn reexpress(from: &Subdivision, to: &Subdivision, d: &RidgeDivisor) -> Result<RidgeDivisor, SubdivisionError> {
    if !to.order.is_multiple_of(from.order) {
        return Err(SubdivisionError::IncompatibleOrders { from: from.order, to: to.order });
    }
    if from.order == 1 {
        return Ok(to.pull_divisor(d));
    }
    let n = to.refined.dim();
    let mut coeffs = Vec::with_capacity(to.refined.num_ridges());
    for r in 0..to.refined.num_ridges() {
        let cell = from.locate(&to.barycenter(SimplexId::new(n - 1, r)))?;
        coeffs.push(if cell.dim + 1 == n { d.coeffs[cell.index].clone() } else { BigRational::zero() });
    }
    Ok(RidgeDivisor { order: to.order, coeffs })
}

/// Smallest subdivision in which `p` is a vertex.
pub fn promote_point(w: &WeakTropicalComplex, p: &RationalPoint) -> Result<(Subdivision, usize), SubdivisionError> {
    let m = p.denominator().to_u32().ok_or(SubdivisionError::ZeroOrder)?;
    let sub = subdivide(w, m)?;
    let v = sub.vertex_at(p)?.ok_or_else(|| SubdivisionError::Inconsistent("promoted point is not a vertex".into()))?;
    Ok((sub, v))
}
