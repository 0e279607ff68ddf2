//! Regular Δ-complexes and weak tropical complexes.
//!
//! Face `i` of a simplex omits vertex `i`. Face maps commute and every simplex has
//! pairwise distinct faces, so the vertices of each simplex are pairwise distinct.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{characteristic_polynomial, real_root_signs, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

/// A simplex as supplied by the user: faces are referenced by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSimplex {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<String>,
}

impl RawSimplex {
    pub fn new(id: impl Into<String>, dim: usize, faces: &[&str]) -> Self {
        RawSimplex { id: id.into(), dim, faces: faces.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("duplicate simplex id `{0}`")]
    DuplicateId(String),
    #[error("simplex `{simplex}` references missing face `{face}`")]
    MissingFace { simplex: String, face: String },
    #[error("simplex `{simplex}` has a malformed face list: {reason}")]
    BadFaceList { simplex: String, reason: String },
    #[error("simplex `{simplex}` repeats a face")]
    NonRegular { simplex: String },
    #[error("complex is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("simplex `{simplex}` has dimension {dim} > {n}")]
    DimensionExceeded { simplex: String, dim: usize, n: usize },
    #[error("expected a simplex of dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("structure constants of ridge `{ridge}` sum to {sum}, but it lies in {degree} facets")]
    RidgeIdentityViolated { ridge: String, sum: i64, degree: usize },
    #[error("no structure constant for ridge `{ridge}` at vertex position {position}")]
    MissingStructureConstant { ridge: String, position: usize },
    #[error("structure constant for `{ridge}` at position {position} is invalid: {reason}")]
    BadStructureConstant { ridge: String, position: usize, reason: String },
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
}

#[derive(Clone, Debug)]
pub struct DeltaComplex {
    n: usize,
    ids: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    vertices: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<String, SimplexId>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Validates a regular, connected Δ-complex of dimension `n`.
pub fn build_complex(n: usize, simplices: &[RawSimplex]) -> Result<DeltaComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::InvalidDimension(n));
    }
    let mut ids: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    let mut lookup = HashMap::new();
    for s in simplices {
        if s.dim > n {
            return Err(ComplexError::DimensionExceeded { simplex: s.id.clone(), dim: s.dim, n });
        }
        let sid = SimplexId::new(s.dim, ids[s.dim].len());
        if lookup.insert(s.id.clone(), sid).is_some() {
            return Err(ComplexError::DuplicateId(s.id.clone()));
        }
        ids[s.dim].push(s.id.clone());
    }
    let mut faces: Vec<Vec<Vec<usize>>> = ids.iter().map(|v| vec![Vec::new(); v.len()]).collect();
    for s in simplices {
        let expected = if s.dim == 0 { 0 } else { s.dim + 1 };
        if s.faces.len() != expected {
            return Err(ComplexError::BadFaceList {
                simplex: s.id.clone(),
                reason: format!("expected {expected} faces, found {}", s.faces.len()),
            });
        }
        let sid = lookup[&s.id];
        let mut resolved = Vec::with_capacity(expected);
        for f in &s.faces {
            let fid =
                lookup.get(f).ok_or_else(|| ComplexError::MissingFace { simplex: s.id.clone(), face: f.clone() })?;
            if fid.dim + 1 != s.dim {
                return Err(ComplexError::BadFaceList {
                    simplex: s.id.clone(),
                    reason: format!("face `{f}` has dimension {}", fid.dim),
                });
            }
            resolved.push(fid.index);
        }
        let distinct: BTreeSet<usize> = resolved.iter().copied().collect();
        if distinct.len() != resolved.len() {
            return Err(ComplexError::NonRegular { simplex: s.id.clone() });
        }
        faces[sid.dim][sid.index] = resolved;
    }
    // face_i face_j = face_{j-1} face_i for i < j
    for d in 2..=n {
        for (idx, fs) in faces[d].iter().enumerate() {
            for j in 0..fs.len() {
                for i in 0..j {
                    let lhs = faces[d - 1][fs[j]][i];
                    let rhs = faces[d - 1][fs[i]][j - 1];
                    if lhs != rhs {
                        return Err(ComplexError::BadFaceList {
                            simplex: ids[d][idx].clone(),
                            reason: format!("face maps {i} and {j} do not commute"),
                        });
                    }
                }
            }
        }
    }
    let mut vertices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
    vertices.push((0..ids[0].len()).map(|v| vec![v]).collect());
    for d in 1..=n {
        let prev = &vertices[d - 1];
        let vs = faces[d]
            .iter()
            .map(|fs| {
                let mut v = vec![prev[fs[d]][0]];
                v.extend_from_slice(&prev[fs[0]]);
                v
            })
            .collect();
        vertices.push(vs);
    }
    let mut cofaces: Vec<Vec<Vec<usize>>> = ids.iter().map(|v| vec![Vec::new(); v.len()]).collect();
    for d in 1..=n {
        for (idx, fs) in faces[d].iter().enumerate() {
            for &f in fs {
                cofaces[d - 1][f].push(idx);
            }
        }
    }
    let nv = ids[0].len();
    if nv == 0 {
        return Err(ComplexError::Disconnected { components: 0 });
    }
    let mut uf = UnionFind((0..nv).collect());
    if n >= 1 {
        for vs in &vertices[1] {
            uf.union(vs[0], vs[1]);
        }
    }
    let components = (0..nv).filter(|&v| uf.find(v) == v).count();
    if components != 1 {
        return Err(ComplexError::Disconnected { components });
    }
    Ok(DeltaComplex { n, ids, faces, cofaces, vertices, lookup })
}

impl DeltaComplex {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn count(&self, dim: usize) -> usize {
        self.ids.get(dim).map_or(0, Vec::len)
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(dim)).map(move |i| SimplexId::new(dim, i))
    }

    pub fn id(&self, s: SimplexId) -> &str {
        &self.ids[s.dim][s.index]
    }

    pub fn ids(&self, dim: usize) -> &[String] {
        &self.ids[dim]
    }

    pub fn lookup(&self, id: &str) -> Option<SimplexId> {
        self.lookup.get(id).copied()
    }

    /// Indices of the `dim - 1` faces, in face order.
    pub fn faces(&self, s: SimplexId) -> &[usize] {
        &self.faces[s.dim][s.index]
    }

    /// Indices of the `dim + 1` simplices having `s` as a face.
    pub fn cofaces(&self, s: SimplexId) -> &[usize] {
        &self.cofaces[s.dim][s.index]
    }

    /// Ordered vertex indices.
    pub fn vertices(&self, s: SimplexId) -> &[usize] {
        &self.vertices[s.dim][s.index]
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.n).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }

    /// The face of `s` spanned by the vertex positions `keep` (strictly increasing).
    pub fn face_at_positions(&self, s: SimplexId, keep: &[usize]) -> SimplexId {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut cur = s;
        for pos in (0..=s.dim).rev() {
            if !keep.contains(&pos) {
                cur = SimplexId::new(cur.dim - 1, self.faces(cur)[pos]);
            }
        }
        cur
    }

    /// Positions of `inner`'s vertices inside `outer`, if `inner` is a face of `outer` (or equal).
    pub fn face_positions(&self, outer: SimplexId, inner: SimplexId) -> Option<Vec<usize>> {
        if inner.dim > outer.dim {
            return None;
        }
        let ov = self.vertices(outer);
        let pos: Option<Vec<usize>> = self.vertices(inner).iter().map(|v| ov.iter().position(|w| w == v)).collect();
        let pos = pos?;
        if pos.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        (self.face_at_positions(outer, &pos) == inner).then_some(pos)
    }

    pub fn is_face_of(&self, inner: SimplexId, outer: SimplexId) -> bool {
        self.face_positions(outer, inner).is_some()
    }

    /// All simplices having `s` as a face, `s` included, by dimension.
    pub fn star(&self, s: SimplexId) -> Vec<SimplexId> {
        let mut out = vec![s];
        let mut frontier = vec![s];
        for _ in s.dim..self.n {
            let mut next = BTreeSet::new();
            for t in &frontier {
                for &c in self.cofaces(*t) {
                    next.insert(SimplexId::new(t.dim + 1, c));
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().copied());
        }
        out
    }

    /// Raw records reproducing this complex.
    pub fn to_raw(&self) -> Vec<RawSimplex> {
        let mut out = Vec::new();
        for d in 0..=self.n {
            for s in self.simplices(d) {
                out.push(RawSimplex {
                    id: self.id(s).to_string(),
                    dim: d,
                    faces: self.faces(s).iter().map(|&f| self.ids[d - 1][f].clone()).collect(),
                });
            }
        }
        out
    }
}

/// Signature data of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Exact inertia from the characteristic polynomial.
pub fn inertia(m: &IntMatrix) -> Result<Inertia, ComplexError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(ComplexError::NotSymmetric);
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)] != m[(j, i)] {
                return Err(ComplexError::NotSymmetric);
            }
        }
    }
    let (positive, negative, zero) = real_root_signs(&characteristic_polynomial(m));
    debug_assert_eq!(positive + negative + zero, n);
    Ok(Inertia { positive, negative, zero })
}

/// Intersection matrix of the ridges around an `(n-2)`-simplex.
#[derive(Clone, Debug)]
pub struct LocalIntersectionMatrix {
    pub center: SimplexId,
    /// Ridge indices labelling rows and columns.
    pub ridges: Vec<usize>,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalInertia {
    pub simplex: String,
    pub inertia: Inertia,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalityReport {
    pub holds: bool,
    pub checked: Vec<LocalInertia>,
    pub failures: Vec<LocalInertia>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeViolation {
    pub ridge: String,
    pub sum: i64,
    pub degree: usize,
}

/// Δ-complex with integer constants `alpha[r][i]` attached to each ridge `r` and vertex position `i`.
#[derive(Clone, Debug)]
pub struct WeakTropicalComplex {
    complex: DeltaComplex,
    alpha: Vec<Vec<i64>>,
}

impl WeakTropicalComplex {
    /// Checks the shape of `alpha` and that each ridge's constants sum to its degree.
    pub fn new(complex: DeltaComplex, alpha: Vec<Vec<i64>>) -> Result<Self, ComplexError> {
        let w = Self::new_unchecked(complex, alpha)?;
        w.validate_ridge_identity()?;
        Ok(w)
    }

    /// Checks only the shape of `alpha`.
    pub fn new_unchecked(complex: DeltaComplex, alpha: Vec<Vec<i64>>) -> Result<Self, ComplexError> {
        let n = complex.dim();
        if alpha.len() != complex.count(n - 1) {
            return Err(ComplexError::BadStructureConstant {
                ridge: String::new(),
                position: 0,
                reason: format!("{} ridges but {} constant rows", complex.count(n - 1), alpha.len()),
            });
        }
        for (r, row) in alpha.iter().enumerate() {
            if row.len() != n {
                return Err(ComplexError::BadStructureConstant {
                    ridge: complex.ids(n - 1)[r].clone(),
                    position: row.len(),
                    reason: format!("expected {n} constants"),
                });
            }
        }
        Ok(WeakTropicalComplex { complex, alpha })
    }

    /// Builds from `(ridge id, vertex position, value)` entries.
    ///
    /// For `n = 1` missing entries default to the vertex degree.
    pub fn from_entries(complex: DeltaComplex, entries: &[(String, usize, i64)]) -> Result<Self, ComplexError> {
        let n = complex.dim();
        let mut alpha: Vec<Vec<Option<i64>>> = vec![vec![None; n]; complex.count(n - 1)];
        for (ridge, pos, value) in entries {
            let sid = complex.lookup(ridge).ok_or_else(|| ComplexError::UnknownSimplex(ridge.clone()))?;
            if sid.dim != n - 1 {
                return Err(ComplexError::WrongDimension { expected: n - 1, found: sid.dim });
            }
            if *pos >= n {
                return Err(ComplexError::BadStructureConstant {
                    ridge: ridge.clone(),
                    position: *pos,
                    reason: "vertex position out of range".into(),
                });
            }
            let slot = &mut alpha[sid.index][*pos];
            if slot.is_some_and(|v| v != *value) {
                return Err(ComplexError::BadStructureConstant {
                    ridge: ridge.clone(),
                    position: *pos,
                    reason: "conflicting values".into(),
                });
            }
            *slot = Some(*value);
        }
        let mut full = Vec::with_capacity(alpha.len());
        for (r, row) in alpha.into_iter().enumerate() {
            let rid = SimplexId::new(n - 1, r);
            let mut out = Vec::with_capacity(n);
            for (pos, v) in row.into_iter().enumerate() {
                match v {
                    Some(v) => out.push(v),
                    None if n == 1 => out.push(complex.cofaces(rid).len() as i64),
                    None => {
                        return Err(ComplexError::MissingStructureConstant {
                            ridge: complex.id(rid).to_string(),
                            position: pos,
                        })
                    }
                }
            }
            full.push(out);
        }
        Self::new_unchecked(complex, full)
    }

    /// One-dimensional complex: every vertex gets its degree.
    pub fn graph(complex: DeltaComplex) -> Result<Self, ComplexError> {
        if complex.dim() != 1 {
            return Err(ComplexError::WrongDimension { expected: 1, found: complex.dim() });
        }
        let alpha = complex.simplices(0).map(|v| vec![complex.cofaces(v).len() as i64]).collect();
        Self::new(complex, alpha)
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn num_ridges(&self) -> usize {
        self.complex.count(self.dim() - 1)
    }

    pub fn num_facets(&self) -> usize {
        self.complex.count(self.dim())
    }

    pub fn num_vertices(&self) -> usize {
        self.complex.count(0)
    }

    pub fn ridge(&self, r: usize) -> SimplexId {
        SimplexId::new(self.dim() - 1, r)
    }

    pub fn facet(&self, f: usize) -> SimplexId {
        SimplexId::new(self.dim(), f)
    }

    pub fn ridge_id(&self, r: usize) -> &str {
        self.complex.id(self.ridge(r))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        self.complex.id(SimplexId::new(0, v))
    }

    pub fn ridge_index(&self, id: &str) -> Option<usize> {
        self.complex.lookup(id).filter(|s| s.dim + 1 == self.dim()).map(|s| s.index)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.complex.lookup(id).filter(|s| s.dim == 0).map(|s| s.index)
    }

    pub fn alpha(&self, r: usize, pos: usize) -> i64 {
        self.alpha[r][pos]
    }

    pub fn alpha_row(&self, r: usize) -> &[i64] {
        &self.alpha[r]
    }

    pub fn alphas(&self) -> &[Vec<i64>] {
        &self.alpha
    }

    /// Number of facets containing ridge `r`.
    pub fn degree(&self, r: usize) -> usize {
        self.complex.cofaces(self.ridge(r)).len()
    }

    /// Facets containing ridge `r`.
    pub fn facets_of(&self, r: usize) -> &[usize] {
        self.complex.cofaces(self.ridge(r))
    }

    pub fn ridge_vertices(&self, r: usize) -> &[usize] {
        self.complex.vertices(self.ridge(r))
    }

    /// Vertex of facet `f` not on ridge `r`.
    pub fn apex(&self, f: usize, r: usize) -> usize {
        let fs = self.facet(f);
        let j = self.complex.faces(fs).iter().position(|&x| x == r).expect("ridge is a face of the facet");
        self.complex.vertices(fs)[j]
    }

    pub fn ridge_identity_violations(&self) -> Vec<RidgeViolation> {
        (0..self.num_ridges())
            .filter_map(|r| {
                let sum: i64 = self.alpha[r].iter().sum();
                let degree = self.degree(r);
                (sum != degree as i64).then(|| RidgeViolation { ridge: self.ridge_id(r).to_string(), sum, degree })
            })
            .collect()
    }

    pub fn validate_ridge_identity(&self) -> Result<(), ComplexError> {
        match self.ridge_identity_violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(ComplexError::RidgeIdentityViolated { ridge: v.ridge, sum: v.sum, degree: v.degree }),
        }
    }

    pub fn local_intersection_matrix(&self, q: SimplexId) -> Result<LocalIntersectionMatrix, ComplexError> {
        let n = self.dim();
        if n < 2 || q.dim != n - 2 {
            return Err(ComplexError::WrongDimension { expected: n.saturating_sub(2), found: q.dim });
        }
        let ridges: Vec<usize> = self.complex.cofaces(q).to_vec();
        let k = ridges.len();
        let mut m = IntMatrix::zeros(k, k);
        for (a, &r) in ridges.iter().enumerate() {
            let i = self.complex.faces(self.ridge(r)).iter().position(|&x| x == q.index).expect("q is a face");
            m[(a, a)] = BigInt::from(-self.alpha[r][i]);
            for (b, &s) in ridges.iter().enumerate().skip(a + 1) {
                let fr = self.facets_of(r);
                let shared = self.facets_of(s).iter().filter(|f| fr.contains(f)).count();
                m[(a, b)] = BigInt::from(shared);
                m[(b, a)] = BigInt::from(shared);
            }
        }
        Ok(LocalIntersectionMatrix { center: q, ridges, matrix: m })
    }

    /// Every local intersection matrix has exactly one positive eigenvalue.
    pub fn is_tropical(&self) -> TropicalityReport {
        let n = self.dim();
        let mut checked = Vec::new();
        if n >= 2 {
            for q in self.complex.simplices(n - 2) {
                let m = self.local_intersection_matrix(q).expect("q has dimension n - 2");
                let inertia = inertia(&m.matrix).expect("local intersection matrices are symmetric");
                checked.push(LocalInertia { simplex: self.complex.id(q).to_string(), inertia });
            }
        }
        let failures: Vec<LocalInertia> = checked.iter().filter(|l| l.inertia.positive != 1).cloned().collect();
        TropicalityReport { holds: failures.is_empty(), checked, failures }
    }

    /// Coefficients `deg r - 2` per ridge.
    pub fn canonical_coefficients(&self) -> Vec<i64> {
        (0..self.num_ridges()).map(|r| self.degree(r) as i64 - 2).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    /// Copy with the constants of ridge `r` replaced; the degree identity is not rechecked.
    pub fn with_ridge_constants(&self, r: usize, values: Vec<i64>) -> Self {
        let mut alpha = self.alpha.clone();
        alpha[r] = values;
        WeakTropicalComplex { complex: self.complex.clone(), alpha }
    }
}

/// Structure constants from self-intersection data: `alpha = -value`, checked against ridge degrees.
pub fn from_degeneration_data(
    complex: DeltaComplex,
    intersections: &[(String, usize, i64)],
) -> Result<WeakTropicalComplex, ComplexError> {
    let entries: Vec<(String, usize, i64)> = intersections.iter().map(|(r, p, v)| (r.clone(), *p, -*v)).collect();
    let w = WeakTropicalComplex::from_entries(complex, &entries)?;
    w.validate_ridge_identity()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<RawSimplex> {
        vec![
            RawSimplex::new("a", 0, &[]),
            RawSimplex::new("b", 0, &[]),
            RawSimplex::new("c", 0, &[]),
            RawSimplex::new("ab", 1, &["b", "a"]),
            RawSimplex::new("ac", 1, &["c", "a"]),
            RawSimplex::new("bc", 1, &["c", "b"]),
            RawSimplex::new("abc", 2, &["bc", "ac", "ab"]),
        ]
    }

    #[test]
    fn vertex_order_follows_faces() {
        let c = build_complex(2, &triangle()).unwrap();
        let t = c.lookup("abc").unwrap();
        let names: Vec<&str> = c.vertices(t).iter().map(|&v| c.ids(0)[v].as_str()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(c.euler_characteristic(), 1);
        let ac = c.lookup("ac").unwrap();
        assert_eq!(c.face_positions(t, ac), Some(vec![0, 2]));
        assert_eq!(c.face_at_positions(t, &[0, 2]), ac);
    }

    #[test]
    fn rejects_repeated_face() {
        let mut s = triangle();
        s[3] = RawSimplex::new("ab", 1, &["a", "a"]);
        assert!(matches!(build_complex(2, &s), Err(ComplexError::NonRegular { .. })));
    }

    #[test]
    fn rejects_noncommuting_faces() {
        let mut s = triangle();
        s[6] = RawSimplex::new("abc", 2, &["ac", "bc", "ab"]);
        assert!(matches!(build_complex(2, &s), Err(ComplexError::BadFaceList { .. })));
    }

    #[test]
    fn rejects_structural_errors() {
        let mut s = triangle();
        s.push(RawSimplex::new("a", 0, &[]));
        assert!(matches!(build_complex(2, &s), Err(ComplexError::DuplicateId(_))));
        let mut s = triangle();
        s.push(RawSimplex::new("z", 0, &[]));
        assert!(matches!(build_complex(2, &s), Err(ComplexError::Disconnected { components: 2 })));
        let s = vec![RawSimplex::new("a", 0, &[]), RawSimplex::new("e", 1, &["a", "q"])];
        assert!(matches!(build_complex(1, &s), Err(ComplexError::MissingFace { .. })));
        assert!(matches!(build_complex(1, &triangle()), Err(ComplexError::DimensionExceeded { .. })));
    }

    #[test]
    fn inertia_of_known_matrices() {
        let m = IntMatrix::from_i64(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(inertia(&m).unwrap(), Inertia { positive: 1, negative: 1, zero: 0 });
        let m = IntMatrix::from_i64(2, &[vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(inertia(&m), Err(ComplexError::NotSymmetric));
        let m = IntMatrix::from_i64(3, &[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, -2]]).unwrap();
        assert_eq!(inertia(&m).unwrap(), Inertia { positive: 1, negative: 1, zero: 1 });
    }

    #[test]
    fn single_triangle_constants() {
        let c = build_complex(2, &triangle()).unwrap();
        let entries: Vec<(String, usize, i64)> = vec![
            ("ab".into(), 0, 1),
            ("ab".into(), 1, 0),
            ("ac".into(), 0, 1),
            ("ac".into(), 1, 0),
            ("bc".into(), 0, 0),
            ("bc".into(), 1, 1),
        ];
        let w = WeakTropicalComplex::from_entries(c.clone(), &entries).unwrap();
        assert!(w.validate_ridge_identity().is_ok());
        assert_eq!(w.canonical_coefficients(), vec![-1, -1, -1]);
        let bad = w.with_ridge_constants(0, vec![2, 0]);
        assert!(matches!(bad.validate_ridge_identity(), Err(ComplexError::RidgeIdentityViolated { .. })));
        let missing = &entries[1..];
        assert!(matches!(
            WeakTropicalComplex::from_entries(c, missing),
            Err(ComplexError::MissingStructureConstant { .. })
        ));
    }
}
