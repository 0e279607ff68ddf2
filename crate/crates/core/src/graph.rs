//! Chip-firing on finite multigraphs: reduced divisors, Baker–Norine rank and
//! the point-covering count `h0` of one-dimensional complexes.
//!
//! A divisor is a chip vector indexed by vertex. Firing a vector `x` sends
//! `D` to `D - L x`, where `L` is the Laplacian; as PL functions on the graph
//! this is `D + div(x)`.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::WeakTropicalComplex;
use crate::divisor::{lift, small_integer_coeffs, DivisorError, RidgeDivisor};
use crate::point::RationalPoint;
use crate::subdivision::{subdivide, SubdivisionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("edge {edge} names vertex {vertex}, but the graph has {count}")]
    UnknownVertex { edge: usize, vertex: usize, count: usize },
    #[error("h0 is not defined on a single point")]
    SinglePointComplex,
    #[error("expected a one-dimensional complex, found dimension {0}")]
    WrongDimension(usize),
    #[error("expected {expected} chip counts, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {0} is out of range")]
    BadVertex(usize),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
}

/// Connected loopless multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    /// `adj[u][v]` counts edges between `u` and `v`.
    adj: Vec<Vec<i64>>,
    valence: Vec<i64>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if num_vertices == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![vec![0i64; num_vertices]; num_vertices];
        for (k, &(a, b)) in edges.iter().enumerate() {
            for x in [a, b] {
                if x >= num_vertices {
                    return Err(GraphError::UnknownVertex { edge: k, vertex: x, count: num_vertices });
                }
            }
            if a == b {
                return Err(GraphError::Loop(k));
            }
            adj[a][b] += 1;
            adj[b][a] += 1;
        }
        let valence = adj.iter().map(|row| row.iter().sum()).collect();
        let g = Graph { edges: edges.to_vec(), adj, valence };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Vertices and edges of a one-dimensional complex, in index order.
    pub fn from_complex(w: &WeakTropicalComplex) -> Result<Self, GraphError> {
        if w.dim() != 1 {
            return Err(GraphError::WrongDimension(w.dim()));
        }
        let c = w.complex();
        let edges: Vec<(usize, usize)> = c
            .simplices(1)
            .map(|e| {
                let vs = c.vertices(e);
                (vs[0], vs[1])
            })
            .collect();
        Graph::new(w.num_vertices(), &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn valence(&self, v: usize) -> i64 {
        self.valence[v]
    }

    /// First Betti number `E - V + 1`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.num_vertices() as i64 + 1
    }

    /// `val(v) - 2` chips at every vertex.
    pub fn canonical(&self) -> Vec<i64> {
        self.valence.iter().map(|&d| d - 2).collect()
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        (0..n).map(|u| (0..n).map(|v| if u == v { self.valence[u] } else { -self.adj[u][v] }).collect()).collect()
    }

    /// `-L x`: the divisor of the PL function with vertex values `x`.
    pub fn div(&self, x: &[i64]) -> Vec<i64> {
        let n = self.num_vertices();
        (0..n).map(|u| (0..n).map(|v| self.adj[u][v] * x[v]).sum::<i64>() - self.valence[u] * x[u]).collect()
    }

    /// Order-`s` subdivision: edge `k` gets interior vertices `V + k (s - 1) + j`, `j = 0..s-1`,
    /// listed from its first endpoint to its second.
    pub fn subdivide(&self, s: usize) -> Graph {
        assert!(s >= 1, "subdivision order must be positive");
        let n = self.num_vertices();
        let mut edges = Vec::with_capacity(self.edges.len() * s);
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let inner: Vec<usize> = (0..s - 1).map(|j| n + k * (s - 1) + j).collect();
            let path: Vec<usize> = std::iter::once(a).chain(inner).chain(std::iter::once(b)).collect();
            edges.extend(path.windows(2).map(|p| (p[0], p[1])));
        }
        Graph::new(n + self.edges.len() * (s - 1), &edges).expect("subdivision of a connected graph")
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if self.adj[u][v] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn distances_from(&self, q: usize) -> Vec<usize> {
        let n = self.num_vertices();
        let mut dist = vec![usize::MAX; n];
        dist[q] = 0;
        let mut queue = std::collections::VecDeque::from([q]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if self.adj[u][v] > 0 && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn check_divisor(&self, d: &[i64]) -> Result<(), GraphError> {
        if d.len() != self.num_vertices() {
            return Err(GraphError::SizeMismatch { expected: self.num_vertices(), found: d.len() });
        }
        Ok(())
    }
}

/// `divisor = original + div(phi)`, with `divisor` reduced with respect to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub q: usize,
    pub divisor: Vec<i64>,
    pub phi: Vec<i64>,
}

impl Reduction {
    pub fn verify(&self, g: &Graph, original: &[i64]) -> bool {
        let moved: Vec<i64> = original.iter().zip(g.div(&self.phi)).map(|(a, b)| a + b).collect();
        moved == self.divisor && is_reduced(g, &self.divisor, self.q)
    }
}

fn fire_set(g: &Graph, d: &mut [i64], phi: &mut [i64], set: &[bool], times: i64) {
    let n = g.num_vertices();
    for u in 0..n {
        if !set[u] {
            continue;
        }
        phi[u] += times;
        for v in 0..n {
            if !set[v] && g.adj[u][v] > 0 {
                d[u] -= times * g.adj[u][v];
                d[v] += times * g.adj[u][v];
            }
        }
    }
}

/// Vertices that survive Dhar's burning from `q`; empty iff `d` is `q`-reduced given `d >= 0` off `q`.
fn unburnt(g: &Graph, d: &[i64], q: usize) -> Vec<bool> {
    let n = g.num_vertices();
    let mut burnt = vec![false; n];
    burnt[q] = true;
    let mut into_fire = vec![0i64; n];
    let mut stack = vec![q];
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !burnt[v] && g.adj[u][v] > 0 {
                into_fire[v] += g.adj[u][v];
                if into_fire[v] > d[v] {
                    burnt[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    burnt.into_iter().map(|b| !b).collect()
}

/// Nonnegative off `q` and no nonempty set avoiding `q` can fire.
pub fn is_reduced(g: &Graph, d: &[i64], q: usize) -> bool {
    (0..d.len()).all(|v| v == q || d[v] >= 0) && !unburnt(g, d, q).into_iter().any(|b| b)
}

/// The `q`-reduced divisor equivalent to `d`, with the PL function that moves `d` there.
pub fn q_reduce(g: &Graph, d: &[i64], q: usize) -> Result<Reduction, GraphError> {
    g.check_divisor(d)?;
    if q >= g.num_vertices() {
        return Err(GraphError::BadVertex(q));
    }
    let n = g.num_vertices();
    let mut d = d.to_vec();
    let mut phi = vec![0i64; n];
    // Clear debts layer by layer, farthest from q first; borrowing by the set at distance >= k
    // never takes chips from that set.
    let dist = g.distances_from(q);
    let depth = dist.iter().copied().max().unwrap_or(0);
    for k in (1..=depth).rev() {
        let set: Vec<bool> = dist.iter().map(|&x| x >= k).collect();
        loop {
            let debt = (0..n).filter(|&v| dist[v] == k).map(|v| -d[v]).max().unwrap_or(0);
            if debt <= 0 {
                break;
            }
            fire_set(g, &mut d, &mut phi, &set, -debt);
        }
    }
    loop {
        let set = unburnt(g, &d, q);
        if !set.iter().any(|&b| b) {
            break;
        }
        let times = (0..n)
            .filter(|&u| set[u])
            .filter_map(|u| {
                let out: i64 = (0..n).filter(|&v| !set[v]).map(|v| g.adj[u][v]).sum();
                (out > 0).then(|| Integer::div_floor(&d[u], &out))
            })
            .min()
            .expect("a proper subset has an outgoing edge");
        fire_set(g, &mut d, &mut phi, &set, times.max(1));
    }
    Ok(Reduction { q, divisor: d, phi })
}

/// Whether `d` is equivalent to an effective divisor.
pub fn has_effective_representative(g: &Graph, d: &[i64]) -> Result<bool, GraphError> {
    if d.iter().sum::<i64>() < 0 {
        return Ok(false);
    }
    Ok(q_reduce(g, d, 0)?.divisor[0] >= 0)
}

/// Rank with a witness: for rank `r`, an effective `E` of degree `r + 1` such that `D - E`
/// has no effective representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub rank: i64,
    pub witness: Vec<i64>,
}

impl RankResult {
    pub fn verify_witness(&self, g: &Graph, d: &[i64]) -> Result<bool, GraphError> {
        let e = &self.witness;
        let ok_shape = e.len() == d.len() && e.iter().all(|&x| x >= 0) && e.iter().sum::<i64>() == self.rank + 1;
        let rest: Vec<i64> = d.iter().zip(e).map(|(a, b)| a - b).collect();
        Ok(ok_shape && !has_effective_representative(g, &rest)?)
    }
}

/// Nondecreasing sequences of length `k` over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Increasing sequences of length `k` over `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    multisets(n.saturating_sub(k.saturating_sub(1)), k)
        .into_iter()
        .map(|m| m.into_iter().enumerate().map(|(i, x)| x + i).collect())
        .collect()
}

fn minus_points(d: &[i64], pts: &[usize]) -> Vec<i64> {
    let mut out = d.to_vec();
    for &p in pts {
        out[p] -= 1;
    }
    out
}

/// First point multiset (in enumeration order) whose removal leaves no effective representative.
fn first_uncoverable(g: &Graph, d: &[i64], sets: &[Vec<usize>]) -> Result<Option<Vec<usize>>, GraphError> {
    let found = sets
        .par_iter()
        .map(|pts| has_effective_representative(g, &minus_points(d, pts)).map(|ok| (!ok).then(|| pts.clone())))
        .find_first(|r| !matches!(r, Ok(None)));
    found.transpose().map(Option::flatten)
}

/// Baker–Norine rank by enumerating effective divisors of increasing degree.
pub fn rank(g: &Graph, d: &[i64]) -> Result<RankResult, GraphError> {
    g.check_divisor(d)?;
    let n = g.num_vertices();
    let reduced = q_reduce(g, d, 0)?.divisor;
    let mut k = 0usize;
    loop {
        let sets = multisets(n, k);
        if let Some(pts) = first_uncoverable(g, &reduced, &sets)? {
            let mut witness = vec![0i64; n];
            for p in pts {
                witness[p] += 1;
            }
            return Ok(RankResult { rank: k as i64 - 1, witness });
        }
        k += 1;
    }
}

/// `h0 = rank + 1` on a graph that is not a single point.
pub fn h0_by_rank(g: &Graph, d: &[i64]) -> Result<usize, GraphError> {
    if g.num_vertices() == 1 {
        return Err(GraphError::SinglePointComplex);
    }
    Ok((rank(g, d)?.rank + 1) as usize)
}

/// Smallest set of distinct points that no effective equivalent of `d` contains, searched over
/// the vertices of the order-`s` subdivisions for `s = 1..=max_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectH0 {
    pub h0: usize,
    /// Subdivision order and its vertices forming the uncoverable set.
    pub order: usize,
    pub points: Vec<usize>,
    pub max_order: usize,
}

/// Orders searched by default: one past the first order with more than `deg d` vertices.
pub fn default_direct_orders(g: &Graph, d: &[i64]) -> usize {
    let need = d.iter().sum::<i64>().max(0) as usize + 1;
    let e = g.edges().len();
    let first = (1..).find(|&s| g.num_vertices() + e * (s - 1) >= need).expect("edges exist");
    (first + 1).max(2)
}

/// Point-set search straight from the definition, independent of the rank computation.
pub fn h0_direct(g: &Graph, d: &[i64], max_order: usize) -> Result<DirectH0, GraphError> {
    g.check_divisor(d)?;
    if g.num_vertices() == 1 {
        return Err(GraphError::SinglePointComplex);
    }
    let deg = d.iter().sum::<i64>();
    let mut pulled: Vec<(Graph, Vec<i64>)> = Vec::new();
    for s in 1..=max_order {
        let gs = g.subdivide(s);
        let mut ds = vec![0i64; gs.num_vertices()];
        ds[..d.len()].copy_from_slice(d);
        pulled.push((gs, ds));
    }
    for k in 0..=(deg.max(-1) + 1) as usize {
        for (i, (gs, ds)) in pulled.iter().enumerate() {
            let sets = subsets(gs.num_vertices(), k);
            if let Some(points) = first_uncoverable(gs, ds, &sets)? {
                return Ok(DirectH0 { h0: k, order: i + 1, points, max_order });
            }
        }
    }
    unreachable!("{} distinct points exceed the degree", deg + 1)
}

/// `h0` of a divisor on a one-dimensional complex plus chips at rational points, computed as
/// rank + 1 on the smallest subdivision in which every point is a vertex.
pub fn h0_dim1(w: &WeakTropicalComplex, d: &RidgeDivisor, chips: &[(RationalPoint, i64)]) -> Result<usize, GraphError> {
    if w.dim() != 1 {
        return Err(GraphError::WrongDimension(w.dim()));
    }
    let m = chips
        .iter()
        .map(|(p, _)| p.denominator().to_u32().expect("denominator fits in u32"))
        .fold(d.order.max(1), |acc, x| acc.lcm(&x));
    let sub = subdivide(w, m)?;
    let target = sub.complex();
    let mut total = small_integer_coeffs(target, &lift(w, &sub, d)?)?;
    for (p, c) in chips {
        let v = sub
            .vertex_at(p)?
            .ok_or_else(|| SubdivisionError::Inconsistent("point is not a vertex of the common subdivision".into()))?;
        total[v] += c;
    }
    h0_by_rank(&Graph::from_complex(target)?, &total)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected loopless multigraphs with `2..=max_vertices` vertices and at most `max_edges`
/// edges, one per isomorphism class, each given by its lexicographically least edge list.
pub fn small_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = subsets(n, 2).into_iter().map(|p| (p[0], p[1])).collect();
        let perms = permutations(n);
        let mut seen = std::collections::BTreeSet::new();
        for e in n - 1..=max_edges {
            for choice in multisets(pairs.len(), e) {
                let edges: Vec<(usize, usize)> = choice.iter().map(|&i| pairs[i]).collect();
                if Graph::new(n, &edges).is_err() {
                    continue;
                }
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut relabeled: Vec<(usize, usize)> =
                            edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                        relabeled.sort_unstable();
                        relabeled
                    })
                    .min()
                    .expect("at least one permutation");
                if seen.insert(canon.clone()) {
                    out.push((n, canon));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn reduced_input_is_left_alone() {
        let g = cycle(4);
        let d = [3, 0, 1, 0];
        let r = q_reduce(&g, &d, 0).unwrap();
        assert_eq!(r.divisor, d);
        assert!(r.phi.iter().all(|&x| x == 0));
    }

    #[test]
    fn four_chips_opposite_the_base_on_a_square() {
        let g = cycle(4);
        let d = [0, 0, 4, 0];
        let r = q_reduce(&g, &d, 0).unwrap();
        assert!(r.verify(&g, &d));
        // the opposite vertex has order 2 in the Jacobian Z/4
        assert_eq!(r.divisor, vec![4, 0, 0, 0]);
    }

    #[test]
    fn debts_far_from_the_base_are_cleared() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let d = [7, -2, 0, -3, 1];
        let r = q_reduce(&g, &d, 0).unwrap();
        assert!(r.verify(&g, &d));
    }

    #[test]
    fn small_ranks() {
        let g = k4();
        assert_eq!(rank(&g, &[0; 4]).unwrap().rank, 0);
        assert_eq!(rank(&g, &[1, -2, 0, 0]).unwrap().rank, -1);
        let k = g.canonical();
        let r = rank(&g, &k).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.verify_witness(&g, &k).unwrap());
    }

    #[test]
    fn one_vertex_on_a_cycle() {
        let g = cycle(3);
        assert_eq!(h0_by_rank(&g, &[1, 0, 0]).unwrap(), 1);
        assert_eq!(h0_direct(&g, &[1, 0, 0], 3).unwrap().h0, 1);
    }

    #[test]
    fn single_point_is_rejected() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(h0_by_rank(&g, &[0]), Err(GraphError::SinglePointComplex));
    }

    #[test]
    fn multigraph_census() {
        // two vertices: one class per edge count
        assert_eq!(small_multigraphs(2, 6).len(), 6);
        // simple connected graphs on four vertices: 6
        let simple4 =
            small_multigraphs(4, 6).into_iter().filter(|(n, e)| *n == 4 && e.windows(2).all(|w| w[0] != w[1])).count();
        assert_eq!(simple4, 6);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
