//! Exhaustive bounded search for integer vectors satisfying sparse linear inequalities
//! and covering disjunctions, by bounds propagation and domain bisection.

use num_integer::Integer;
use serde::Serialize;

/// `floor + row . x >= 0` for every row, and for every cover set some row with
/// `ceil + row . x >= 1`. Rows use `(variable, coefficient)` pairs.
#[derive(Clone, Debug, Default)]
pub struct Problem {
    pub rows: Vec<Vec<(usize, i64)>>,
    pub floor: Vec<i64>,
    pub ceil: Vec<i64>,
    pub covers: Vec<Vec<usize>>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "solution")]
pub enum Status {
    Found(Vec<i64>),
    Exhausted,
    NodeLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub nodes: u64,
}

struct Search<'a> {
    p: &'a Problem,
    neighbours: Vec<Vec<usize>>,
    nodes: u64,
    limit: Option<u64>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

impl Search<'_> {
    fn row_max(&self, r: usize, lo: &[i64], hi: &[i64]) -> i64 {
        self.p.rows[r].iter().map(|&(v, a)| if a > 0 { a * hi[v] } else { a * lo[v] }).sum()
    }

    /// Tightens `lo`/`hi` so that `row . x >= target` stays satisfiable; false on a wipe-out.
    fn tighten(&self, r: usize, target: i64, lo: &mut [i64], hi: &mut [i64], changed: &mut bool) -> bool {
        let max = self.row_max(r, lo, hi);
        if max < target {
            return false;
        }
        for &(v, a) in &self.p.rows[r] {
            let own = if a > 0 { a * hi[v] } else { a * lo[v] };
            let need = target - (max - own);
            if a > 0 {
                let b = ceil_div(need, a);
                if b > lo[v] {
                    lo[v] = b;
                    *changed = true;
                }
            } else {
                let b = Integer::div_floor(&need, &a);
                if b < hi[v] {
                    hi[v] = b;
                    *changed = true;
                }
            }
            if lo[v] > hi[v] {
                return false;
            }
        }
        true
    }

    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        loop {
            let mut changed = false;
            for r in 0..self.p.rows.len() {
                if !self.tighten(r, -self.p.floor[r], lo, hi, &mut changed) {
                    return false;
                }
            }
            for cover in &self.p.covers {
                let mut open = cover.iter().filter(|&&r| self.row_max(r, lo, hi) >= 1 - self.p.ceil[r]);
                match (open.next(), open.next()) {
                    (None, _) => return false,
                    (Some(&r), None) if !self.tighten(r, 1 - self.p.ceil[r], lo, hi, &mut changed) => {
                        return false;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn satisfied(&self, x: &[i64]) -> bool {
        let val = |r: usize| self.p.rows[r].iter().map(|&(v, a)| a * x[v]).sum::<i64>();
        (0..self.p.rows.len()).all(|r| val(r) + self.p.floor[r] >= 0)
            && self.p.covers.iter().all(|c| c.iter().any(|&r| val(r) + self.p.ceil[r] >= 1))
    }

    fn dfs(&mut self, mut lo: Vec<i64>, mut hi: Vec<i64>) -> Option<Status> {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Some(Status::NodeLimit);
        }
        if !self.propagate(&mut lo, &mut hi) {
            return None;
        }
        let fixed_neighbours = |v: usize| self.neighbours[v].iter().filter(|&&u| lo[u] == hi[u]).count();
        let pick = (0..lo.len())
            .filter(|&v| hi[v] > lo[v])
            .min_by_key(|&v| (hi[v] - lo[v], std::cmp::Reverse(fixed_neighbours(v)), v));
        let Some(v) = pick else {
            return self.satisfied(&lo).then_some(Status::Found(lo));
        };
        let mid = Integer::div_floor(&(lo[v] + hi[v]), &2);
        let halves = [(lo[v], mid), (mid + 1, hi[v])];
        let closeness = |(a, b): (i64, i64)| if a <= 0 && 0 <= b { 0 } else { a.abs().min(b.abs()) };
        let order = if closeness(halves[1]) < closeness(halves[0]) { [1, 0] } else { [0, 1] };
        for i in order {
            let (a, b) = halves[i];
            let (mut l2, mut h2) = (lo.clone(), hi.clone());
            l2[v] = a;
            h2[v] = b;
            if let Some(s) = self.dfs(l2, h2) {
                return Some(s);
            }
        }
        None
    }
}

fn neighbours(p: &Problem) -> Vec<Vec<usize>> {
    let mut sets = vec![std::collections::BTreeSet::new(); p.lower.len()];
    for row in &p.rows {
        for &(u, _) in row {
            for &(v, _) in row {
                if u != v {
                    sets[u].insert(v);
                }
            }
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// First solution in search order, or a proof that the box holds none.
pub fn solve(p: &Problem, node_limit: Option<u64>) -> Outcome {
    let mut s = Search { p, neighbours: neighbours(p), nodes: 0, limit: node_limit };
    if p.lower.iter().zip(&p.upper).any(|(a, b)| a > b) {
        return Outcome { status: Status::Exhausted, nodes: 0 };
    }
    let status = s.dfs(p.lower.clone(), p.upper.clone()).unwrap_or(Status::Exhausted);
    Outcome { status, nodes: s.nodes }
}
