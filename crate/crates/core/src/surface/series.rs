//! Bounded searches in complete linear series: effective equivalents through given
//! points, lower and bounded upper estimates of `h0`, and disjoint representatives.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::WeakTropicalComplex;
use crate::divisor::{
    div_matrix, div_pl, div_rows, lift, DivisorError, EquivalenceCertificate, PLFunction, RidgeDivisor,
};
use crate::io::{divisor_json, pl_json, point_json};
use crate::linalg::{solve_integer, IntMatrix};
use crate::point::RationalPoint;
use crate::subdivision::{subdivide, Subdivision, SubdivisionError};

use super::search::{solve, Outcome, Problem, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
    #[error("divisor coefficient on `{0}` does not fit the search kernel")]
    Overflow(String),
    #[error("divisor is not effective")]
    NotEffective,
    #[error("no candidate among {searched} passed every check")]
    NoneFound { searched: usize },
}

/// PL functions on the order-`order` subdivision with `phi(first vertex) = 0` and `|phi| <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub order: u32,
    pub bound: i64,
}

/// An effective divisor equivalent to `d` whose support contains every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCertificate {
    pub points: Vec<RationalPoint>,
    pub equivalence: EquivalenceCertificate,
    pub divisor: RidgeDivisor,
}

impl PointCertificate {
    /// Rechecks equivalence, effectiveness and containment from scratch.
    pub fn verify(&self, w: &WeakTropicalComplex, d: &RidgeDivisor) -> Result<bool, SurfaceError> {
        if !self.divisor.is_effective() || !self.equivalence.verify(w, d, &self.divisor)? {
            return Ok(false);
        }
        let sub = subdivide(w, self.equivalence.order)?;
        for p in &self.points {
            let through = sub.ridges_containing(p)?.into_iter().any(|r| self.divisor.coeffs[r].is_positive());
            if !through {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, w: &WeakTropicalComplex) -> Value {
        let sub = subdivide(w, self.equivalence.order).expect("order was searched before");
        json!({
            "points": self.points.iter().map(|p| point_json(w.complex(), p)).collect::<Vec<_>>(),
            "order": self.equivalence.order,
            "phi": pl_json(sub.complex(), &self.equivalence.phi),
            "divisor": divisor_json(sub.complex(), &self.divisor),
        })
    }
}

fn to_i64(x: &num_bigint::BigInt, w: &WeakTropicalComplex, r: usize) -> Result<i64, SurfaceError> {
    x.to_i64().ok_or_else(|| SurfaceError::Overflow(w.ridge_id(r).to_string()))
}

fn build_problem(
    w: &WeakTropicalComplex,
    sub: &Subdivision,
    d: &RidgeDivisor,
    points: &[RationalPoint],
    bound: i64,
) -> Result<(Problem, RidgeDivisor), SurfaceError> {
    let target = sub.complex();
    let lifted = lift(w, sub, d)?;
    let mut floor = Vec::with_capacity(target.num_ridges());
    let mut ceil = Vec::with_capacity(target.num_ridges());
    for (r, c) in lifted.coeffs.iter().enumerate() {
        floor.push(to_i64(&c.floor().to_integer(), target, r)?);
        ceil.push(to_i64(&c.ceil().to_integer(), target, r)?);
    }
    let covers = points.iter().map(|p| sub.ridges_containing(p)).collect::<Result<Vec<_>, _>>()?;
    let n = target.num_vertices();
    let mut lower = vec![-bound; n];
    let mut upper = vec![bound; n];
    lower[0] = 0;
    upper[0] = 0;
    Ok((Problem { rows: div_rows(target), floor, ceil, covers, lower, upper }, lifted))
}

/// Searches one family for an effective equivalent of `d` through `points`.
pub fn search_family(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    points: &[RationalPoint],
    family: Family,
    node_limit: Option<u64>,
) -> Result<(Outcome, Option<PointCertificate>), SurfaceError> {
    let sub = subdivide(w, family.order)?;
    let (problem, lifted) = build_problem(w, &sub, d, points, family.bound)?;
    let outcome = solve(&problem, node_limit);
    let cert = match &outcome.status {
        Status::Found(x) => {
            let phi = PLFunction::from_integers(family.order, x);
            let divisor = lifted.plus(&div_pl(sub.complex(), &phi)?);
            Some(PointCertificate {
                points: points.to_vec(),
                equivalence: EquivalenceCertificate { order: family.order, phi },
                divisor,
            })
        }
        _ => None,
    };
    Ok((outcome, cert))
}

/// Orders `<= max_order` that are multiples of `d.order`: those making every point a vertex
/// first, then the rest, each ascending.
pub fn preferred_orders(d: &RidgeDivisor, points: &[RationalPoint], max_order: u32) -> Vec<u32> {
    let step = d.order.max(1);
    let lattice = points.iter().fold(step as u64, |acc, p| acc.lcm(&p.denominator().to_u64().unwrap_or(u64::MAX)));
    let all: Vec<u32> = (1..=max_order / step).map(|i| i * step).collect();
    let (mut first, rest): (Vec<u32>, Vec<u32>) = all.into_iter().partition(|&k| (k as u64).is_multiple_of(lattice));
    first.extend(rest);
    first
}

/// Tries the preferred orders in turn, each with coefficient bounds doubling up to `bound`;
/// the first certificate wins.
pub fn certify_points(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    points: &[RationalPoint],
    max_order: u32,
    bound: i64,
    node_limit: Option<u64>,
) -> Result<Option<PointCertificate>, SurfaceError> {
    for order in preferred_orders(d, points, max_order) {
        let mut b = bound.min(1);
        loop {
            if let (_, Some(c)) = search_family(w, d, points, Family { order, bound: b }, node_limit)? {
                return Ok(Some(c));
            }
            if b >= bound {
                break;
            }
            b = (2 * b).min(bound);
        }
    }
    Ok(None)
}

/// `1 +` the largest tested point set that has a certificate; 0 when none does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    pub certificates: Vec<PointCertificate>,
    /// Tested sets without a certificate within the searched families.
    pub uncertified: Vec<Vec<RationalPoint>>,
    pub max_order: u32,
    pub bound: i64,
}

pub fn h0_lower_bound(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    point_sets: &[Vec<RationalPoint>],
    max_order: u32,
    bound: i64,
    node_limit: Option<u64>,
) -> Result<LowerBound, SurfaceError> {
    let results: Vec<Result<Option<PointCertificate>, SurfaceError>> =
        point_sets.par_iter().map(|ps| certify_points(w, d, ps, max_order, bound, node_limit)).collect();
    let mut certificates = Vec::new();
    let mut uncertified = Vec::new();
    for (ps, r) in point_sets.iter().zip(results) {
        match r? {
            Some(c) => certificates.push(c),
            None => uncertified.push(ps.clone()),
        }
    }
    let value = certificates.iter().map(|c| c.points.len() + 1).max().unwrap_or(0);
    Ok(LowerBound { value, certificates, uncertified, max_order, bound })
}

/// Exhaustion of every family of order `<= max_order` for one point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperRecord {
    pub points: Vec<RationalPoint>,
    pub max_order: u32,
    pub bound: i64,
    /// `(order, nodes)` for each exhausted family.
    pub searched: Vec<(u32, u64)>,
    /// A family member through all points, if one exists.
    pub counterexample: Option<PointCertificate>,
}

impl UpperRecord {
    /// No family member is an effective equivalent through all points.
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn statement(&self) -> String {
        if self.holds() {
            format!(
                "no effective equivalent through these {} points among PL functions of order <= {} with |phi| <= {}; a bounded search, not a proof",
                self.points.len(),
                self.max_order,
                self.bound
            )
        } else {
            format!(
                "an effective equivalent passes through all {} points; no upper bound from this set",
                self.points.len()
            )
        }
    }
}

pub fn h0_upper_bound_bounded(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    points: &[RationalPoint],
    max_order: u32,
    bound: i64,
) -> Result<UpperRecord, SurfaceError> {
    let step = d.order.max(1);
    let orders: Vec<u32> = (1..=max_order / step).map(|i| i * step).collect();
    type Run = (u32, Outcome, Option<PointCertificate>);
    let runs: Vec<Result<Run, SurfaceError>> = orders
        .par_iter()
        .map(|&order| search_family(w, d, points, Family { order, bound }, None).map(|(o, c)| (order, o, c)))
        .collect();
    let mut searched = Vec::new();
    let mut counterexample = None;
    for run in runs {
        let (order, outcome, cert) = run?;
        searched.push((order, outcome.nodes));
        if counterexample.is_none() {
            counterexample = cert;
        }
    }
    Ok(UpperRecord { points: points.to_vec(), max_order, bound, searched, counterexample })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Report {
    pub divisor: RidgeDivisor,
    pub lower: LowerBound,
    pub upper: Option<UpperRecord>,
}

impl H0Report {
    /// The lower bound meets the size of an exhausted point set.
    pub fn exact(&self) -> bool {
        self.upper.as_ref().is_some_and(|u| u.holds() && u.points.len() == self.lower.value)
    }

    pub fn to_json(&self, w: &WeakTropicalComplex) -> Value {
        let upper = self.upper.as_ref().map(|u| {
            json!({
                "points": u.points.iter().map(|p| point_json(w.complex(), p)).collect::<Vec<_>>(),
                "max_order": u.max_order,
                "bound": u.bound,
                "searched": u.searched.iter().map(|(k, n)| json!({"order": k, "nodes": n})).collect::<Vec<_>>(),
                "holds": u.holds(),
                "statement": u.statement(),
                "counterexample": u.counterexample.as_ref().map(|c| c.to_json(w)),
            })
        });
        json!({
            "divisor": divisor_json(w, &self.divisor),
            "lower_bound": {
                "value": self.lower.value,
                "max_order": self.lower.max_order,
                "bound": self.lower.bound,
                "certificates": self.lower.certificates.iter().map(|c| c.to_json(w)).collect::<Vec<_>>(),
                "uncertified_sets": self.lower.uncertified.iter()
                    .map(|ps| ps.iter().map(|p| point_json(w.complex(), p)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "scope": "evidence over the tested point sets",
            },
            "upper": upper,
            "exact": self.exact(),
        })
    }
}

/// Effective equivalent of `d` with no points imposed.
pub fn effective_equivalent(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    max_order: u32,
    bound: i64,
) -> Result<Option<PointCertificate>, SurfaceError> {
    certify_points(w, d, &[], max_order, bound, None)
}

/// `D . D = 0` witnessed by an equivalent divisor whose support misses that of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfPairing {
    Zero { equivalence: EquivalenceCertificate, disjoint: RidgeDivisor },
    Unknown { max_order: u32 },
}

pub fn self_pairing_disjoint(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    max_order: u32,
) -> Result<SelfPairing, SurfaceError> {
    if !d.is_effective() {
        return Err(SurfaceError::NotEffective);
    }
    let step = d.order.max(1);
    if d.is_zero() {
        let phi = PLFunction::zero(subdivide(w, step)?.complex().num_vertices(), step);
        return Ok(SelfPairing::Zero { equivalence: EquivalenceCertificate { order: step, phi }, disjoint: d.clone() });
    }
    for order in (1..=max_order / step).map(|i| i * step) {
        let sub = subdivide(w, order)?;
        let target = sub.complex();
        let lifted = lift(w, &sub, d)?;
        if !lifted.is_integral() {
            continue;
        }
        let c = target.complex();
        let touched: std::collections::BTreeSet<usize> =
            lifted.support().into_iter().flat_map(|r| c.vertices(target.ridge(r)).to_vec()).collect();
        let blocked: Vec<usize> = (0..target.num_ridges())
            .filter(|&r| c.vertices(target.ridge(r)).iter().any(|v| touched.contains(v)))
            .collect();
        let a = div_matrix(target);
        let rows: Vec<Vec<num_bigint::BigInt>> = blocked.iter().map(|&r| a.row(r).to_vec()).collect();
        let sys = IntMatrix::from_rows(target.num_vertices(), &rows).map_err(DivisorError::from)?;
        let rhs: Vec<num_bigint::BigInt> = blocked.iter().map(|&r| -lifted.coeffs[r].to_integer()).collect();
        if let Some(x) = solve_integer(&sys, &rhs).map_err(DivisorError::from)? {
            let phi = PLFunction::from_bigints(order, &x);
            let disjoint = lifted.plus(&div_pl(target, &phi)?);
            debug_assert!(blocked.iter().all(|&r| disjoint.coeffs[r].is_zero()));
            return Ok(SelfPairing::Zero { equivalence: EquivalenceCertificate { order, phi }, disjoint });
        }
    }
    Ok(SelfPairing::Unknown { max_order })
}
