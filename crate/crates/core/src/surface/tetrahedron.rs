//! The linear series of multiples of an edge on the tetrahedron, end to end.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::complex::WeakTropicalComplex;
use crate::divisor::RidgeDivisor;
use crate::point::RationalPoint;

use super::fixtures::tetrahedron_height_points;
use super::rr::{rr_check, RRCheck};
use super::series::{
    h0_lower_bound, h0_upper_bound_bounded, self_pairing_disjoint, H0Report, SelfPairing, SurfaceError,
};

/// `k [edge]` at order 1.
pub fn edge_multiple(w: &WeakTropicalComplex, edge: &str, k: i64) -> Result<RidgeDivisor, SurfaceError> {
    let r = w.ridge_index(edge).ok_or_else(|| crate::divisor::DivisorError::UnknownRidgeId(edge.to_string()))?;
    let mut c = vec![0i64; w.num_ridges()];
    c[r] = k;
    Ok(RidgeDivisor::from_integers(1, &c))
}

/// Bounds on `h0(k [ab])`. With `m = max(k, 0) / 2`, the lower bound tries height points
/// `1/(m+2), .., m/(m+2)` at orders `<= m + 2`, and the upper record exhausts the next point set
/// at orders `<= upper_order`. Coefficient bound `4m + 4` throughout.
pub fn tetrahedron_h0(w: &WeakTropicalComplex, k: i64, upper_order: u32) -> Result<H0Report, SurfaceError> {
    let d = edge_multiple(w, "ab", k)?;
    let m = (k.max(0) / 2) as usize;
    let den = m as i64 + 2;
    let bound = 4 * m as i64 + 4;
    let sets: Vec<Vec<RationalPoint>> = (0..=m).map(|s| tetrahedron_height_points(w, s, den)).collect();
    let lower = h0_lower_bound(w, &d, &sets, den as u32, bound, None)?;
    let points = tetrahedron_height_points(w, lower.value, den);
    let upper = h0_upper_bound_bounded(w, &d, &points, upper_order, bound)?;
    Ok(H0Report { divisor: d, lower, upper: Some(upper) })
}

/// One row of the inequality table for `D = k [ab]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetrahedronRow {
    pub k: i64,
    pub h0_d: H0Report,
    pub h0_k_minus_d: H0Report,
    pub check: RRCheck,
}

impl TetrahedronRow {
    /// Both `h0` values are pinned and the check matches its inputs.
    pub fn settled(&self) -> bool {
        self.h0_d.exact() && self.h0_k_minus_d.exact() && self.check.is_consistent()
    }

    pub fn to_json(&self, w: &WeakTropicalComplex) -> Value {
        json!({
            "k": self.k,
            "h0_d": self.h0_d.to_json(w),
            "h0_k_minus_d": self.h0_k_minus_d.to_json(w),
            "check": self.check.to_json(w),
            "settled": self.settled(),
        })
    }
}

/// Rows for each `k` in `ks`, computing each `h0(j [ab])` once. `K = 0` on the tetrahedron, so
/// `K - D = -k [ab]`; the self-pairing of `2 [ab]` is certified zero by a disjoint representative,
/// hence `D.(D - K) = (k/2)^2 (2 [ab])^2 = 0`.
pub fn tetrahedron_table(
    w: &WeakTropicalComplex,
    ks: &[i64],
    upper_order: u32,
) -> Result<Vec<TetrahedronRow>, SurfaceError> {
    let pairing = match self_pairing_disjoint(w, &edge_multiple(w, "ab", 2)?, 2)? {
        SelfPairing::Zero { .. } => 0,
        SelfPairing::Unknown { max_order } => return Err(SurfaceError::NoneFound { searched: max_order as usize }),
    };
    let mut cache: BTreeMap<i64, H0Report> = BTreeMap::new();
    for &k in ks {
        for j in [k, -k] {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(j) {
                e.insert(tetrahedron_h0(w, j, upper_order)?);
            }
        }
    }
    ks.iter()
        .map(|&k| {
            let (h0_d, h0_k_minus_d) = (cache[&k].clone(), cache[&-k].clone());
            let check = rr_check(w, &h0_d.divisor, h0_d.lower.value as i64, h0_k_minus_d.lower.value as i64, pairing)?;
            Ok(TetrahedronRow { k, h0_d, h0_k_minus_d, check })
        })
        .collect()
}
