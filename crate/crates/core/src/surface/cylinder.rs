//! Search for boundary structure constants on the cylinder fixture.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::WeakTropicalComplex;
use crate::divisor::{class_group, lin_equiv, weil_lattice, ClassGroupScope, EquivalenceCertificate, RidgeDivisor};
use crate::io::pl_json;
use crate::linalg::AbelianGroup;
use crate::subdivision::subdivide;

use super::fixtures::{make_cylinder, CYLINDER_BOUNDARY};
use super::series::SurfaceError;

/// Checks on one assignment; later checks run only if the earlier ones pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCandidate {
    /// Constant at the first vertex of each boundary edge; the second is `1 -` it.
    pub constants: [i64; 4],
    pub tropical: bool,
    pub weil_rank: Option<usize>,
    pub class_group: Option<AbelianGroup>,
    /// Certificate for `2 D' ~ D`.
    pub equivalence: Option<EquivalenceCertificate>,
}

impl CylinderCandidate {
    pub fn accepted(&self) -> bool {
        self.tropical
            && self.weil_rank == Some(4)
            && self.class_group == Some(AbelianGroup { free_rank: 1, torsion: Vec::new() })
            && self.equivalence.is_some()
    }

    pub fn to_json(&self) -> Value {
        let w = make_cylinder(self.constants).expect("constants were valid when checked");
        let constants: Vec<Value> = CYLINDER_BOUNDARY
            .iter()
            .zip(self.constants)
            .map(|(e, a)| json!({ "ridge": e, "alpha": [a, 1 - a] }))
            .collect();
        json!({
            "constants": constants,
            "tropical": self.tropical,
            "weil_rank": self.weil_rank,
            "class_group": self.class_group.as_ref().map(ToString::to_string),
            "certificate": self.equivalence.as_ref().map(|c| {
                let sub = subdivide(&w, c.order).expect("order was searched before");
                json!({ "order": c.order, "phi": pl_json(sub.complex(), &c.phi) })
            }),
            "accepted": self.accepted(),
        })
    }
}

/// `D' = t + c - e` and `D = t + t2`.
pub fn cylinder_divisors(w: &WeakTropicalComplex) -> (RidgeDivisor, RidgeDivisor) {
    let pick = |entries: &[(&str, i64)]| {
        let mut c = vec![0i64; w.num_ridges()];
        for &(r, v) in entries {
            c[w.ridge_index(r).expect("cylinder edge")] = v;
        }
        RidgeDivisor::from_integers(1, &c)
    };
    (pick(&[("t", 1), ("c", 1), ("e", -1)]), pick(&[("t", 1), ("t2", 1)]))
}

pub fn check_candidate(constants: [i64; 4], max_order: u32) -> Result<CylinderCandidate, SurfaceError> {
    let w = make_cylinder(constants)?;
    let mut cand =
        CylinderCandidate { constants, tropical: false, weil_rank: None, class_group: None, equivalence: None };
    cand.tropical = w.is_tropical().holds;
    if !cand.tropical {
        return Ok(cand);
    }
    cand.weil_rank = Some(weil_lattice(&w).rows());
    cand.class_group = Some(class_group(&w, ClassGroupScope::WeilOnly)?);
    let (d_prime, d) = cylinder_divisors(&w);
    let twice = d_prime.plus(&d_prime);
    cand.equivalence = lin_equiv(&w, &twice, &d, max_order)?;
    Ok(cand)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Calibration {
    pub checked: usize,
    pub tropical: usize,
    /// Accepted assignments in lexicographic order.
    pub accepted: Vec<CylinderCandidate>,
}

impl Calibration {
    pub fn best(&self) -> Result<&CylinderCandidate, SurfaceError> {
        self.accepted.first().ok_or(SurfaceError::NoneFound { searched: self.checked })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checked": self.checked,
            "tropical": self.tropical,
            "accepted": self.accepted.iter().map(CylinderCandidate::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Every assignment with all boundary constants in `[-max_abs, max_abs]`.
pub fn calibrate_cylinder(max_abs: i64, max_order: u32) -> Result<Calibration, SurfaceError> {
    let range: Vec<i64> = (-max_abs..=max_abs).filter(|a| (1 - a).abs() <= max_abs).collect();
    let mut grid = Vec::new();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    grid.push([a, b, c, d]);
                }
            }
        }
    }
    let results: Vec<CylinderCandidate> =
        grid.par_iter().map(|&p| check_candidate(p, max_order)).collect::<Result<_, _>>()?;
    let tropical = results.iter().filter(|c| c.tropical).count();
    let accepted = results.into_iter().filter(CylinderCandidate::accepted).collect();
    Ok(Calibration { checked: grid.len(), tropical, accepted })
}
