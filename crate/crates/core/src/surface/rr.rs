//! Bookkeeping for the surface Riemann–Roch inequality
//! `h0(D) + h0(K - D) >= D.(D - K) / 2 + chi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::complex::{SimplexId, WeakTropicalComplex};
use crate::divisor::{canonical_divisor, is_cartier_at, lift, CartierMode, RidgeDivisor};
use crate::io::{divisor_json, rational_json};
use crate::point::RationalPoint;
use crate::subdivision::subdivide;

use super::series::SurfaceError;

/// Integral Cartier test at the barycenter of every simplex of the divisor's subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierStatus {
    pub holds: bool,
    /// First simplex, by dimension then index, without a local integral function.
    pub failing: Option<String>,
}

pub fn cartier_status(w: &WeakTropicalComplex, d: &RidgeDivisor) -> Result<CartierStatus, SurfaceError> {
    let sub = subdivide(w, d.order.max(1))?;
    let target = sub.complex();
    let c = target.complex();
    let on_target = if d.order == sub.order() { d.clone() } else { lift(w, &sub, d)? };
    for k in 0..=c.dim() {
        for s in c.simplices(k) {
            let share = BigRational::new(BigInt::one(), BigInt::from(k + 1));
            let p = RationalPoint::at(c, SimplexId::new(k, s.index), vec![share; k + 1])
                .map_err(crate::divisor::DivisorError::from)?;
            if !is_cartier_at(target, &on_target, &p, CartierMode::Integral)?.holds {
                return Ok(CartierStatus { holds: false, failing: Some(c.id(s).to_string()) });
            }
        }
    }
    Ok(CartierStatus { holds: true, failing: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRCheck {
    pub divisor: RidgeDivisor,
    pub h0_d: i64,
    pub h0_k_minus_d: i64,
    pub pairing_degree: i64,
    pub chi: i64,
    pub lhs: i64,
    pub rhs: BigRational,
    pub verdict: bool,
    pub d_cartier: CartierStatus,
    pub k_cartier: CartierStatus,
}

impl RRCheck {
    /// Both `D` and `K` are Cartier.
    pub fn hypothesis_holds(&self) -> bool {
        self.d_cartier.holds && self.k_cartier.holds
    }

    /// `lhs`, `rhs` and `verdict` agree with the inputs.
    pub fn is_consistent(&self) -> bool {
        let rhs = BigRational::new(BigInt::from(self.pairing_degree), BigInt::from(2))
            + BigRational::from_integer(self.chi.into());
        self.lhs == self.h0_d + self.h0_k_minus_d
            && self.rhs == rhs
            && self.verdict == (BigRational::from_integer(self.lhs.into()) >= self.rhs)
    }

    pub fn summary(&self) -> &'static str {
        match (self.verdict, self.hypothesis_holds()) {
            (true, _) => "inequality holds",
            (false, true) => "inequality fails for Cartier D and K",
            (false, false) => "inequality fails; hypothesis violated",
        }
    }

    pub fn to_json(&self, w: &WeakTropicalComplex) -> Value {
        let status = |s: &CartierStatus| json!({ "holds": s.holds, "failing_simplex": s.failing });
        json!({
            "divisor": divisor_json(w, &self.divisor),
            "h0_d": self.h0_d,
            "h0_k_minus_d": self.h0_k_minus_d,
            "pairing_degree": self.pairing_degree,
            "chi": self.chi,
            "lhs": self.lhs,
            "rhs": rational_json(&self.rhs),
            "verdict": self.verdict,
            "d_cartier": status(&self.d_cartier),
            "k_cartier": status(&self.k_cartier),
            "summary": self.summary(),
        })
    }
}

/// Compares `h0_d + h0_kd` with `pairing / 2 + chi` exactly and reports the Cartier status of `D` and `K`.
pub fn rr_check(
    w: &WeakTropicalComplex,
    d: &RidgeDivisor,
    h0_d: i64,
    h0_kd: i64,
    pairing: i64,
) -> Result<RRCheck, SurfaceError> {
    let chi = w.euler_characteristic();
    let lhs = h0_d + h0_kd;
    let rhs = BigRational::new(BigInt::from(pairing), BigInt::from(2)) + BigRational::from_integer(chi.into());
    let verdict = BigRational::from_integer(lhs.into()) >= rhs;
    Ok(RRCheck {
        divisor: d.clone(),
        h0_d,
        h0_k_minus_d: h0_kd,
        pairing_degree: pairing,
        chi,
        lhs,
        rhs,
        verdict,
        d_cartier: cartier_status(w, d)?,
        k_cartier: cartier_status(w, &canonical_divisor(w))?,
    })
}
