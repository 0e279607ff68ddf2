//! JSON file formats and serialization helpers.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, DeltaComplex, RawSimplex, WeakTropicalComplex};
use crate::divisor::{DivisorError, PLFunction, RidgeDivisor};
use crate::point::{PointOutsideComplex, RationalPoint};

fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

struct IntRef<'a>(&'a BigInt);

impl serde::Serialize for IntRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_bigint(self.0, s)
    }
}

/// Serializes a rational as `{"num": .., "den": ..}`.
pub struct RationalRef<'a>(pub &'a BigRational);

impl serde::Serialize for RationalRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("den", &IntRef(self.0.denom()))?;
        st.serialize_field("num", &IntRef(self.0.numer()))?;
        st.end()
    }
}

pub fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&IntRef(x))?;
    }
    seq.end()
}

pub fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&RationalRef(x), s)
}

pub fn rational_json(x: &BigRational) -> Value {
    serde_json::to_value(RationalRef(x)).expect("rationals serialize")
}

/// `{"order", "coeffs": [{"ridge", "num", "den"}]}` listing nonzero coefficients in ridge order.
pub fn divisor_json(w: &WeakTropicalComplex, d: &RidgeDivisor) -> Value {
    let coeffs: Vec<Value> = d
        .support()
        .into_iter()
        .map(|r| {
            let mut e = rational_json(&d.coeffs[r]);
            e["ridge"] = json!(w.ridge_id(r));
            e
        })
        .collect();
    json!({ "order": d.order, "coeffs": coeffs })
}

/// `{"order", "values": [{"vertex", "num", "den"}]}` listing nonzero values in vertex order.
pub fn pl_json(w: &WeakTropicalComplex, phi: &PLFunction) -> Value {
    let values: Vec<Value> = phi
        .values
        .iter()
        .enumerate()
        .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
        .map(|(v, x)| {
            let mut e = rational_json(x);
            e["vertex"] = json!(w.vertex_id(v));
            e
        })
        .collect();
    json!({ "order": phi.order, "values": values })
}

pub fn point_json(c: &DeltaComplex, p: &RationalPoint) -> Value {
    json!({ "simplex": c.id(p.simplex()), "coords": p.coords().iter().map(rational_json).collect::<Vec<_>>() })
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON in `{path}`: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Point(#[from] PointOutsideComplex),
    #[error("zero denominator for `{0}`")]
    ZeroDenominator(String),
    #[error("value does not fit in 64 bits: {0}")]
    TooLarge(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexEntry {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub ridge: String,
    pub vertex_pos: usize,
    pub value: i64,
}

/// `{"n", "simplices": [{"id", "dim", "faces"}], "alpha": [{"ridge", "vertex_pos", "value"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub simplices: Vec<SimplexEntry>,
    #[serde(default)]
    pub alpha: Vec<AlphaEntry>,
}

impl ComplexFile {
    pub fn from_complex(w: &WeakTropicalComplex) -> Self {
        let simplices =
            w.complex().to_raw().into_iter().map(|r| SimplexEntry { id: r.id, dim: r.dim, faces: r.faces }).collect();
        let alpha = (0..w.num_ridges())
            .flat_map(|r| {
                w.alpha_row(r).iter().enumerate().map(move |(i, &value)| AlphaEntry {
                    ridge: w.ridge_id(r).to_string(),
                    vertex_pos: i,
                    value,
                })
            })
            .collect();
        ComplexFile { n: w.dim(), simplices, alpha }
    }

    /// Builds the complex without checking the ridge identity.
    pub fn build(&self) -> Result<WeakTropicalComplex, IoError> {
        let raws: Vec<RawSimplex> = self
            .simplices
            .iter()
            .map(|s| RawSimplex { id: s.id.clone(), dim: s.dim, faces: s.faces.clone() })
            .collect();
        let c = build_complex(self.n, &raws)?;
        let entries: Vec<(String, usize, i64)> =
            self.alpha.iter().map(|a| (a.ridge.clone(), a.vertex_pos, a.value)).collect();
        Ok(WeakTropicalComplex::from_entries(c, &entries)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RidgeEntry {
    pub ridge: String,
    pub num: i64,
    pub den: i64,
}

/// `{"complex", "order", "coeffs": [{"ridge", "num", "den"}]}`; ridges of the order-`order` subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<String>,
    #[serde(default = "one")]
    pub order: u32,
    pub coeffs: Vec<RidgeEntry>,
}

fn one() -> u32 {
    1
}

fn small(x: &BigInt) -> Result<i64, IoError> {
    x.to_i64().ok_or_else(|| IoError::TooLarge(x.to_string()))
}

fn ratio(num: i64, den: i64, what: &str) -> Result<BigRational, IoError> {
    if den == 0 {
        return Err(IoError::ZeroDenominator(what.to_string()));
    }
    Ok(BigRational::new(num.into(), den.into()))
}

impl DivisorFile {
    /// `w` is the complex whose ridges the entries name.
    pub fn from_divisor(w: &WeakTropicalComplex, d: &RidgeDivisor, complex: Option<String>) -> Result<Self, IoError> {
        let coeffs = d
            .support()
            .into_iter()
            .map(|r| {
                let c = &d.coeffs[r];
                Ok(RidgeEntry { ridge: w.ridge_id(r).to_string(), num: small(c.numer())?, den: small(c.denom())? })
            })
            .collect::<Result<_, IoError>>()?;
        Ok(DivisorFile { complex, order: d.order, coeffs })
    }

    pub fn to_divisor(&self, w: &WeakTropicalComplex) -> Result<RidgeDivisor, IoError> {
        let mut sums: BTreeMap<String, BigRational> = BTreeMap::new();
        for e in &self.coeffs {
            *sums.entry(e.ridge.clone()).or_insert_with(num_traits::Zero::zero) += ratio(e.num, e.den, &e.ridge)?;
        }
        let entries: Vec<(String, BigRational)> = sums.into_iter().collect();
        Ok(RidgeDivisor::from_named(w, self.order, &entries)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub vertex: String,
    pub num: i64,
    pub den: i64,
}

/// `{"complex", "order", "values": [{"vertex", "num", "den"}]}`; unlisted vertices are 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<String>,
    #[serde(default = "one")]
    pub order: u32,
    pub values: Vec<VertexEntry>,
}

impl PLFile {
    pub fn from_pl(w: &WeakTropicalComplex, phi: &PLFunction, complex: Option<String>) -> Result<Self, IoError> {
        let values = phi
            .values
            .iter()
            .enumerate()
            .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
            .map(|(v, x)| {
                Ok(VertexEntry { vertex: w.vertex_id(v).to_string(), num: small(x.numer())?, den: small(x.denom())? })
            })
            .collect::<Result<_, IoError>>()?;
        Ok(PLFile { complex, order: phi.order, values })
    }

    pub fn to_pl(&self, w: &WeakTropicalComplex) -> Result<PLFunction, IoError> {
        let mut phi = PLFunction::zero(w.num_vertices(), self.order);
        for e in &self.values {
            let v = w.vertex_index(&e.vertex).ok_or_else(|| DivisorError::UnknownVertexId(e.vertex.clone()))?;
            phi.values[v] = ratio(e.num, e.den, &e.vertex)?;
        }
        Ok(phi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub simplex: String,
    pub coords: Vec<Fraction>,
    /// Chips placed at the point; used by one-dimensional `h0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chips: Option<i64>,
}

/// `{"points": [{"simplex", "coords": [{"num", "den"}], "chips"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Vec<PointEntry>,
}

impl PointsFile {
    pub fn from_points(c: &DeltaComplex, points: &[(RationalPoint, Option<i64>)]) -> Result<Self, IoError> {
        let points = points
            .iter()
            .map(|(p, chips)| {
                let coords = p
                    .coords()
                    .iter()
                    .map(|x| Ok(Fraction { num: small(x.numer())?, den: small(x.denom())? }))
                    .collect::<Result<_, IoError>>()?;
                Ok(PointEntry { simplex: c.id(p.simplex()).to_string(), coords, chips: *chips })
            })
            .collect::<Result<_, IoError>>()?;
        Ok(PointsFile { points })
    }

    pub fn to_points(&self, c: &DeltaComplex) -> Result<Vec<(RationalPoint, Option<i64>)>, IoError> {
        self.points
            .iter()
            .map(|e| {
                let coords = e.coords.iter().map(|f| ratio(f.num, f.den, &e.simplex)).collect::<Result<_, _>>()?;
                Ok((RationalPoint::new(c, &e.simplex, coords)?, e.chips))
            })
            .collect()
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json { path: path.display().to_string(), source })
}

/// Pretty JSON with keys sorted, newline-terminated.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report values serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values print");
    s.push('\n');
    s
}
