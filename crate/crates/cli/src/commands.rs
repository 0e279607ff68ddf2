use std::path::Path;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use tropx_core::complex::WeakTropicalComplex;
use tropx_core::divisor::{
    canonical_divisor, class_group, is_weil, lin_equiv, small_integer_coeffs, weil_lattice, ClassGroupScope,
    RidgeDivisor,
};
use tropx_core::graph::{h0_dim1, q_reduce, rank, Graph};
use tropx_core::io::{
    divisor_json, pl_json, point_json, read_json, to_canonical_string, ComplexFile, DivisorFile, PointsFile,
};
use tropx_core::point::RationalPoint;
use tropx_core::subdivision::subdivide;
use tropx_core::surface::{
    calibrate_cylinder, cylinder_divisors, h0_lower_bound, h0_upper_bound_bounded, make_cylinder, make_tetrahedron,
    rr_check, tetrahedron_table, H0Report,
};

use crate::report::{Failure, Outcome, Report};
use crate::{Command, Example};

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Tropical { .. } => "tropical",
        Command::Canonical { .. } => "canonical",
        Command::Classgroup { .. } => "classgroup",
        Command::Weil { .. } => "weil",
        Command::Equiv { .. } => "equiv",
        Command::Subdivide { .. } => "subdivide",
        Command::Rank { .. } => "rank",
        Command::H0 { .. } => "h0",
        Command::H0Bound { .. } => "h0-bound",
        Command::Rr { .. } => "rr",
        Command::Example { .. } => "example",
    }
}

pub fn run(c: &Command, seed: u64) -> Result<Report, Failure> {
    let mut r = Report::new(name(c), seed);
    match c {
        Command::Validate { complex } => validate(&mut r, complex)?,
        Command::Tropical { complex } => tropical(&mut r, complex)?,
        Command::Canonical { complex } => {
            let w = load_complex(&mut r, complex)?;
            let k = canonical_divisor(&w);
            r.result = json!({ "divisor": DivisorFile::from_divisor(&w, &k, None)?, "is_zero": k.is_zero() });
        }
        Command::Classgroup { complex, weil } => {
            let w = load_complex(&mut r, complex)?;
            let scope = if *weil { ClassGroupScope::WeilOnly } else { ClassGroupScope::AllRidges };
            let g = class_group(&w, scope)?;
            let mut result = json!({ "scope": scope, "free_rank": g.free_rank, "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(), "group": g.to_string() });
            if *weil {
                result["weil_lattice_rank"] = json!(weil_lattice(&w).rows());
            }
            r.result = result;
        }
        Command::Weil { complex, divisor } => {
            let w = load_complex(&mut r, complex)?;
            let (d, _) = load_divisor(&mut r, "divisor", &w, divisor)?;
            let rep = is_weil(&w, &d)?;
            r.outcome = Outcome::from_bool(rep.holds);
            r.result = serde_json::to_value(rep)?;
        }
        Command::Equiv { complex, d, d_prime, max_order } => equiv(&mut r, complex, d, d_prime, *max_order)?,
        Command::Subdivide { complex, m, out } => subdivide_cmd(&mut r, complex, *m, out.as_deref())?,
        Command::Rank { complex, divisor } => rank_cmd(&mut r, complex, divisor)?,
        Command::H0 { complex, divisor, points } => {
            let w = load_complex(&mut r, complex)?;
            let (d, _) = load_divisor(&mut r, "divisor", &w, divisor)?;
            let chips: Vec<(RationalPoint, i64)> = match points {
                Some(p) => load_points(&mut r, &w, p)?.into_iter().map(|(pt, c)| (pt, c.unwrap_or(1))).collect(),
                None => Vec::new(),
            };
            let h0 = h0_dim1(&w, &d, &chips)?;
            r.result = json!({
                "h0": h0,
                "chips": chips.iter().map(|(p, c)| json!({ "point": point_json(w.complex(), p), "chips": c })).collect::<Vec<_>>(),
            });
        }
        Command::H0Bound { complex, divisor, points, max_order, bound } => {
            h0_bound(&mut r, complex, divisor, points, *max_order, *bound)?
        }
        Command::Rr { complex, divisor, h0, h0k, pairing } => {
            let w = load_complex(&mut r, complex)?;
            let (d, _) = load_divisor(&mut r, "divisor", &w, divisor)?;
            let check = rr_check(&w, &d, *h0, *h0k, *pairing)?;
            r.outcome = Outcome::from_bool(check.verdict);
            r.result = check.to_json(&w);
        }
        Command::Example { which: Example::Tetrahedron, max_m, max_order } => tetrahedron(&mut r, *max_m, *max_order)?,
        Command::Example { which: Example::Cylinder, max_order, .. } => cylinder(&mut r, *max_order)?,
    }
    Ok(r)
}

fn load_complex(r: &mut Report, path: &Path) -> Result<WeakTropicalComplex, Failure> {
    r.input("complex", path)?;
    let f: ComplexFile = read_json(path)?;
    Ok(f.build()?)
}

/// The divisor and the complex whose ridges it names (the order-`order` subdivision).
fn load_divisor(
    r: &mut Report,
    role: &str,
    w: &WeakTropicalComplex,
    path: &Path,
) -> Result<(RidgeDivisor, WeakTropicalComplex), Failure> {
    r.input(role, path)?;
    let f: DivisorFile = read_json(path)?;
    if f.order == 0 {
        return Err(Failure::Malformed(format!("`{}`: order must be positive", path.display())));
    }
    let on = if f.order == 1 { w.clone() } else { subdivide(w, f.order)?.complex().clone() };
    Ok((f.to_divisor(&on)?, on))
}

fn load_points(
    r: &mut Report,
    w: &WeakTropicalComplex,
    path: &Path,
) -> Result<Vec<(RationalPoint, Option<i64>)>, Failure> {
    r.input("points", path)?;
    let f: PointsFile = read_json(path)?;
    Ok(f.to_points(w.complex())?)
}

fn validate(r: &mut Report, path: &Path) -> Result<(), Failure> {
    let w = load_complex(r, path)?;
    let c = w.complex();
    let violations = w.ridge_identity_violations();
    r.outcome = Outcome::from_bool(violations.is_empty());
    r.result = json!({
        "dimension": w.dim(),
        "simplices": (0..=c.dim()).map(|k| c.count(k)).collect::<Vec<_>>(),
        "euler_characteristic": w.euler_characteristic(),
        "ridge_identity_violations": violations,
    });
    Ok(())
}

fn tropical(r: &mut Report, path: &Path) -> Result<(), Failure> {
    let w = load_complex(r, path)?;
    let violations = w.ridge_identity_violations();
    if !violations.is_empty() {
        r.outcome = Outcome::Fails;
        r.result = json!({ "ridge_identity_violations": violations, "holds": false });
        return Ok(());
    }
    let rep = w.is_tropical();
    r.outcome = Outcome::from_bool(rep.holds);
    r.result = serde_json::to_value(rep)?;
    Ok(())
}

fn equiv(r: &mut Report, complex: &Path, d: &Path, d_prime: &Path, max_order: u32) -> Result<(), Failure> {
    let w = load_complex(r, complex)?;
    let (d, _) = load_divisor(r, "d", &w, d)?;
    let (d2, _) = load_divisor(r, "d_prime", &w, d_prime)?;
    let cert = lin_equiv(&w, &d, &d2, max_order)?;
    r.outcome = Outcome::from_bool(cert.is_some());
    r.result = json!({ "equivalent": cert.is_some(), "max_order": max_order });
    if let Some(c) = cert {
        let sub = subdivide(&w, c.order)?;
        r.certificates.push(json!({
            "kind": "linear_equivalence",
            "order": c.order,
            "phi": pl_json(sub.complex(), &c.phi),
            "verified": c.verify(&w, &d, &d2)?,
        }));
    }
    Ok(())
}

fn subdivide_cmd(r: &mut Report, complex: &Path, m: u32, out: Option<&Path>) -> Result<(), Failure> {
    let w = load_complex(r, complex)?;
    let sub = subdivide(&w, m)?;
    let c = sub.complex().complex();
    let map: Vec<Value> = (0..=c.dim())
        .flat_map(|k| c.simplices(k))
        .map(|s| {
            let h = sub.host(s);
            json!({ "id": c.id(s), "host": w.complex().id(h.simplex), "coords": h.coords })
        })
        .collect();
    let map = json!({ "order": m, "base": complex.display().to_string(), "simplices": map });
    let file = ComplexFile::from_complex(sub.complex());
    let counts: Vec<usize> = (0..=c.dim()).map(|k| c.count(k)).collect();
    r.result = match out {
        Some(out) => {
            let map_path = out.with_extension("map.json");
            write(out, &to_canonical_string(&file))?;
            write(&map_path, &to_canonical_string(&map))?;
            json!({
                "order": m,
                "simplices": counts,
                "complex_file": out.display().to_string(),
                "map_file": map_path.display().to_string(),
            })
        }
        None => json!({ "order": m, "simplices": counts, "complex": file, "map": map }),
    };
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Malformed(format!("cannot write `{}`: {e}", path.display())))
}

/// Nonzero entries of a vertex vector, keyed by vertex id.
fn named_vertices(w: &WeakTropicalComplex, v: &[i64]) -> Value {
    let map: serde_json::Map<String, Value> =
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (w.vertex_id(i).to_string(), json!(x))).collect();
    Value::Object(map)
}

fn rank_cmd(r: &mut Report, complex: &Path, divisor: &Path) -> Result<(), Failure> {
    let w = load_complex(r, complex)?;
    let (d, on) = load_divisor(r, "divisor", &w, divisor)?;
    let g = Graph::from_complex(&on)?;
    let coeffs = small_integer_coeffs(&on, &d)?;
    let res = rank(&g, &coeffs)?;
    let red = q_reduce(&g, &coeffs, 0)?;
    r.result =
        json!({ "rank": res.rank, "h0": res.rank + 1, "genus": g.genus(), "degree": coeffs.iter().sum::<i64>() });
    r.certificates.push(json!({
        "kind": "rank_witness",
        "remove": named_vertices(&on, &res.witness),
        "verified": res.verify_witness(&g, &coeffs)?,
    }));
    r.certificates.push(json!({
        "kind": "reduction",
        "q": on.vertex_id(red.q),
        "divisor": named_vertices(&on, &red.divisor),
        "phi": named_vertices(&on, &red.phi),
        "verified": red.verify(&g, &coeffs),
    }));
    Ok(())
}

fn h0_bound(
    r: &mut Report,
    complex: &Path,
    divisor: &Path,
    points: &Path,
    max_order: u32,
    bound: Option<i64>,
) -> Result<(), Failure> {
    let w = load_complex(r, complex)?;
    let (d, _) = load_divisor(r, "divisor", &w, divisor)?;
    let pts: Vec<RationalPoint> = load_points(r, &w, points)?.into_iter().map(|(p, _)| p).collect();
    let n = pts.len() as i64;
    let bound = bound.unwrap_or(4 * n.max(1));
    let lattice =
        pts.iter().map(|p| p.denominator().to_u32().unwrap_or(u32::MAX)).fold(d.order.max(1), |acc, x| acc.lcm(&x));
    let lower_order = lattice.max(max_order);
    let sets: Vec<Vec<RationalPoint>> = (0..pts.len()).map(|k| pts[..k].to_vec()).collect();
    let lower = h0_lower_bound(&w, &d, &sets, lower_order, bound, None)?;
    for c in &lower.certificates {
        r.certificates.push(json!({ "kind": "points", "verified": c.verify(&w, &d)?, "certificate": c.to_json(&w) }));
    }
    let upper = h0_upper_bound_bounded(&w, &d, &pts, max_order, bound)?;
    r.outcome = Outcome::from_bool(upper.holds());
    r.result = H0Report { divisor: d, lower, upper: Some(upper) }.to_json(&w);
    Ok(())
}

fn tetrahedron(r: &mut Report, max_m: i64, max_order: u32) -> Result<(), Failure> {
    let w = make_tetrahedron();
    let trop = w.is_tropical();
    let k = canonical_divisor(&w);
    let chi = w.euler_characteristic();
    let ks: Vec<i64> = (-max_m..=max_m).map(|m| 2 * m).collect();
    let rows = tetrahedron_table(&w, &ks, max_order)?;
    let half = tetrahedron_table(&w, &[1], max_order)?.remove(0);
    let rows_ok = rows.iter().all(|row| row.settled() && row.check.verdict);
    let half_ok = !half.check.verdict && !half.check.d_cartier.holds;
    r.outcome = Outcome::from_bool(trop.holds && k.is_zero() && chi == 2 && rows_ok && half_ok);
    r.result = json!({
        "tropical": trop.holds,
        "canonical_is_zero": k.is_zero(),
        "euler_characteristic": chi,
        "half_edge": half.check.to_json(&w),
        "table": rows.iter().map(|row| json!({
            "k": row.k,
            "h0_d": row.h0_d.lower.value,
            "h0_k_minus_d": row.h0_k_minus_d.lower.value,
            "lhs": row.check.lhs,
            "rhs": tropx_core::io::rational_json(&row.check.rhs),
            "verdict": row.check.verdict,
            "settled": row.settled(),
        })).collect::<Vec<_>>(),
    });
    r.certificates = rows.iter().chain([&half]).map(|row| row.to_json(&w)).collect();
    Ok(())
}

fn cylinder(r: &mut Report, max_order: u32) -> Result<(), Failure> {
    let cal = calibrate_cylinder(3, max_order)?;
    let verified = match cal.best() {
        Ok(best) => {
            let w = make_cylinder(best.constants)?;
            let (d_prime, d) = cylinder_divisors(&w);
            let cert = best.equivalence.as_ref().expect("accepted candidates carry a certificate");
            r.certificates.push(json!({
                "kind": "linear_equivalence",
                "statement": "2 D' ~ D",
                "d_prime": divisor_json(&w, &d_prime),
                "d": divisor_json(&w, &d),
                "candidate": best.to_json(),
            }));
            cert.verify(&w, &d_prime.plus(&d_prime), &d)?
        }
        Err(_) => false,
    };
    r.outcome = Outcome::from_bool(verified);
    r.result = json!({
        "checked": cal.checked,
        "tropical": cal.tropical,
        "accepted": cal.accepted.iter().map(|c| json!(c.constants)).collect::<Vec<_>>(),
        "certificate_verified": verified,
    });
    Ok(())
}
