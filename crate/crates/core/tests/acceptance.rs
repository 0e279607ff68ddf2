//! One PASS/FAIL line per acceptance criterion, written straight to stderr so it shows
//! without `--nocapture`. The test fails if any criterion fails.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use common::{inertia_agrees, random_matrix, random_symmetric, seed, smith_agrees};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tropx_core::complex::{SimplexId, WeakTropicalComplex};
use tropx_core::divisor::{assemble_specialization, canonical_divisor, div_pl, lin_equiv, PLFunction, RidgeDivisor};
use tropx_core::graph::{default_direct_orders, h0_by_rank, h0_direct, small_multigraphs, Graph};
use tropx_core::io::{read_json, ComplexFile};
use tropx_core::linalg::AbelianGroup;
use tropx_core::subdivision::subdivide;
use tropx_core::surface::{
    calibrate_cylinder, cylinder_divisors, make_cylinder, make_square, make_tetrahedron, make_two_triangles,
    tetrahedron_table,
};

type Verdict = Result<String, Box<dyn std::error::Error>>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn tetrahedron_suite() -> Verdict {
    let w = make_tetrahedron();
    check(w.is_tropical().holds, || "tetrahedron is not tropical".into())?;
    check(canonical_divisor(&w).is_zero(), || "K is not zero".into())?;
    check(w.euler_characteristic() == 2, || format!("chi = {}", w.euler_characteristic()))?;
    let ks: Vec<i64> = (-3..=3).map(|m| 2 * m).collect();
    let rows = tetrahedron_table(&w, &ks, 2)?;
    for row in &rows {
        let m = row.k / 2;
        let h0 = &row.h0_d;
        let upper = h0.upper.as_ref().expect("upper record requested");
        let expected_h0 = (m + 1).max(0) as usize;
        check(h0.lower.value == expected_h0, || format!("m = {m}: lower bound {} != {expected_h0}", h0.lower.value))?;
        for c in &h0.lower.certificates {
            check(c.verify(&w, &h0.divisor)?, || format!("m = {m}: certificate fails to verify"))?;
        }
        check(upper.holds() && upper.max_order == 2, || format!("m = {m}: bounded upper search found a section"))?;
        if m >= 0 {
            check(upper.points.len() == m as usize + 1 && upper.bound == 4 * m + 4, || {
                format!("m = {m}: wrong family")
            })?;
        }
        let lhs = match m {
            0 => 2,
            _ => m.abs() + 1,
        };
        check(row.check.lhs == lhs, || format!("m = {m}: lhs {} != {lhs}", row.check.lhs))?;
        check(row.check.rhs == int(2), || format!("m = {m}: rhs {} != 2", row.check.rhs))?;
        check(row.check.verdict && row.check.hypothesis_holds(), || format!("m = {m}: verdict or hypothesis fails"))?;
    }
    let half = tetrahedron_table(&w, &[1], 2)?.remove(0);
    check(!half.check.d_cartier.holds, || "half case reported Cartier".into())?;
    check(half.check.lhs == 1 && half.check.rhs == int(2) && !half.check.verdict, || {
        "half case: expected 1 < 2".into()
    })?;
    let table: Vec<String> = rows.iter().map(|r| format!("{}:{}", r.k / 2, r.check.lhs)).collect();
    Ok(format!("lhs by m = [{}], rhs = 2; half edge non-Cartier with 1 < 2", table.join(" ")))
}

fn cylinder_suite() -> Verdict {
    let cal = calibrate_cylinder(3, 2)?;
    let best = cal.best()?;
    let w = make_cylinder(best.constants)?;
    check(best.tropical && w.is_tropical().holds, || "calibrated cylinder not tropical".into())?;
    check(best.weil_rank == Some(4), || format!("Weil lattice rank {:?}", best.weil_rank))?;
    let z = AbelianGroup { free_rank: 1, torsion: Vec::new() };
    check(best.class_group.as_ref() == Some(&z), || format!("Weil class group {:?}", best.class_group))?;
    let (d_prime, d) = cylinder_divisors(&w);
    let cert = best.equivalence.as_ref().ok_or("no certificate for 2D' ~ D")?;
    check(cert.verify(&w, &d_prime.plus(&d_prime), &d)?, || "2D' ~ D certificate fails".into())?;
    Ok(format!(
        "{} assignments, {} tropical, {} accepted; first {:?}: Weil rank 4, class group Z, 2D' ~ D at order {}",
        cal.checked,
        cal.tropical,
        cal.accepted.len(),
        best.constants,
        cert.order
    ))
}

fn graph_suite() -> Verdict {
    let mut cases: Vec<(Graph, Vec<i64>)> = Vec::new();
    let graphs = small_multigraphs(5, 6);
    for (n, edges) in &graphs {
        let g = Graph::new(*n, edges)?;
        let mut d = vec![-1i64; *n];
        loop {
            if d.iter().sum::<i64>() <= 4 {
                cases.push((g.clone(), d.clone()));
            }
            let Some(i) = d.iter().position(|&x| x < 2) else { break };
            d[i] += 1;
            for x in &mut d[..i] {
                *x = -1;
            }
        }
    }
    let mismatches: Vec<String> = cases
        .par_iter()
        .filter_map(|(g, d)| {
            let direct = h0_direct(g, d, default_direct_orders(g, d)).map(|r| r.h0);
            let by_rank = h0_by_rank(g, d);
            match (direct, by_rank) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!("{:?} {d:?}: direct {a:?}, rank {b:?}", g.edges())),
            }
        })
        .collect();
    check(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
    Ok(format!("{} graphs, {} divisors, all agree", graphs.len(), cases.len()))
}

fn corpus() -> Result<Vec<(String, WeakTropicalComplex)>, Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(&dir)?.map(|e| e.unwrap().path()).collect();
    entries.sort();
    for path in entries {
        let Ok(f) = read_json::<ComplexFile>(&path) else { continue };
        let w = f.build()?;
        // the seeded failure fixture breaks the ridge identity on purpose
        if w.validate_ridge_identity().is_ok() {
            out.push((path.file_stem().unwrap().to_string_lossy().into_owned(), w));
        }
    }
    Ok(out)
}

fn subdivision_suite() -> Verdict {
    let w = make_two_triangles();
    let sub = subdivide(&w, 2)?;
    let tb = w.complex().lookup("TB").ok_or("no central edge")?;
    let halves: Vec<usize> =
        (0..sub.complex().num_ridges()).filter(|&r| sub.host(SimplexId::new(1, r)).simplex == tb).collect();
    check(halves.len() == 2, || format!("central edge split into {}", halves.len()))?;
    for &r in &halves {
        check(sub.complex().alpha_row(r) == [1, 1], || {
            format!("half edge constants {:?}", sub.complex().alpha_row(r))
        })?;
    }
    let corpus = corpus()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut subdivisions = 0;
    for (name, w) in &corpus {
        let subs: Vec<_> =
            (1..=4).map(|m| subdivide(w, m)).collect::<Result<_, _>>().map_err(|e| format!("{name}: {e}"))?;
        for s in &subs {
            let wm = s.complex();
            for r in 0..wm.num_ridges() {
                let sum: i64 = wm.alpha_row(r).iter().sum();
                check(sum == wm.degree(r) as i64, || {
                    format!("{name} order {}: ridge {} sums to {sum}", s.order(), wm.ridge_id(r))
                })?;
            }
            subdivisions += 1;
        }
        for trial in 0..200 {
            let values: Vec<i64> = (0..w.num_vertices()).map(|_| rng.gen_range(-9..=9)).collect();
            let phi = PLFunction::from_integers(1, &values);
            let s = &subs[rng.gen_range(1..4)];
            let lhs = div_pl(s.complex(), &s.transfer_pl(&phi))?;
            check(lhs == s.pull_divisor(&div_pl(w, &phi)?), || format!("{name} trial {trial}: div does not commute"))?;
        }
    }
    Ok(format!(
        "central half edges (1, 1); {} fixtures, {subdivisions} subdivisions balanced and integral; {} transfers commute",
        corpus.len(),
        200 * corpus.len()
    ))
}

fn oracle_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let adjudicated = (0..500).filter(|_| !inertia_agrees(&random_symmetric(&mut rng)).1).count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0x5eed);
    let bad: Vec<Vec<Vec<i64>>> = (0..200).map(|_| random_matrix(&mut rng)).filter(|m| !smith_agrees(m)).collect();
    check(bad.is_empty(), || format!("Smith form disagrees on {:?}", bad[0]))?;
    Ok(format!("500 inertias ({adjudicated} settled by the exact count), 200 Smith forms agree"))
}

fn specialization_suite() -> Verdict {
    let w = make_square();
    let table: Vec<(String, i64)> = [("south", 1), ("east", 1), ("north", 1), ("west", 1), ("diag", -1)]
        .iter()
        .map(|(r, c)| (r.to_string(), *c))
        .collect();
    let d = assemble_specialization(&w, &table)?;
    let expected: Vec<(String, BigRational)> = table.iter().map(|(r, c)| (r.clone(), int(*c))).collect();
    check(d == RidgeDivisor::from_named(&w, 1, &expected)?, || "assembled divisor differs from the table".into())?;
    check(!d.is_effective(), || "specialization is already effective".into())?;
    let diag = RidgeDivisor::from_named(&w, 1, &[("diag".to_string(), int(1))])?;
    let cert = lin_equiv(&w, &d, &diag, 2)?.ok_or("no effective equivalent at order <= 2")?;
    check(diag.is_effective() && cert.verify(&w, &d, &diag)?, || "certificate fails".into())?;
    Ok(format!("four outer edges +1, diagonal -1; equivalent to the diagonal at order {}", cert.order))
}

fn run(n: usize, name: &str, f: fn() -> Verdict) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()).into())
    });
    let secs = start.elapsed().as_secs_f64();
    let line = match &outcome {
        Ok(detail) => format!("criterion {n} [{name}] PASS in {secs:.1} s: {detail}\n"),
        Err(why) => format!("criterion {n} [{name}] FAIL in {secs:.1} s: {why}\n"),
    };
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    outcome.is_ok()
}

#[test]
fn acceptance_criteria() {
    let results = [
        run(1, "tetrahedron", tetrahedron_suite),
        run(2, "cylinder", cylinder_suite),
        run(3, "graph h0 vs rank", graph_suite),
        run(4, "subdivision", subdivision_suite),
        run(5, "exactness oracles", oracle_suite),
        run(6, "specialization", specialization_suite),
    ];
    assert!(results.iter().all(|&ok| ok), "criteria passed: {results:?}");
}
