use num_bigint::BigInt;
use num_rational::BigRational;
use tropx_core::complex::WeakTropicalComplex;
use tropx_core::divisor::RidgeDivisor;
use tropx_core::point::RationalPoint;
use tropx_core::surface::*;

fn edge_multiple(w: &WeakTropicalComplex, edge: &str, k: i64) -> RidgeDivisor {
    let mut c = vec![0i64; w.num_ridges()];
    c[w.ridge_index(edge).unwrap()] = k;
    RidgeDivisor::from_integers(1, &c)
}

/// `h0` of `k [ab]`: the lower bound over height points and the bounded upper record.
fn tetra_h0(w: &WeakTropicalComplex, k: i64) -> (usize, bool) {
    let d = edge_multiple(w, "ab", k);
    let m = (k.max(0) / 2) as usize;
    let den = m as i64 + 2;
    let sets: Vec<Vec<RationalPoint>> = (0..=m).map(|s| tetrahedron_height_points(w, s, den)).collect();
    let bound = 4 * m as i64 + 4;
    let lower = h0_lower_bound(w, &d, &sets, den as u32, bound, None).unwrap();
    for c in &lower.certificates {
        assert!(c.verify(w, &d).unwrap());
    }
    let upper = h0_upper_bound_bounded(w, &d, &tetrahedron_height_points(w, lower.value, den), 2, bound).unwrap();
    (lower.value, upper.holds())
}

#[test]
fn tetrahedron_multiples_reach_m_plus_one() {
    let w = make_tetrahedron();
    for m in 0..=3 {
        assert_eq!(tetra_h0(&w, 2 * m), (m as usize + 1, true), "m = {m}");
    }
}

#[test]
fn negative_multiples_have_no_sections() {
    let w = make_tetrahedron();
    for m in 1..=2 {
        assert_eq!(tetra_h0(&w, -2 * m), (0, true));
    }
}

#[test]
fn two_points_at_distinct_heights_defeat_twice_an_edge() {
    let w = make_tetrahedron();
    let d = edge_multiple(&w, "ab", 2);
    let pts = tetrahedron_height_points(&w, 2, 3);
    let rec = h0_upper_bound_bounded(&w, &d, &pts, 3, 6).unwrap();
    assert!(rec.holds(), "{:?}", rec.counterexample);
    assert_eq!(rec.searched.len(), 3);
}

#[test]
fn points_on_the_support_are_always_covered() {
    let w = make_tetrahedron();
    let d = edge_multiple(&w, "ab", 2);
    let p = RationalPoint::from_ints(w.complex(), "ab", &[1, 2], 3).unwrap();
    let rec = h0_upper_bound_bounded(&w, &d, &[p], 1, 2).unwrap();
    assert!(!rec.holds());
    assert!(rec.statement().contains("no upper bound"));
}

#[test]
fn certificates_cover_every_subset_of_their_points() {
    let w = make_tetrahedron();
    let d = edge_multiple(&w, "ab", 4);
    let pts = tetrahedron_height_points(&w, 2, 4);
    let cert = certify_points(&w, &d, &pts, 4, 12, None).unwrap().unwrap();
    for keep in [vec![], vec![0], vec![1]] {
        let mut sub = cert.clone();
        sub.points = keep.iter().map(|&i| pts[i].clone()).collect();
        assert!(sub.verify(&w, &d).unwrap());
    }
}

#[test]
fn twice_an_edge_moves_off_itself() {
    let w = make_tetrahedron();
    let d = edge_multiple(&w, "ab", 2);
    match self_pairing_disjoint(&w, &d, 2).unwrap() {
        SelfPairing::Zero { equivalence, disjoint } => {
            assert!(equivalence.verify(&w, &d, &disjoint).unwrap());
            assert_eq!(disjoint, edge_multiple(&w, "cd", 2));
        }
        SelfPairing::Unknown { .. } => panic!("expected a disjoint representative"),
    }
    let zero = RidgeDivisor::zero(w.num_ridges(), 1);
    assert!(matches!(self_pairing_disjoint(&w, &zero, 2).unwrap(), SelfPairing::Zero { .. }));
}

#[test]
fn central_edge_of_two_triangles_stays_put() {
    let w = make_two_triangles();
    let d = edge_multiple(&w, "TB", 1);
    assert_eq!(self_pairing_disjoint(&w, &d, 2).unwrap(), SelfPairing::Unknown { max_order: 2 });
}

#[test]
fn riemann_roch_table_on_the_tetrahedron() {
    let w = make_tetrahedron();
    for m in -3i64..=3 {
        let (h0_d, ok1) = tetra_h0(&w, 2 * m);
        let (h0_kd, ok2) = tetra_h0(&w, -2 * m);
        assert!(ok1 && ok2);
        let check = rr_check(&w, &edge_multiple(&w, "ab", 2 * m), h0_d as i64, h0_kd as i64, 0).unwrap();
        assert!(check.is_consistent());
        let expected = if m == 0 { 2 } else { m.abs() + 1 };
        assert_eq!(check.lhs, expected);
        assert_eq!(check.rhs, BigRational::from_integer(BigInt::from(2)));
        assert!(check.verdict);
        assert!(check.hypothesis_holds());
    }
}

#[test]
fn half_of_twice_an_edge_breaks_the_inequality() {
    let w = make_tetrahedron();
    let half = edge_multiple(&w, "ab", 1);
    let (h0_half, ok) = tetra_h0(&w, 1);
    assert!(ok);
    let (h0_k, ok) = tetra_h0(&w, -1);
    assert!(ok);
    let check = rr_check(&w, &half, h0_half as i64, h0_k as i64, 0).unwrap();
    assert_eq!((check.lhs, check.verdict), (1, false));
    assert!(!check.d_cartier.holds);
    assert!(check.k_cartier.holds);
    assert_eq!(check.summary(), "inequality fails; hypothesis violated");
}

#[test]
fn calibrated_cylinder_passes_every_check() {
    let cal = calibrate_cylinder(3, 2).unwrap();
    assert_eq!(cal.checked, 1296);
    assert!(cal.accepted.iter().any(|c| c.constants == [0, 0, 0, 1]));
    let best = cal.best().unwrap();
    let w = make_cylinder(best.constants).unwrap();
    let (d_prime, d) = cylinder_divisors(&w);
    assert!(best.equivalence.as_ref().unwrap().verify(&w, &d_prime.plus(&d_prime), &d).unwrap());
}

#[test]
fn cylinder_top_circle_series() {
    let w = make_cylinder([0, 0, 0, 1]).unwrap();
    let (_, d) = cylinder_divisors(&w);
    for m in 1..=2i64 {
        let dm = d.scaled(&BigRational::from_integer(m.into()));
        let den = m + 2;
        let heights: Vec<RationalPoint> = (1..=m + 1)
            .map(|i| {
                let edge = if i % 2 == 1 { "e" } else { "c" };
                RationalPoint::from_ints(w.complex(), edge, &[den - i, i], den).unwrap()
            })
            .collect();
        let cert = certify_points(&w, &dm, &heights[..m as usize], den as u32, 4 * m + 4, None).unwrap();
        assert!(cert.unwrap().verify(&w, &dm).unwrap(), "m = {m}");
        let rec = h0_upper_bound_bounded(&w, &dm, &heights, 2, 4 * m + 4).unwrap();
        assert!(rec.holds(), "m = {m}: {:?}", rec.counterexample.map(|c| c.equivalence.order));
    }
}
