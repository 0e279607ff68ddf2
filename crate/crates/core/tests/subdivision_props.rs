use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropx_core::complex::{SimplexId, WeakTropicalComplex};
use tropx_core::divisor::{div_pl, PLFunction};
use tropx_core::point::RationalPoint;
use tropx_core::subdivision::subdivide;
use tropx_core::surface::{make_cylinder, make_graph, make_square, make_tetrahedron, make_two_triangles};

fn seed() -> u64 {
    std::env::var("TROPX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240917)
}

fn fixtures() -> Vec<(&'static str, WeakTropicalComplex)> {
    vec![
        ("tetrahedron", make_tetrahedron()),
        ("cylinder", make_cylinder([0, 0, 0, 1]).unwrap()),
        ("two-triangles", make_two_triangles()),
        ("square", make_square()),
        ("cycle", make_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()),
        ("banana", make_graph(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()),
    ]
}

#[test]
fn worked_transfer_on_central_edge() {
    let w = make_two_triangles();
    let sub = subdivide(&w, 2).unwrap();
    let w2 = sub.complex();
    let tb = w.complex().lookup("TB").unwrap();
    let half = (0..w2.num_ridges())
        .find(|&r| {
            let h = sub.host(SimplexId::new(1, r));
            h.simplex == tb && h.coords == vec![vec![2, 0], vec![1, 1]]
        })
        .expect("half edge at T");
    assert_eq!(w2.alpha_row(half), &[1, 1]);
}

#[test]
fn graph_subdivision_keeps_old_vertices_and_adds_degree_two() {
    let w = make_graph(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    let sub = subdivide(&w, 3).unwrap();
    let w3 = sub.complex();
    assert_eq!(w3.num_vertices(), 2 + 3 * 2);
    for v in 0..w3.num_vertices() {
        let expected = if v < 2 { 3 } else { 2 };
        assert_eq!(w3.alpha_row(v), &[expected]);
    }
}

#[test]
fn refined_constants_are_integral_and_balanced() {
    for (name, w) in fixtures() {
        for m in 1..=4 {
            let sub = subdivide(&w, m).unwrap_or_else(|e| panic!("{name} at order {m}: {e}"));
            let wm = sub.complex();
            for r in 0..wm.num_ridges() {
                let sum: i64 = wm.alpha_row(r).iter().sum();
                assert_eq!(sum, wm.degree(r) as i64, "{name} order {m} ridge {}", wm.ridge_id(r));
            }
            assert_eq!(wm.euler_characteristic(), w.euler_characteristic());
        }
    }
}

#[test]
fn order_one_is_the_identity() {
    for (name, w) in fixtures() {
        let sub = subdivide(&w, 1).unwrap();
        let w1 = sub.complex();
        for d in 0..=w.dim() {
            assert_eq!(w1.complex().ids(d), w.complex().ids(d), "{name}");
        }
        assert_eq!(w1.alphas(), w.alphas(), "{name}");
    }
}

#[test]
fn divisor_commutes_with_pl_transfer() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    for (name, w) in fixtures() {
        let subs: Vec<_> = (2..=4).map(|m| subdivide(&w, m).unwrap()).collect();
        for trial in 0..200 {
            let phi =
                PLFunction::from_integers(1, &(0..w.num_vertices()).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
            let d = div_pl(&w, &phi).unwrap();
            let sub = &subs[trial % subs.len()];
            let lhs = div_pl(sub.complex(), &sub.transfer_pl(&phi)).unwrap();
            assert_eq!(lhs, sub.pull_divisor(&d), "{name} trial {trial}");
        }
    }
}

#[test]
fn nested_subdivisions_agree() {
    for (name, w) in fixtures() {
        for (a, b) in [(2u32, 2u32), (2, 3), (3, 2)] {
            let direct = subdivide(&w, a * b).unwrap();
            let first = subdivide(&w, a).unwrap();
            let nested = subdivide(first.complex(), b).unwrap();
            let wd = direct.complex();
            let wn = nested.complex();
            assert_eq!(wd.num_vertices(), wn.num_vertices(), "{name}");
            assert_eq!(wd.num_ridges(), wn.num_ridges(), "{name}");
            // map each nested ridge to the direct one through its barycenter in base coordinates
            for r in 0..wn.num_ridges() {
                let s = SimplexId::new(w.dim() - 1, r);
                let mid = nested.barycenter(s);
                let outer = first.to_base(&mid);
                let cell = direct.locate(&outer).unwrap();
                assert_eq!(cell.dim, w.dim() - 1, "{name}");
                let verts_n: Vec<RationalPoint> =
                    wn.ridge_vertices(r).iter().map(|&v| first.to_base(&nested.vertex_point(v))).collect();
                let verts_d: Vec<RationalPoint> =
                    wd.ridge_vertices(cell.index).iter().map(|&v| direct.vertex_point(v)).collect();
                let vn: Vec<RationalPoint> = verts_n.iter().map(|p| p.minimal(w.complex())).collect();
                let vd: Vec<RationalPoint> = verts_d.iter().map(|p| p.minimal(w.complex())).collect();
                for (i, p) in vn.iter().enumerate() {
                    let j = vd.iter().position(|q| q == p).expect("same vertex set");
                    assert_eq!(wn.alpha(r, i), wd.alpha(cell.index, j), "{name} ({a},{b}) ridge {}", wn.ridge_id(r));
                }
            }
        }
    }
    let _ = BigRational::from_integer(0.into());
}
