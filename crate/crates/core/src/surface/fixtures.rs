//! Small complexes used as worked examples.

use crate::complex::{build_complex, ComplexError, RawSimplex, WeakTropicalComplex};
use crate::point::RationalPoint;

fn v(id: &str) -> RawSimplex {
    RawSimplex::new(id, 0, &[])
}

/// Edge from `a` to `b`.
fn e(id: &str, a: &str, b: &str) -> RawSimplex {
    RawSimplex::new(id, 1, &[b, a])
}

/// Triangle `(v0, v1, v2)` with faces `[v1v2, v0v2, v0v1]`.
fn t(id: &str, faces: [&str; 3]) -> RawSimplex {
    RawSimplex::new(id, 2, &faces)
}

fn constants(entries: &[(&str, [i64; 2])]) -> Vec<(String, usize, i64)> {
    entries.iter().flat_map(|(r, a)| [(r.to_string(), 0, a[0]), (r.to_string(), 1, a[1])]).collect()
}

/// Boundary of a 3-simplex on vertices `a, b, c, d`; every structure constant is 1.
pub fn make_tetrahedron() -> WeakTropicalComplex {
    let simplices = vec![
        v("a"),
        v("b"),
        v("c"),
        v("d"),
        e("ab", "a", "b"),
        e("ac", "a", "c"),
        e("ad", "a", "d"),
        e("bc", "b", "c"),
        e("bd", "b", "d"),
        e("cd", "c", "d"),
        t("abc", ["bc", "ac", "ab"]),
        t("abd", ["bd", "ad", "ab"]),
        t("acd", ["cd", "ad", "ac"]),
        t("bcd", ["cd", "bd", "bc"]),
    ];
    let c = build_complex(2, &simplices).expect("tetrahedron is a valid complex");
    let alpha = vec![vec![1, 1]; c.count(1)];
    WeakTropicalComplex::new(c, alpha).expect("every edge lies in two triangles")
}

/// Names of the cylinder's boundary edges, in the order of `make_cylinder`'s parameters.
pub const CYLINDER_BOUNDARY: [&str; 4] = ["t", "t2", "b", "b2"];

/// Cylinder over a two-edge circle, cut into four triangles.
///
/// Top circle `u0, u1` with edges `t = (u0,u1)`, `t2 = (u1,u0)`; bottom circle `l0, l1`
/// with edges `b, b2`, both `(l0,l1)`; verticals `e = (u0,l0)` and `c = (u1,l1)`;
/// diagonals `d = (u1,l0)` and `d2 = (u0,l1)`. Interior edges carry constants `(1, 1)`.
/// Boundary edge `CYLINDER_BOUNDARY[i]` carries `(p[i], 1 - p[i])`.
pub fn make_cylinder(p: [i64; 4]) -> Result<WeakTropicalComplex, ComplexError> {
    let simplices = vec![
        v("u0"),
        v("u1"),
        v("l0"),
        v("l1"),
        e("t", "u0", "u1"),
        e("t2", "u1", "u0"),
        e("b", "l0", "l1"),
        e("b2", "l0", "l1"),
        e("e", "u0", "l0"),
        e("c", "u1", "l1"),
        e("d", "u1", "l0"),
        e("d2", "u0", "l1"),
        t("T1", ["d", "e", "t"]),
        t("T2", ["b", "c", "d"]),
        t("T3", ["d2", "c", "t2"]),
        t("T4", ["b2", "d2", "e"]),
    ];
    let c = build_complex(2, &simplices)?;
    let mut entries: Vec<(&str, [i64; 2])> = vec![("e", [1, 1]), ("c", [1, 1]), ("d", [1, 1]), ("d2", [1, 1])];
    for (name, &a) in CYLINDER_BOUNDARY.iter().zip(&p) {
        entries.push((name, [a, 1 - a]));
    }
    WeakTropicalComplex::from_entries(c, &constants(&entries))
}

/// Two triangles `(T,B,L)` and `(T,B,R)` glued along `TB`.
///
/// Boundary edges carry constant 1 at the side vertex `L` or `R` and 0 at `T` or `B`.
pub fn make_two_triangles() -> WeakTropicalComplex {
    let simplices = vec![
        v("T"),
        v("B"),
        v("L"),
        v("R"),
        e("TB", "T", "B"),
        e("TL", "T", "L"),
        e("BL", "B", "L"),
        e("TR", "T", "R"),
        e("BR", "B", "R"),
        t("TBL", ["BL", "TL", "TB"]),
        t("TBR", ["BR", "TR", "TB"]),
    ];
    let c = build_complex(2, &simplices).expect("valid complex");
    let entries = constants(&[("TB", [1, 1]), ("TL", [0, 1]), ("BL", [0, 1]), ("TR", [0, 1]), ("BR", [0, 1])]);
    WeakTropicalComplex::from_entries(c, &entries).expect("constants are complete")
}

/// Unit square `sw, se, ne, nw` split along the diagonal `sw-ne`.
///
/// Boundary constants put weight 1 on `se` (south, east) and `nw` (north, west): the apex
/// opposite each boundary edge moved one step along the outward coordinate ray.
pub fn make_square() -> WeakTropicalComplex {
    let simplices = vec![
        v("sw"),
        v("se"),
        v("ne"),
        v("nw"),
        e("south", "sw", "se"),
        e("east", "se", "ne"),
        e("north", "ne", "nw"),
        e("west", "sw", "nw"),
        e("diag", "sw", "ne"),
        t("lower", ["east", "diag", "south"]),
        t("upper", ["north", "west", "diag"]),
    ];
    let c = build_complex(2, &simplices).expect("valid complex");
    let entries =
        constants(&[("south", [0, 1]), ("east", [1, 0]), ("north", [0, 1]), ("west", [0, 1]), ("diag", [1, 1])]);
    WeakTropicalComplex::from_entries(c, &entries).expect("constants are complete")
}

/// Loopless multigraph on vertices `v0..` as a one-dimensional complex.
pub fn make_graph(num_vertices: usize, edges: &[(usize, usize)]) -> Result<WeakTropicalComplex, ComplexError> {
    let mut simplices: Vec<RawSimplex> = (0..num_vertices).map(|i| v(&format!("v{i}"))).collect();
    for (k, &(a, b)) in edges.iter().enumerate() {
        simplices.push(e(&format!("g{k}"), &format!("v{a}"), &format!("v{b}")));
    }
    WeakTropicalComplex::graph(build_complex(1, &simplices)?)
}

/// Edges of the tetrahedron running from `{a, b}` to `{c, d}`, in the order points cycle through them.
pub const TETRAHEDRON_RUNGS: [&str; 4] = ["ac", "bd", "ad", "bc"];

/// `count` points at heights `i / den` above the edge `ab`, `i = 1..=count`, cycling through
/// [`TETRAHEDRON_RUNGS`].
pub fn tetrahedron_height_points(w: &WeakTropicalComplex, count: usize, den: i64) -> Vec<RationalPoint> {
    (1..=count)
        .map(|i| {
            let edge = TETRAHEDRON_RUNGS[(i - 1) % 4];
            RationalPoint::from_ints(w.complex(), edge, &[den - i as i64, i as i64], den).expect("height in (0, 1)")
        })
        .collect()
}
