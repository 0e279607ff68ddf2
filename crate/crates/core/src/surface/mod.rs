//! Worked surface examples, linear-series searches and Riemann–Roch bookkeeping.

pub mod cylinder;
pub mod fixtures;
pub mod rr;
pub mod search;
pub mod series;
pub mod tetrahedron;

pub use cylinder::{calibrate_cylinder, check_candidate, cylinder_divisors, Calibration, CylinderCandidate};
pub use fixtures::{
    make_cylinder, make_graph, make_square, make_tetrahedron, make_two_triangles, tetrahedron_height_points,
    CYLINDER_BOUNDARY, TETRAHEDRON_RUNGS,
};
pub use rr::{cartier_status, rr_check, CartierStatus, RRCheck};
pub use series::{
    certify_points, effective_equivalent, h0_lower_bound, h0_upper_bound_bounded, self_pairing_disjoint, Family,
    H0Report, LowerBound, PointCertificate, SelfPairing, SurfaceError, UpperRecord,
};
pub use tetrahedron::{edge_multiple, tetrahedron_h0, tetrahedron_table, TetrahedronRow};
