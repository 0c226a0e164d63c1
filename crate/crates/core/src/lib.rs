//! Convex polyhedra and polyhedral cone metrics on the sphere.
//!
//! The crate covers both directions between convex polyhedra (including
//! doubled planar polygons) and sphere metrics whose angle sums are at most
//! 2π: the surface map [`iota`], curvature and admissibility reports,
//! exact geodesics by unfolding, retriangulation onto cone points, the lens
//! cut-and-patch move, and the four-vertex inverse map [`embed4`].
//!
//! All geometry is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what the tolerances are
//! calibrated for.

pub mod builders;
pub mod config;
pub mod correspondence;
pub mod error;
pub mod forward;
pub mod generate;
pub mod geodesic;
pub mod geom;
pub mod hull;
pub mod io;
pub mod metric;
pub mod retriangulate;
pub(crate) mod mesh;
pub mod scalar;
pub mod surgery;
pub mod topology;

pub use config::Config;
pub use correspondence::{cayley_menger, embed4, fingerprint, probably_isometric, EmbeddingResult, IsometryFingerprint, Verdict};
pub use error::{Error, Result};
pub use forward::{canonicalize_polyhedron, iota, iota_with, Polyhedron};
pub use geodesic::{distance_matrix, shortest_geodesic, Crossing, DistanceMatrix, GeodesicLeg, GeodesicPath};
pub use hull::convex_hull_3d;
pub use metric::{ConeMetric, CurvatureReport, PsiCheck};
pub use retriangulate::{edge_flip, retriangulate_essential, EssentialTriangulation};
pub use scalar::Real;
pub use surgery::{cut_and_patch, excise_lens, Excision, LensPatch};
pub use topology::Triangulation;

pub type ConeMetric64 = ConeMetric<f64>;
pub type ConeMetric32 = ConeMetric<f32>;
