use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("non-manifold triangulation: {0}")]
    NonManifold(String),
    #[error("not a sphere: {0}")]
    NotSphere(String),
    #[error("missing length for edge {0}-{1}")]
    MissingLength(usize, usize),
    #[error("edge {0}-{1} has a non-positive or non-finite length")]
    InvalidLength(usize, usize),
    #[error("length given for {0}-{1}, which is not an edge")]
    UnknownEdge(usize, usize),
    #[error("face {face} violates the strict triangle inequality")]
    TriangleInequalityViolation { face: usize },
    #[error("face {face} is degenerate (area below the floor)")]
    DegenerateFace { face: usize },
    #[error("total angle deficit is {total}, expected 4π")]
    GaussBonnet { total: f64 },
    #[error("triangulation has repeated edges or loops and cannot be keyed by vertex pairs")]
    NonSimplicial,

    #[error("polygon is not strictly convex")]
    NonConvexPolygon,
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("paired boundary segments have different lengths: {0} vs {1}")]
    MismatchedSegmentLengths(f64, f64),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("glued surface is not a sphere: {0}")]
    NotSphereAfterGluing(String),

    #[error("at least three points are required")]
    TooFewPoints,
    #[error("all points are collinear")]
    CollinearInput,
    #[error("all points are coplanar")]
    DegenerateInput,

    #[error("geodesic search exceeded its budget of {0} windows")]
    SearchBudgetExceeded(usize),
    #[error("numerically ambiguous configuration: {0}")]
    NumericallyAmbiguous(String),
    #[error("vertex {vertex} has angle sum {angle} > 2π")]
    NotInPsi { vertex: usize, angle: f64 },
    #[error("edge {0} is not flippable")]
    NotFlippable(usize),
    #[error("geodesic trace failed: {0}")]
    TraceFailed(String),

    #[error("vertex {0} is not essential")]
    NotEssential(usize),
    #[error("patch base {patch} does not match geodesic length {geodesic}")]
    PatchBaseMismatch { patch: f64, geodesic: f64 },
    #[error("patch would push the angle sum at vertex {vertex} to {angle} > 2π")]
    AdmissibilityViolated { vertex: usize, angle: f64 },
    #[error("invalid lens patch: {0}")]
    InvalidPatch(String),
    #[error("no lens found at apex {0}")]
    NoLensFound(usize),

    #[error("expected exactly 4 essential vertices, found {0}")]
    WrongVertexCount(usize),
    #[error("flip search exhausted after {0} triangulations")]
    FlipSearchExhausted(usize),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("need at least 3 essential vertices, found {0}")]
    TooFewEssentialVertices(usize),
    #[error("geodesic endpoints must be distinct vertices, got {0} twice")]
    SameEndpoints(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Failures caused by numerical distress or exhausted budgets rather than invalid input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded(_)
                | Error::NumericallyAmbiguous(_)
                | Error::TraceFailed(_)
                | Error::FlipSearchExhausted(_)
                | Error::VerificationFailed(_)
                | Error::NoLensFound(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
