use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point height {0} is not strictly positive")]
    NonPositiveHeight(f64),
    #[error("determinant {0} is not 1 within tolerance")]
    Determinant(f64),
    #[error("undefined direction: the two points coincide")]
    UndefinedDirection,
    #[error("degenerate geodesic: endpoints coincide")]
    DegenerateGeodesic,
    #[error("degenerate arc: {0}")]
    DegenerateArc(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),
    #[error("ping-pong violation: {0}")]
    PingPong(String),

    #[error("uncertified group `{0}`: use enumerate_dedup for best-effort enumeration")]
    Uncertified(String),
    #[error("radius {radius} exceeds the hard cap {cap}")]
    RadiusCap { radius: f64, cap: f64 },
    #[error("word length {0} exceeds the brute-force cost guard of 14")]
    WordLengthCap(usize),

    #[error("growth table: {0}")]
    GrowthTable(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("exponent {s} is too close to the critical exponent estimate {delta}")]
    Divergence { s: f64, delta: f64 },
    #[error("empty orbit: no records within the truncation radius")]
    EmptyOrbit,
    #[error("partition mismatch: {0}")]
    Partition(String),

    #[error("records are missing the boundary image of xi")]
    MissingXiImage,
    #[error("predicate mismatch: {0}")]
    PredicateMismatch(String),
    #[error("compact set of geodesics is empty (separation {0} > pi)")]
    EmptyCompactSet(f64),
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T> = std::result::Result<T, Error>;
