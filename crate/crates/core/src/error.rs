use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix determinant is {det}, expected 1")]
    Determinant { det: f64 },
    #[error("point is not inside its model: {0}")]
    InvalidPoint(String),
    #[error("point is the pole of the map")]
    Pole,
    #[error("map is not hyperbolic (|tr| = {trace})")]
    NotHyperbolic { trace: f64 },
    #[error("map is not elliptic (|tr| = {trace})")]
    NotElliptic { trace: f64 },
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group has no cusp")]
    NoCusp,
    #[error("character is not defined for group {0}")]
    NoCharacter(String),
    #[error("relation check failed: {0}")]
    Relation(String),
    #[error("reduced word of length {length} equals the identity")]
    ShortRelator { length: usize },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("class enumeration needs words longer than the cap {cap}")]
    WordCapExceeded { cap: usize },
    #[error("coset collision audit failed: {0}")]
    CosetCollision(String),
    #[error("second argument lies on the orbit of the first (distance {distance:e})")]
    OrbitCollision { distance: f64 },
    #[error("empty length spectrum")]
    EmptySpectrum,
    #[error("det Δ₀ requires Z'(1), which a truncated Euler product cannot provide")]
    RequiresDerivativeAtOne,
    #[error("series evaluation requested at r = {r}, outside the unit disk")]
    SeriesRadius { r: f64 },
    #[error("insufficient sampling: {samples} points for index {max_index}")]
    InsufficientSampling { samples: usize, max_index: usize },
    #[error("mode {n} is not a multiple of the cone order {m}")]
    ModeNotMultiple { n: i64, m: u32 },
    #[error("ODE integrator failed: {0}")]
    Integrator(String),
}

pub type Result<T> = core::result::Result<T, Error>;
