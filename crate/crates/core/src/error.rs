use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("degenerate Fermi level: eigenvalues {below} and {above} at filling {n_particles}")]
    DegenerateFermiLevel {
        n_particles: usize,
        below: f64,
        above: f64,
    },
    #[error("site {0} is not part of the correlation matrix")]
    IndexOutOfRange(usize),
    #[error("not a fermionic state: correlation eigenvalue {0} outside [0, 1]")]
    NotAState(f64),
    #[error("region has no nearest-neighbour bonds")]
    NoBonds,
    #[error("regions overlap at site {0}")]
    OverlappingRegions(usize),
    #[error("{n_active} active modes exceeds the enumeration limit of {limit}")]
    TooManyModes { n_active: usize, limit: usize },
    #[error("outcome has {got} modes, conditioning basis has {expected}")]
    ModeMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("temperature profile is not positive at x = {0}")]
    NonPositiveTemperature(f64),
    #[error("x = {0} is not an interior point of the sampled profile")]
    BoundaryPoint(f64),
    #[error("trajectory left the profile domain at x = {0}")]
    DomainExit(f64),
    #[error("|v| = {0} is not below the speed limit")]
    SuperluminalVelocity(f64),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate many-body ground state (gap {0:e})")]
    DegenerateGroundState(f64),
    #[error("system too large for the dense oracle: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
