use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("mapping table has {actual} entries, expected {expected}")]
    TableWrongLength { expected: usize, actual: usize },

    #[error("mapping table image ({m},{n}) is outside the {dim_t}x{dim_d} joint index set")]
    TableIndexOutOfRange {
        m: usize,
        n: usize,
        dim_t: usize,
        dim_d: usize,
    },

    #[error("mapping table is not a bijection on the joint index set")]
    TableNotBijective,

    #[error("unitary dimension {actual} does not match joint dimension {expected}")]
    UnitaryDimensionMismatch { expected: usize, actual: usize },

    #[error("{which} state must be diagonal in its energy basis (max off-diagonal {deviation:.3e})")]
    NonDiagonalInput { which: &'static str, deviation: f64 },

    #[error("state dimension {actual} does not match the model's {which} dimension {expected}")]
    StateDimensionMismatch {
        which: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error(
        "entropy decomposition mismatch: H(p) + sum p_n S(rho_n) = {decomposed:.12} but S(sigma_tilde) = {direct:.12}"
    )]
    EntropyDecomposition { decomposed: f64, direct: f64 },

    #[error("joint entropy additivity violated: S(sigma_0) = {joint:.12} vs S_t + S_d = {sum:.12}")]
    AdditivityViolated { joint: f64, sum: f64 },

    #[error(transparent)]
    State(#[from] qcore::QcoreError),
}
