use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument fell outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Sensitivity or specificity requested with an empty margin.
    #[error("undefined endpoint: {0}")]
    UndefinedEndpoint(String),

    /// A matched sample table without discordant pairs cannot be tested.
    #[error("no discordant pairs")]
    NoDiscordantPairs,

    /// Tooth assignment was requested against an empty region list.
    #[error("no regions: {0}")]
    NoRegions(String),

    /// Control and study classifications do not cover the same teeth.
    #[error("unpaired data: {0}")]
    UnpairedData(String),

    /// A curve handed to the trapezoid integrator is not monotone.
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// The variance of an AUC difference collapsed to zero.
    #[error("degenerate comparison")]
    DegenerateComparison,

    /// Structural problems in an input document.
    #[error("schema: {0}")]
    Schema(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml: {0}")]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
