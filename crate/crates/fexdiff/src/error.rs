use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] fexdiff_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error(
        "{rows} samples do not fit the configuration (m = {m}); resample to {} points (r = {}) or {} points (r = {})",
        .below.1, .below.0, .above.1, .above.0
    )]
    SampleCount {
        rows: usize,
        m: usize,
        /// Nearest valid `(r, count)` at or below `rows`.
        below: (u32, usize),
        /// Nearest valid `(r, count)` above `rows`.
        above: (u32, usize),
    },

    #[error("unknown test function `{0}` (expected f1..f6)")]
    UnknownFunction(String),

    #[error("unknown method `{0}` (expected m1 or m2)")]
    UnknownMethod(String),

    #[error("relative error undefined: exact derivative is identically zero")]
    ZeroReference,

    #[error("length mismatch: {0} vs {1}")]
    Length(usize, usize),

    #[error("nothing to plot: no benchmark records")]
    EmptyRecords,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}

pub(crate) fn csv_err(path: impl Into<PathBuf>) -> impl FnOnce(csv::Error) -> Error {
    let path = path.into();
    move |source| Error::Csv { path, source }
}
