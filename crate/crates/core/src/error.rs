use std::path::PathBuf;

use crate::data_model::MeasureId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error("measure {measure} is undefined: {reason}")]
    MeasureUndefined { measure: MeasureId, reason: String },

    #[error("linear trainer: {0}")]
    Training(String),

    #[error("projection produced non-finite features")]
    ProjectionOverflow,

    #[error("every initial projection is degenerate on this source dataset")]
    DegenerateSource,

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("refusing to overwrite {0} (pass --force)")]
    WouldOverwrite(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn undefined(measure: MeasureId, reason: impl Into<String>) -> Self {
        Error::MeasureUndefined {
            measure,
            reason: reason.into(),
        }
    }
}
