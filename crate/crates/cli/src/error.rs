use serde::Serialize;
use wh_core::Warning;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{} numerical warning(s) raised under --strict", .0.len())]
    Strict(Vec<Warning>),
    #[error("{0}")]
    Numerical(wh_core::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Strict(_) => 3,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Strict(_) => "strict",
            CliError::Numerical(_) => "numerical",
            CliError::Io(_) => "io",
        }
    }

    /// Single-line JSON document describing the failure.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            schema: u32,
            status: &'static str,
            kind: &'static str,
            exit_code: i32,
            message: String,
            warnings: &'a [Warning],
        }
        let warnings: &[Warning] = match self {
            CliError::Strict(w) => w,
            _ => &[],
        };
        serde_json::to_string(&Report {
            schema: 1,
            status: "error",
            kind: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
            warnings,
        })
        .expect("error report serializes")
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parameter errors from the core library are validation failures; the
/// message drops the library's category prefix.
pub(crate) fn validation(e: wh_core::Error) -> CliError {
    match e {
        wh_core::Error::InvalidParameter(m) | wh_core::Error::Domain(m) => CliError::Validation(m),
        other => CliError::Validation(other.to_string()),
    }
}

impl From<wh_core::Error> for CliError {
    fn from(e: wh_core::Error) -> Self {
        CliError::Numerical(e)
    }
}
