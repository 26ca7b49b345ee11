use serde::Serialize;

/// Errors raised by the numerical and symbolic routines.
///
/// Every variant names the operation that failed (`module::operation`) so
/// that reports written by the CLI can point at the offending call.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: configuration error: {msg}")]
    Config { op: &'static str, msg: String },

    #[error("{op}: singularity at t = {t}: {msg}")]
    Singularity { op: &'static str, t: f64, msg: String },

    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("{op}: shock formed (breaking time {t_break}); bracketed roots {roots:?}")]
    ShockFormed {
        op: &'static str,
        t_break: f64,
        roots: Vec<f64>,
    },

    #[error("{op}: positivity violated at sample {index} (value {value})")]
    Positivity {
        op: &'static str,
        index: usize,
        value: f64,
    },

    #[error("{op}: periodicity violated, mean of field is {mean}")]
    Periodicity { op: &'static str, mean: f64 },

    #[error("{op}: divergence: {msg}")]
    Divergence { op: &'static str, msg: String },

    #[error("{op}: degenerate input: {msg}")]
    Degenerate { op: &'static str, msg: String },

    #[error("{op}: contract violated: {msg}")]
    Contract { op: &'static str, msg: String },

    #[error("{op}: accuracy not reached: {msg}")]
    Accuracy { op: &'static str, msg: String },

    #[error("{op}: evaluation error: {msg}")]
    Evaluation { op: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn op(&self) -> &'static str {
        match self {
            Error::Config { op, .. }
            | Error::Singularity { op, .. }
            | Error::Domain { op, .. }
            | Error::ShockFormed { op, .. }
            | Error::Positivity { op, .. }
            | Error::Periodicity { op, .. }
            | Error::Divergence { op, .. }
            | Error::Degenerate { op, .. }
            | Error::Contract { op, .. }
            | Error::Accuracy { op, .. }
            | Error::Evaluation { op, .. } => op,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config { .. } => "config",
            Error::Singularity { .. } => "singularity",
            Error::Domain { .. } => "domain",
            Error::ShockFormed { .. } => "shock-formed",
            Error::Positivity { .. } => "positivity",
            Error::Periodicity { .. } => "periodicity",
            Error::Divergence { .. } => "divergence",
            Error::Degenerate { .. } => "degenerate",
            Error::Contract { .. } => "contract",
            Error::Accuracy { .. } => "accuracy",
            Error::Evaluation { .. } => "evaluation",
        }
    }

    /// Configuration and contract errors come from the caller's input; the
    /// rest are failures of the computation itself.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Config { .. } | Error::Contract { .. })
    }

    pub fn report(&self) -> ErrorReport {
        let (module, operation) = self.op().split_once("::").unwrap_or(("", self.op()));
        let values = match self {
            Error::Singularity { t, .. } => vec![*t],
            Error::ShockFormed { t_break, roots, .. } => {
                let mut v = vec![*t_break];
                v.extend(roots);
                v
            }
            Error::Positivity { value, .. } => vec![*value],
            Error::Periodicity { mean, .. } => vec![*mean],
            _ => vec![],
        };
        ErrorReport {
            schema_version: crate::io::SCHEMA_VERSION,
            kind: self.kind(),
            module: module.to_string(),
            operation: operation.to_string(),
            message: self.to_string(),
            values,
        }
    }
}

/// Machine-readable form of an [`Error`].
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub kind: &'static str,
    pub module: String,
    pub operation: String,
    pub message: String,
    pub values: Vec<f64>,
}

pub fn config(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Config { op, msg: msg.into() }
}

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { op, msg: msg.into() }
}

pub(crate) fn contract(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Contract { op, msg: msg.into() }
}
