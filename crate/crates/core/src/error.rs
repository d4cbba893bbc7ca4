use thiserror::Error;

pub type Result<T> = std::result::Result<T, ZlabError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZlabError {
    /// An argument outside the operation's domain (negative height, σ too
    /// close to the critical line, window constraint, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("zeta has a pole at s = 1")]
    Pole,

    /// The requested accuracy could not be reached; `achieved` is the best
    /// bound the method could certify.
    #[error("precision error in {context}: achieved {achieved:e}, required {required:e}")]
    Precision {
        context: String,
        achieved: f64,
        required: f64,
    },

    #[error("root error: {0}")]
    Root(String),

    #[error("argument tracking failed at t = {t}: {reason}")]
    Tracking { t: f64, reason: String },

    /// S(t) jumps at zero ordinates, so its value there is convention-dependent.
    #[error("t = {t} lies on a zero ordinate; S(t) is ambiguous there")]
    AmbiguousBranch { t: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl ZlabError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ZlabError::Domain(msg.into())
    }

    /// Short machine-readable class name, used by the CLI for error reporting.
    pub fn class(&self) -> &'static str {
        match self {
            ZlabError::Domain(_) => "domain",
            ZlabError::Pole => "pole",
            ZlabError::Precision { .. } => "precision",
            ZlabError::Root(_) => "root",
            ZlabError::Tracking { .. } => "tracking",
            ZlabError::AmbiguousBranch { .. } => "ambiguous-branch",
            ZlabError::Config(_) => "config",
            ZlabError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for ZlabError {
    fn from(e: std::io::Error) -> Self {
        ZlabError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for ZlabError {
    fn from(e: serde_json::Error) -> Self {
        ZlabError::Io(e.to_string())
    }
}
