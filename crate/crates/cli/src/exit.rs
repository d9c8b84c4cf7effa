use std::fmt;

use helly_core::Error;

/// Process exit codes. Every nonzero code names one failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Code {
    Ok = 0,
    /// A requested verdict failed (bound check, oracle disagreement).
    Verdict = 1,
    /// Bad command-line usage (also clap's own code).
    Usage = 2,
    /// Unreadable or malformed instance data.
    Parse = 3,
    /// Invalid construction spec or failed generation.
    Spec = 4,
    /// Instance above an exact-search limit.
    Scale = 5,
    Io = 6,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

impl Failure {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(Code::Usage, message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::MalformedInput(_) | Error::HypothesisViolation(_) => {
                Code::Parse
            }
            Error::Spec(_) | Error::Generation(_) => Code::Spec,
            Error::ScaleLimit { .. } => Code::Scale,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(Code::Io, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(Code::Io, e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;
