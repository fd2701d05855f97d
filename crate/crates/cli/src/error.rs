use std::fmt;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Precondition(String),
    Tolerance(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) | CliError::Io(_) => 3,
            CliError::Tolerance(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "{m}"),
            CliError::Tolerance(m) => write!(f, "tolerance exceeded: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<qwsearch::Error> for CliError {
    fn from(e: qwsearch::Error) -> Self {
        match e {
            qwsearch::Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
