//! Process-level error type carrying the exit-code contract of the binary:
//! `2` for input errors, `3` for failed mathematical checks, `4` for internal
//! assertions.  Success paths return `0` directly.

use std::fmt;

/// A command failure, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or inapplicable input: unreadable files, schema violations,
    /// unparsable numbers, or flags that do not apply to the requested model.
    Input(String),
    /// The input was well-formed but an exact mathematical check failed:
    /// coefficient constraints, closedness, nondegeneracy, or a hard
    /// Lefschetz verdict.
    Check(String),
    /// An internal consistency assertion failed; indicates a bug, not bad
    /// input.
    Internal(String),
}

impl CliError {
    /// The process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    /// Shorthand for an [`CliError::Input`] from anything displayable.
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// An input error for a failed file operation, naming the path.
    pub fn io(action: &str, path: &std::path::Path, err: &std::io::Error) -> Self {
        CliError::Input(format!("cannot {action} {}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Check(m) => write!(f, "mathematical check failed: {m}"),
            CliError::Internal(m) => write!(f, "internal assertion failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

/// Maps library failures raised while *constructing* objects from descriptor
/// data: bad numbers and violated model preconditions are input errors.
pub fn input_err(e: solvco::Error) -> CliError {
    match e {
        solvco::Error::Internal { .. } => CliError::Internal(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

/// Maps library failures raised while *verifying* mathematics on a
/// well-formed model.  Coefficient constraints, closedness, nondegeneracy
/// and failed identities are check failures (exit 3); basis-size caps remain
/// input errors (the cap is configuration), inapplicable operations are
/// usage errors, and internal assertions stay internal.
pub fn check_err(e: solvco::Error) -> CliError {
    match e {
        solvco::Error::Internal { .. } => CliError::Internal(e.to_string()),
        solvco::Error::TooLarge { .. } | solvco::Error::Unsupported { .. } => {
            CliError::Input(e.to_string())
        }
        _ => CliError::Check(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::input("x").exit_code(), 2);
        assert_eq!(CliError::Check("x".into()).exit_code(), 3);
        assert_eq!(CliError::Internal("x".into()).exit_code(), 4);
    }

    #[test]
    fn library_errors_are_classified_by_phase() {
        let invalid = solvco::Error::invalid("op", "bad");
        assert_eq!(input_err(invalid).exit_code(), 2);
        // The same variant raised during verification is a check failure:
        // the coefficient constraints are mathematical preconditions.
        let invalid = solvco::Error::invalid("build_symplectic", "C must be nonzero");
        assert_eq!(check_err(invalid).exit_code(), 3);
        let degenerate = solvco::Error::Degenerate { power: 3 };
        assert_eq!(check_err(degenerate).exit_code(), 3);
        let cap = solvco::Error::TooLarge {
            degree: 4,
            size: 100,
            cap: 10,
        };
        assert_eq!(check_err(cap).exit_code(), 2);
        let bug = solvco::Error::internal("op", "impossible");
        assert_eq!(check_err(bug).exit_code(), 4);
        assert_eq!(input_err(solvco::Error::internal("op", "x")).exit_code(), 4);
    }
}
