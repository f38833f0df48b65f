use std::fmt;
use std::path::Path;

/// Command failure, mapped onto the exit-code contract: 1 for input/output
/// problems, 2 for invalid data or configuration.
#[derive(Debug)]
pub enum Failure {
    Io(String),
    Invalid(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Failure::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(msg) | Failure::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl From<shockpath::Error> for Failure {
    fn from(err: shockpath::Error) -> Self {
        match err {
            // A document without a single arc line is treated like an
            // unreadable input.
            shockpath::Error::NoArcs => Failure::Io("input contains no arcs".into()),
            shockpath::Error::Validation(report) => {
                let lines: Vec<String> = report
                    .errors
                    .iter()
                    .map(|e| format!("line {}: {}", e.line, e.message))
                    .collect();
                Failure::Invalid(lines.join("\n"))
            }
            other => Failure::Invalid(other.to_string()),
        }
    }
}
