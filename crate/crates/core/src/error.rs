use std::fmt;

/// Category of a DGF parse failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Missing or unknown header line.
    Header,
    /// Directive not valid for the declared graph type.
    Directive,
    /// Malformed line (wrong token count, bad integer).
    Token,
    /// Arc with equal endpoints.
    Loop,
    /// Repeated declaration, arc, or edge line.
    Duplicate,
    /// Edge endpoint missing from the required part.
    Part,
    /// Edge multiplicity that is not a positive integer.
    Multiplicity,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Header => "header",
            ParseErrorKind::Directive => "directive",
            ParseErrorKind::Token => "token",
            ParseErrorKind::Loop => "loop",
            ParseErrorKind::Duplicate => "duplicate",
            ParseErrorKind::Part => "part",
            ParseErrorKind::Multiplicity => "multiplicity",
        };
        f.write_str(s)
    }
}

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {kind} error: {msg}")]
    Parse {
        kind: ParseErrorKind,
        line: usize,
        msg: String,
    },
    #[error("invalid vertex name {0:?}")]
    BadName(String),
    #[error("loop at vertex {0}")]
    Loop(String),
    #[error("vertex declared twice: {0}")]
    DuplicateName(String),
    #[error("unknown vertex: {0}")]
    InvalidVertex(String),
    #[error("edge multiplicity must be positive")]
    InvalidMultiplicity,
    #[error("k must be at least 1")]
    InvalidK,
    #[error("witness set must lie inside one part")]
    InvalidT,
    #[error("simple graph required: edge {x},{y} has multiplicity {mu}")]
    NotSimple { x: String, y: String, mu: u32 },
    #[error("not {expected}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        expected: u32,
        vertex: String,
        degree: i64,
    },
    #[error("window is not closed: {0} has a neighbor outside it")]
    WindowNotClosed(String),
    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),
    #[error("flow assignment does not match the network arcs")]
    InvalidFlow,
    #[error("not a derangement: {0}")]
    NotDerangement(String),
    #[error("not a permutation of the vertex set: {0}")]
    InvalidPermutation(String),
    #[error("instance exceeds the oracle guard: {0} (set ORACLE_MAX to override)")]
    TooLarge(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
}

impl Error {
    pub(crate) fn parse(kind: ParseErrorKind, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            kind,
            line,
            msg: msg.into(),
        }
    }

    /// Parse failure category, when this is a parse error.
    pub fn parse_kind(&self) -> Option<ParseErrorKind> {
        match self {
            Error::Parse { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}
