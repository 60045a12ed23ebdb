use thiserror::Error;

/// Every failure mode of the library, named by the condition that was
/// violated. The CLI maps `code()` into its JSON error objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("edge {0} carries a zero label")]
    ZeroLabel(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("argument must be non-zero")]
    ZeroInput,
    #[error("argument list must be non-empty")]
    EmptyInput,
    #[error("{p} divides {n}")]
    DividesModulus { p: String, n: String },
    #[error("edge {0} is a loop")]
    IsLoop(String),
    #[error("label of edge {0} at the collapse end is not a unit")]
    LabelNotUnit(String),
    #[error("unknown target {0}")]
    UnknownTarget(String),
    #[error("modular homomorphism is not defined for elementary groups")]
    NotDefined,
    #[error("modular image is not contained in {{1,-1}}: witness {0}")]
    ModularImageTooBig(String),
    #[error("group is elementary")]
    Elementary,
    #[error("vertex labeling does not exist: {0}")]
    ConditionFails(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("edge sequence is not a path: {0}")]
    NotAPath(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedInput(_) => "MalformedInput",
            Error::ZeroLabel(_) => "ZeroLabel",
            Error::Disconnected => "Disconnected",
            Error::EmptyGraph => "EmptyGraph",
            Error::DuplicateId(_) => "DuplicateId",
            Error::ZeroInput => "ZeroInput",
            Error::EmptyInput => "EmptyInput",
            Error::DividesModulus { .. } => "DividesModulus",
            Error::IsLoop(_) => "IsLoop",
            Error::LabelNotUnit(_) => "LabelNotUnit",
            Error::UnknownTarget(_) => "UnknownTarget",
            Error::NotDefined => "NotDefined",
            Error::ModularImageTooBig(_) => "ModularImageTooBig",
            Error::Elementary => "Elementary",
            Error::ConditionFails(_) => "ConditionFails",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NotAPath(_) => "NotAPath",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
