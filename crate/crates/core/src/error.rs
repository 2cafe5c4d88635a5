use thiserror::Error;

/// Failures reported by the library. Variants fall into two families:
/// malformed input, and results that could not be settled within the
/// bounds supplied by the caller (see [`Error::is_scale_bounded`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("letter `{0}` is used but has no rule")]
    MissingRule(String),
    #[error("letter `{0}` has an empty image")]
    EmptyImage(String),
    #[error("letter `{0}` has more than one rule")]
    DuplicateRule(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("short blocks exceed the search cap {0}")]
    UnboundedShorts(usize),
    #[error("neither every image starts nor every image ends with a long letter")]
    NoNesting,
    #[error("word `{0}` is not in the factor language")]
    NotInLanguage(String),
    #[error("window too short for {levels} level(s)")]
    WindowTooShort { levels: usize },
    #[error("window `{0}` admits no tiling")]
    NoTiling(String),
    #[error("return word gap exceeds scale {0}")]
    ScaleTooSmall(usize),
    #[error("image of `{0}` does not split into return words")]
    DecompositionFailure(String),
    #[error("top count of `{letter}` is {count} but its image has length {image_len}")]
    CountExceedsImage { letter: String, count: usize, image_len: usize },
    #[error("not proper up to power {0}")]
    NotProper(usize),
    #[error("ordering is improper: {0}")]
    ImproperOrdering(String),
    #[error("windows have different spans")]
    SpanMismatch,
    #[error("short letters present: {0}")]
    ShortLettersPresent(String),
    #[error("images do not grow enough for radius {radius} at depth {depth}")]
    InsufficientGrowth { depth: usize, radius: usize },
    #[error("no minimal component found at scale {0}")]
    NoMinimalComponent(usize),
}

impl Error {
    /// True when the failure comes from a finite search bound rather than
    /// from the input itself.
    pub fn is_scale_bounded(&self) -> bool {
        matches!(
            self,
            Error::UnboundedShorts(_)
                | Error::WindowTooShort { .. }
                | Error::ScaleTooSmall(_)
                | Error::NotProper(_)
                | Error::InsufficientGrowth { .. }
                | Error::NoMinimalComponent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
