use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("preset `{preset}`: no rule for the pair {hi}·{lo}")]
    RuleGap { preset: String, hi: String, lo: String },
    #[error("preset `{0}`: normal ordering exceeded the step guard (bad rule table?)")]
    StepGuard(String),
    #[error("preset `{preset}`: cannot reorder {hi}^-1·{lo}^-1 with a non-scalar rule")]
    UnsupportedInverse { preset: String, hi: String, lo: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` is not invertible")]
    NotInvertible(String),
    #[error("no differential for generator `{0}`")]
    MissingDifferential(String),
    #[error("no image for generator `{0}`")]
    MissingImage(String),
    #[error("preset `{preset}`: {msg}")]
    BadPreset { preset: String, msg: String },
    #[error("grading violated: {0}")]
    Grading(String),
    #[error("matrices live in different presets: `{0}` vs `{1}`")]
    PresetMismatch(String, String),
    #[error("quantum determinant is not 1 (found `{0}`)")]
    NotUnimodular(String),
    #[error("term outside the known sectors: {0}")]
    Sector(String),
    #[error("coset split does not sum to the Maurer-Cartan form: {0}")]
    SplitMismatch(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("at {pos}: {source}")]
    Algebra {
        pos: usize,
        #[source]
        source: AlgebraError,
    },
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown derivation `{0}`")]
    UnknownDerivation(String),
    #[error("malformed suite `{name}`: {msg}")]
    Malformed { name: String, msg: String },
    #[error("bad glob `{0}`")]
    Glob(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}
