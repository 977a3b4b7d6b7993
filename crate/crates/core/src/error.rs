use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} is not a basis index of {structure}")]
    IndexOutOfRange { index: usize, structure: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid fixture parameters: {0}")]
    FixtureParams(String),

    #[error("{0} is not defined on forms containing e^1")]
    ContainsE1(&'static str),

    #[error("D_-1 is not defined on degree-0 forms")]
    ConstantForm,

    #[error("index sequence {0:?} must be strictly increasing and start at 2 or above")]
    BadIndices(Vec<usize>),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("cochain degree mismatch: {0}")]
    Degree(String),

    #[error("cochain does not vanish on e_1: nonzero value on {0:?}")]
    NotAdapted([usize; 3]),

    #[error("cochain is not closed: d(phi) is nonzero on {0:?}")]
    NotClosed([usize; 4]),

    #[error("cochain has a component of weight {weight} below -1 at {triple:?}")]
    WeightTooLow { triple: [usize; 3], weight: i64 },

    #[error("inventory with bound {bound} cannot resolve e_{target}")]
    InconclusiveInventory { target: usize, bound: usize },

    #[error("dimension {0} is too small: at least 9 is required")]
    DimensionTooSmall(usize),

    #[error("unknown solution family `{0}`")]
    UnknownSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
