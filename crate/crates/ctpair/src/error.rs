//! Error types for the library modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed rational string: {0:?}")]
    BadRational(String),
    #[error("a binary quartic needs exactly 5 coefficients, got {0}")]
    BadArity(usize),
}

#[derive(Debug, Error)]
pub enum FormError {
    #[error("specialization point (0, 0) is rejected")]
    ZeroPoint,
    #[error("content of the zero form is undefined")]
    ZeroForm,
}

#[derive(Debug, Error)]
pub enum QuarticError {
    #[error("singular quartic (discriminant zero)")]
    Singular,
    #[error("GL2 action is singular (lambda = 0 or alpha*delta - beta*gamma = 0)")]
    SingularAction,
    #[error("quartic invariants ({0}, {1}) do not match the algebra's ({2}, {3})")]
    InvariantMismatch(String, String, String, String),
    #[error("g(x, z) = 0: point lies above a ramification value (2-torsion image)")]
    RamificationPoint,
}

#[derive(Debug, Error)]
pub enum EtaleError {
    #[error("singular invariants: 4I^3 = J^2")]
    SingularInvariants,
    #[error("not a unit: zero divisor supported on the factor {factor} of the defining cubic")]
    NotAUnit { factor: String },
    #[error("square root undetermined at the precision ceiling (norm is a rational square)")]
    PrecisionExhausted,
}

#[derive(Debug, Error)]
pub enum LocalError {
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("singular quartic (discriminant zero)")]
    SingularQuartic,
    #[error("quartic is insoluble at {0}")]
    Insoluble(String),
    #[error("companion quadratic form is identically zero")]
    ZeroGamma,
    #[error("local point search exhausted its depth bound at {0} (unexpected for a soluble quartic)")]
    SearchExhausted(String),
}

#[derive(Debug, Error)]
pub enum PairingError {
    #[error(
        "invariant mismatch: quartic #{index} has invariants ({i}, {j}), expected ({expect_i}, {expect_j})"
    )]
    InvariantMismatch {
        index: usize,
        i: String,
        j: String,
        expect_i: String,
        expect_j: String,
    },
    #[error("quartic #{index} is singular")]
    Singular { index: usize },
    #[error("quartic #{index} is not locally soluble at {place}")]
    NotLocallySoluble { index: usize, place: String },
    #[error("z(g1) z(g2) z(g3) is not a square in L (the classes do not sum to zero)")]
    ZProductNotSquare,
    #[error(transparent)]
    Etale(#[from] EtaleError),
    #[error(transparent)]
    Quartic(#[from] QuarticError),
    #[error(transparent)]
    Local(#[from] LocalError),
}
