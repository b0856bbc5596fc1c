use thiserror::Error;

/// Errors raised by the exact kernel, the oracle and the report layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Clifford dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("generator index {index} out of range for dimension {dim}")]
    GeneratorOutOfRange { index: usize, dim: usize },

    #[error("unsupported Clifford dimension {0} (must be 1..=64)")]
    CliffordDimension(usize),

    #[error("projection requires a decaying function, found polynomial part {0}")]
    NonDecaying(String),

    #[error("divergent line integral: integrand {0} is not O(xi^-2)")]
    Divergent(String),

    #[error("jet order exceeded: at most {max} normal derivative(s) are stored; raise the jet order to evaluate this term")]
    JetOrderExceeded { max: u32 },

    #[error("normal-derivative jet of {0} is not provided by the model")]
    JetUnavailable(String),

    #[error("{} not modeled (only the order -2 and -3 symbols of D^-2 are available)", sigma_name(*.0))]
    SymbolNotModeled(i32),

    #[error("only symbols of D^-2 are modeled, got power {0}")]
    UnsupportedPower(u32),

    #[error("unsupported dimension {0}: the collar model needs n >= 2")]
    UnsupportedDimension(usize),

    #[error("unknown formal constant `{0}`")]
    UnknownConstant(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("quadrature tolerance {tol:e} not reached (estimate {estimate:e})")]
    ToleranceNotReached { tol: f64, estimate: f64 },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("anchor table: {0}")]
    AnchorTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `σ₋₄`-style name for a symbol order.
pub fn sigma_name(order: i32) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    let mut s = String::from("σ");
    if order < 0 {
        s.push('₋');
    }
    for c in order.unsigned_abs().to_string().chars() {
        s.push(SUB[c.to_digit(10).unwrap() as usize]);
    }
    s
}
