//! A small ASCII language for bra-ket expressions over an [`Environment`].
//!
//! `kd:x`, `ku:x`, `bd:x`, `bu:x` name a vector in one of its four
//! variances. Juxtaposition composes operators, applies them and pairs
//! bras with kets. A bra and ket of the same position (both down or both
//! up) are paired through the metric, the rule that an empty angle hides a
//! metric operator; a bra-up against a ket-down, or bra-down against
//! ket-up, contract directly.

mod env;
mod eval;
mod lexer;
mod parser;

use braket_core::opalg::{OperatorKind, Slot};
use braket_core::cvs::Variance;
use thiserror::Error;

pub use env::Environment;
pub use eval::{eval, eval_str, Value};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, ExprAst, Sign};

#[derive(Debug, Error)]
pub enum DslError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown token {token:?} at {pos}")]
    UnknownToken { pos: usize, token: String },
    #[error("variance error: cannot juxtapose {left} with {right}")]
    Variance { left: String, right: String },
    #[error("unbound name {0:?}")]
    UnboundName(String),
    #[error("type error: {0}")]
    Type(String),
    #[error(transparent)]
    Core(#[from] braket_core::Error),
}

pub type DslResult<T> = std::result::Result<T, DslError>;

pub(crate) fn slot_of(v: Variance) -> Slot {
    match v {
        Variance::KetDown | Variance::BraDown => Slot::Down,
        Variance::KetUp | Variance::BraUp => Slot::Up,
    }
}

pub(crate) fn bra_of(slot: Slot) -> Variance {
    match slot {
        Slot::Down => Variance::BraDown,
        Slot::Up => Variance::BraUp,
    }
}

pub(crate) fn describe_kind(kind: OperatorKind) -> String {
    format!("{} operator", kind.name())
}
