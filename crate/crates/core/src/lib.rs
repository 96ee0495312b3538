//! Exact p-rank computations for the curves `y^m = x^n + 1` over fields of
//! characteristic `p`, together with closed forms for many families and an
//! independent Cartier-operator check.

pub mod arith;
pub mod counting;
pub mod curves;
pub mod error;
pub mod families;
pub mod oracle;
pub mod report;
pub mod sets;

pub use curves::{BasisIndex, CurveSpec, CurveVariant, FermatContext};
pub use error::{Error, Result};
pub use report::{Method, PRankReport};
