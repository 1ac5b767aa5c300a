//! Symbolic computation in the variational bicomplex.

pub mod algebra;
pub mod calculus;
pub mod coeff;
pub mod error;
pub mod fieldtheory;
pub mod forms;
pub mod gauge;
pub mod hodge;
pub mod testing;

pub use algebra::{Direction, FieldKind, FieldSymbol, Fields, FuncApp, JetCoordinate, Monomial, ScalarExpr, Var};
pub use coeff::Coeff;
pub use error::{Error, Result};
pub use forms::{Bidegree, Form, Generator};
pub use calculus::{horizontal_diff, interior, lie_horizontal, lie_total, lie_vertical, total_diff, vertical_diff, KillingField};
pub use hodge::{star, HodgeMode, HodgeTable};
