//! Scenario language, renderers and command line driver for the variational
//! bicomplex engine.

pub mod builtin;
pub mod cli;
pub mod context;
pub mod error;
pub mod expr;
pub mod lexer;
pub mod registry;
pub mod render;
pub mod scenario;

pub use error::{FrontendError, Result};
