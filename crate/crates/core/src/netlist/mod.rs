//! The `.lmc` circuit description language: parsing, validation, canonical
//! serialization and world construction.

mod build;
mod parse;
mod serialize;
mod spec;
mod validate;

use thiserror::Error;

use crate::physics::PhysicsError;

pub use build::{assignment, build_world};
pub use parse::{parse, parse_bytes, ParseError};
pub use serialize::serialize;
pub use spec::{CircuitSpec, ConfigOverrides, RampDecl, DEFAULT_HORIZON_MS};
pub use validate::{validate, SemanticError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetlistError {
    #[error("{} parse error(s); first: {}", .0.len(), .0.first().map(|e| e.to_string()).unwrap_or_default())]
    Parse(Vec<ParseError>),
    #[error("{} semantic error(s); first: {}", .0.len(), .0.first().map(|e| e.to_string()).unwrap_or_default())]
    Invalid(Vec<SemanticError>),
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}

/// Parses and validates in one go.
pub fn load(text: &str) -> Result<CircuitSpec, NetlistError> {
    let spec = parse(text).map_err(NetlistError::Parse)?;
    let errs = validate(&spec);
    if errs.is_empty() {
        Ok(spec)
    } else {
        Err(NetlistError::Invalid(errs))
    }
}
