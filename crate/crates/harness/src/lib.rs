//! JSON formats, seeded experiments, property suites and SVG rendering on top
//! of `convertor-core`.

pub mod checks;
pub mod commands;
pub mod error;
pub mod fuzz;
pub mod instance;
pub mod json;
pub mod render;

pub use error::{HarnessError, Result};
