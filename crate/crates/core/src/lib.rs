pub mod algebra;
pub mod dimension;
pub mod error;
pub mod exactfield;
pub mod io;
pub mod k0;
pub mod linalg;
pub mod modules;
pub mod par;
pub mod projections;
pub mod random;
pub mod report;
pub mod torsion_lab;
pub mod verify;

pub use error::{Error, Result};
