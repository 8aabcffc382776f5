//! Finite computational category theory for relative monads: law checking,
//! idempotence characterisations, algebras, relative adjunctions and
//! exhaustive enumeration of small instances.

pub mod adjunction;
pub mod algebra;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod fincat;
pub mod presentation;
pub mod relmonad;
pub mod report;
pub mod workspace;

pub use error::{Error, Result};
pub use fincat::{FinCat, FinFunctor, Mor, Ob};
pub use report::LawReport;
pub use workspace::Workspace;
