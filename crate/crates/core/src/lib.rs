//! Exact computational group theory for weight counting on l-local fusion
//! system families.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] materializes finite groups from declarative specs and answers
//!   the usual structural questions (classes, centralizers, Sylow subgroups,
//!   residuals, abelianization, fiber products).
//! * [`character`] builds exact character tables with the class-algebra
//!   method and derives the counts used by the weight identities.
//! * [`lattice`] does Smith normal form over `Z/l^n` for the torus levels.
//! * [`families`] packages the two fusion-system families and verifies the
//!   weight-count identity.
//! * [`tower`] builds the finite levels `S_n = T_n x| <u>` and compares both
//!   sides of the Alperin-McKay count at each level.

pub mod arith;
pub mod character;
pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod group;
pub mod lattice;
pub mod report;
pub mod tower;

pub use error::{Error, Result};

/// Version string stamped into every emitted report.
pub const ENGINE_VERSION: &str = concat!("ltoral-", env!("CARGO_PKG_VERSION"));
