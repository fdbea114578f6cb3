//! Finite-category engine: base points, localization by universal property,
//! global objects via (co)image of the canonical morphism, affinity and
//! scheme verdicts, with a ring-theoretic sheaf oracle for cross-checking.
//!
//! The crate is `no_std` (alloc only); all computations are pure functions
//! of immutable instance data, with deterministic enumeration order.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod battery;
pub mod error;
pub mod factor;
pub mod fields;
pub mod global;
pub mod homs;
pub mod instance;
pub mod iso;
pub mod limits;
pub mod linalg;
pub mod localize;
pub mod mediator;
pub mod morphism;
pub mod object;
pub mod points;
pub mod ring;
pub mod sheaf;
pub mod snf;

pub use error::EngineError;
pub use morphism::Morphism;
pub use object::Object;
