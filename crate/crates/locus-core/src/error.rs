use alloc::string::String;
use core::fmt;
use serde::{Deserialize, Serialize};

/// Engine-level failures. Negative *verdicts* (not affine, no localization
/// found within the bound, non-isomorphic comparison) are ordinary results,
/// not errors; these variants are reserved for violated preconditions and
/// exceeded bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EngineError {
    /// An enumeration would exceed the configured size bound.
    SizeBoundExceeded { needed: u64, bound: u64 },
    /// No object within the bound satisfies the requested universal property.
    NotRepresentable { context: String },
    /// The instance declares finite coproducts unavailable.
    NoCoproduct { instance: String },
    /// The instance declares finite products unavailable.
    NoProduct { instance: String },
    /// A structure law failed; `witness` names the offending elements.
    AxiomViolation { law: String, witness: String },
    /// The subset handed to a localization is not a prime ideal.
    NotPrime { reason: String },
    /// An object in E(B): it has no base-points at all.
    EmptyPointSet { object: String },
    /// A closed-form localizer's precondition failed.
    NoLocalization { point: String, reason: String },
    /// The object lies in E^r(B): fewer than `need` distinct base-points.
    NotEnoughPoints { have: u64, need: u64 },
    /// Permissive mode skipped every point of the object.
    AllPointsSkipped,
    /// No canonical connecting morphism exists in a directed diagram.
    MissingConnectingMorphism { from: String, to: String },
    /// The operation is not defined for this instance/orientation.
    Unsupported { what: String },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::SizeBoundExceeded { needed, bound } => {
                write!(f, "size bound exceeded: needed {needed}, bound {bound}")
            }
            EngineError::NotRepresentable { context } => {
                write!(f, "not representable within bound: {context}")
            }
            EngineError::NoCoproduct { instance } => {
                write!(f, "coproducts unavailable in {instance}")
            }
            EngineError::NoProduct { instance } => {
                write!(f, "products unavailable in {instance}")
            }
            EngineError::AxiomViolation { law, witness } => {
                write!(f, "axiom violation ({law}) at {witness}")
            }
            EngineError::NotPrime { reason } => write!(f, "not a prime ideal: {reason}"),
            EngineError::EmptyPointSet { object } => {
                write!(f, "object has no base-points: {object}")
            }
            EngineError::NoLocalization { point, reason } => {
                write!(f, "no localization at {point}: {reason}")
            }
            EngineError::NotEnoughPoints { have, need } => {
                write!(f, "object has {have} base-points, needs {need}")
            }
            EngineError::AllPointsSkipped => write!(f, "every point was skipped"),
            EngineError::MissingConnectingMorphism { from, to } => {
                write!(f, "no canonical connecting morphism {from} -> {to}")
            }
            EngineError::Unsupported { what } => write!(f, "unsupported: {what}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, EngineError>;
