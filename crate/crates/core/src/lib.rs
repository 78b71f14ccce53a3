//! Exact-arithmetic toolkit for quadratic-form-valued counts of lines highly
//! tangent to hypersurfaces: Grothendieck-Witt ring arithmetic, Hasse
//! derivatives and jets, charts on the flag variety of pointed lines,
//! Wronskian local indices, inflection counts of plane curves via fundamental
//! forms, and the relative-orientability scan for bundles of principal parts.

pub mod error;
pub mod field;
pub mod poly;
pub mod resultant;
pub mod factor;
pub mod gw;
pub mod flag;
pub mod fundamental;
pub mod intersect;
pub mod tangency;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement, FieldKind, FieldRef, SquareClass};
