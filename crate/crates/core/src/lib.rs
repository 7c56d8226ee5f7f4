//! Finite commutative ring extensions under finite group actions.

pub mod action;
pub mod check;
pub mod error;
pub mod expr;
pub mod extend;
pub mod funcfield;
pub mod harness;
pub mod ideals;
pub mod poly;
pub mod ring;

pub use action::{builtin, close_group, orbit, ActionGroup, Automorphism, Orbit};
pub use check::Check;
pub use error::{Result, RingError};
pub use expr::{Construction, ModuleSpec};
pub use extend::{classify_extension, ExtensionKind, ExtensionReport};
pub use funcfield::{DVRWitness, RationalFunction, SubstAction};
pub use harness::{catalog, run_all, verify, Instance, InstanceFile, Report, Status, TheoremId, Verdict};
pub use ideals::{Ideal, QuotientRing};
pub use poly::FpPoly;
pub use ring::{ElemSet, FiniteModule, FiniteRing, Limits, SubringHandle};
