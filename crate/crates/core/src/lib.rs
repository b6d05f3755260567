//! Computations in Morava K-theory of split quadrics.

pub mod driver;
pub mod error;
pub mod fgl;
mod linalg;
pub mod motives;
pub mod quadric;
pub mod random;
pub mod scalar;
pub mod select;
pub mod series;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use fgl::{FormalGroupLaw, LawKind, MoravaSpec};
pub use motives::{Correspondence, Decomposition, Projector, TateClass};
pub use quadric::{Basis, QuadricClass, QuadricTheory, TheoryKind};
pub use scalar::{Base, GradedScalar, RingSpec};
pub use series::{parse_polynomial, Monomial, TruncSeries};
