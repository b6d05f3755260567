//! Weyl groups of types B and D, divided differences and Schubert classes.

pub mod bt;
pub mod group;
pub mod schubert;

pub use bt::{BtContext, SQUARE_RELATION_SIGN};
pub use group::{RootDatum, RootType, SignedPerm, WeylGroup};
pub use schubert::{char_map_chow, demazure_schubert, demazure_schubert_word, duality_word, SchubertComb};
