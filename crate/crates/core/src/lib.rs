pub mod char_classes;
pub mod error;
pub mod f2_algebra;
pub mod grassmann_ring;
pub mod identities;
pub mod koszul;
pub mod schubert;
pub mod steenrod_ops;
pub mod torsion;

pub use error::{Error, Result};
