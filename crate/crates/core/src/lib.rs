//! Root systems, irreducible characters and the decomposition of tensor
//! squares for simple Lie algebras and `osp(1|2m)`.

pub mod characters;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod repdims;
pub mod rootsys;
pub mod verify;

pub use characters::{Character, Decomposition, IrrepCache, IrrepLabel, Mult, SquareKind};
pub use error::{Error, Result};
pub use repdims::DominantWeight;
pub use rootsys::{Family, FamilyRank, Lat, RootSystem, Weight, Q};
