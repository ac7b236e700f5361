//! Transvection classes of `Sp(n, 2)`: group-algebra products, block
//! statistics of candidate Schur partitions, factorization searches,
//! quadratic forms and the integrality tests built on them.

pub mod cases;
pub mod error;
pub mod gf2;
pub mod factorize;
pub mod galg;
pub mod ortho;
pub mod relations;
pub mod schur;
pub mod spgroup;
pub mod subgroups;

pub use error::{Error, Result};
pub use galg::Multiset;
pub use gf2::{Gf2Vector, Subspace};
pub use spgroup::{ClassTag, SpElement};
