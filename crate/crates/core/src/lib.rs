//! Computational toolkit for the Morita category of finite groupoids.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] and [`groupoid`]: finite groups, groupoids, functors, actions;
//! * [`bibundle`]: principal bibundles, tensor products, Morita equivalence;
//! * [`simplicial`]: 2-skeletal complexes, group actions and edge-path groups;
//! * [`fpgroup`]: finite presentations, Smith/Hermite normal forms,
//!   homomorphism counting and exactness checks;
//! * [`cocycle`]: groupoid-valued cocycles on grid covers and lifting along functors;
//! * [`homotopy`]: π₀ and π₁ of groupoids, Borel models, the Eff functor and
//!   the exact-sequence checks;
//! * [`schema`] and [`catalog`]: JSON formats and the runnable example catalog.

pub mod bibundle;
pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod fpgroup;
pub mod gen;
pub mod group;
pub mod groupoid;
pub mod homotopy;
pub mod par;
pub mod report;
pub mod schema;
pub mod simplicial;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use groupoid::{FiniteGroupoid, GroupoidFunctor, SetAction};
