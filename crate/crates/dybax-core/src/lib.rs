//! Dynamical Yang-Baxter maps and dynamical reflection maps over finite
//! left quasigroups paired with finite groups.
//!
//! The crate builds the parameter-dependent braiding `sigma`, the shifted
//! monoid product `m`, module actions over that monoid, boundary maps `k`,
//! and quiver lifts of all of the above, entirely as finite lookup tables.
//! Every structural identity these objects are supposed to satisfy is
//! checked exhaustively, and each checker reports the lexicographically
//! least counterexample when one exists.
//!
//! The layout follows the math:
//!
//! * [`finite_algebra`]: left quasigroups with unit, finite groups,
//!   endomorphism enumeration.
//! * [`category`]: the ambient category of parameter-indexed sets and maps.
//! * [`yang_baxter`]: the braiding `sigma`, its inverse, the monoid, and
//!   the braid / braided-monoid checkers.
//! * [`module_theory`]: module actions, lifts to `L (x) X`, the twisted
//!   monoid, the `theta` action, and the correspondence between modules
//!   and families of group endomorphisms.
//! * [`reflection`]: boundary maps `k`, boundary relations, the reflection
//!   equation, and parameter-independence analysis.
//! * [`quiver`]: quivers over the parameter set and lifts of `sigma`/`k`.
//! * [`document`]: the JSON input format, including table overrides used
//!   as negative controls.
//! * [`fixtures`]: the built-in worked examples.

pub mod category;
pub mod document;
pub mod error;
pub mod finite_algebra;
pub mod fixtures;
pub mod module_theory;
pub mod quiver;
pub mod reflection;
pub mod report;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use report::{CheckReport, Witness};
