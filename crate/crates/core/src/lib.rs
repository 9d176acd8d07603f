//! Exact canonical systems of basic invariants for finite unitary reflection groups.
//!
//! ```
//! use canonsys::{canonical, catalog, invariants, AnalyzeOptions};
//!
//! let g = catalog::lookup("dihedral:5")?.analyze(&AnalyzeOptions::default())?;
//! let sys = invariants::basic_invariants(&g, 0)?;
//! let cs = canonical::canonical_system(&g, &sys)?;
//! assert_eq!(cs.degrees, [2, 5]);
//! assert!(canonical::verify_canonical(&g, &cs)?.passed());
//! # Ok::<(), canonsys::Error>(())
//! ```
//!
//! The modules build on each other: [`cyclo`] numbers, [`poly`] polynomials,
//! [`group`] analysis, [`invariants`], and [`canonical`] systems. [`catalog`]
//! and [`io`] supply inputs and file formats.

pub mod canonical;
pub mod catalog;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod report;

pub use canonical::{CanonicalSystem, HarmonicWitness};
pub use catalog::GroupSpec;
pub use cyclo::{CycloNum, Rational};
pub use error::{Error, Result};
pub use group::{AnalyzeOptions, Hyperplane, ReflGroup, UMatrix};
pub use invariants::InvariantSystem;
pub use poly::{ExpVec, Poly};
pub use report::{Check, Report};
