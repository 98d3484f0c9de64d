//! Exact cone geometry for the blow-up of the projective plane at `r` very
//! general points.
//!
//! The crate works entirely with numerical classes `(d; m_1, ..., m_r)` in the
//! Picard lattice and decides every sign exactly, using big integers,
//! rationals, and the real quadratic field `Q(sqrt(r - 1))`. Floating point is
//! confined to angular distances.
//!
//! - [`lattice`]: classes, the intersection pairing, quadratic transforms.
//! - [`enumeration`]: (-1)-classes, fibers and friends, by two independent
//!   routes, plus catalog files.
//! - [`cone`]: the quadric cone `Q`, the shade trichotomy, discriminants, the
//!   projection to `K^perp` and angular distances.
//! - [`facets`]: reductions, conic-bundle facets, extremality certificates.
//! - [`checks`]: Nagata and `deg^2 >= sum mult^2` checkers and the sweeps built
//!   on the discriminant laws.
//! - [`report`] and [`cli`]: plot data, structured text output and the
//!   command-line front end.

pub mod checks;
pub mod cli;
pub mod cone;
pub mod enumeration;
pub mod error;
pub mod facets;
pub mod lattice;
pub mod quadratic;
pub mod report;

pub use enumeration::{ClassCatalog, ClassKind, OrbitCatalog};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, Ray};
pub use quadratic::QuadNum;
