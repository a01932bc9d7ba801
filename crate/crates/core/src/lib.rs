//! Exact root-system, Weyl-group and Schubert-calculus toolkit for studying
//! additive eigencones of simple Lie groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] builds root systems of types A, B, C, D, G2 and F4 with the
//!   Killing form normalised so that the highest root has square length 2,
//!   and the sub-root-system embeddings used for sub-eigencones.
//! * [`weyl`] enumerates Weyl groups, minimal parabolic coset
//!   representatives, duals and embedded elements.
//! * [`schubert`] computes the cohomology ring of `G/P` in the Schubert
//!   basis, the characters `χ_w`, the Levi-movability number `θ` and point
//!   products.
//! * [`isogr`] is the index-set calculus of isotropic Grassmannians.
//! * [`eigencone`] generates inequality systems, tests membership and runs
//!   the sub-eigencone and projection verifications.
//! * [`oracle`] is an independent representation-theoretic oracle
//!   (Freudenthal multiplicities and Klimyk tensor products).
//! * [`cli`] is the command-line front end used by the `liecone` binary.
//!
//! All arithmetic is exact: arbitrary precision rationals for geometry,
//! machine integers for lattice actions and structure constants.

pub mod arith;
pub mod cli;
pub mod eigencone;
pub mod error;
pub mod isogr;
pub mod oracle;
pub mod rootsys;
pub mod schubert;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{CartanType, EmbeddingCase, RootSystem, SubsystemEmbedding, Weight};
pub use schubert::{CohomClass, FlagVariety, TupleFilter};
pub use weyl::{ParabolicSpec, WeylElement};
