//! Hierarchical ring digraphs and the consensus of high-order agents on them.
//!
//! A ring digraph is a chain of `m` identical macro-vertices on `n` nodes
//! each, closed by ring arcs so that the main directions form a Hamiltonian
//! cycle on `N = m n` nodes. Its Laplacian characteristic polynomial factors
//! as `P(λ)^m - (-1)^N`, so every eigenvalue satisfies `|P(λ)| = 1` and the
//! whole family `m = 1, 2, ...` lives on one algebraic curve of order `2n`.
//!
//! The crate is organised bottom-up:
//!
//! | module        | contents |
//! |---------------|----------|
//! | [`topology`]  | necklace vectors, ring construction, counting and enumeration of simple rings |
//! | [`poly`]      | exact integer polynomials and the modified Chebyshev factors |
//! | [`roots`]     | companion-matrix polynomial root finder |
//! | [`charpoly`]  | characteristic polynomials and spectrum sampling |
//! | [`curves`]    | the bivariate spectrum-locus curve `f(x, y) = 0` |
//! | [`weighted`]  | the weighted two-cycle ring, its ellipses and the drop region |
//! | [`consensus`] | Ω-region membership and the consensus criteria |
//! | [`dynamics`]  | closed-loop Kronecker system and RK4 simulation |
//!
//! ```
//! use rings_core::{charpoly, topology::{NecklaceVector, RingTopology}};
//!
//! let ring = RingTopology::new(NecklaceVector::parse("2,1").unwrap(), 2).unwrap();
//! let delta = charpoly::char_poly(&ring).unwrap();
//! // (λ² - 3λ + 1)² - 1
//! assert_eq!(delta.coeffs(), &[0, -6, 11, -6, 1]);
//! ```

pub mod charpoly;
pub mod consensus;
pub mod curves;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod poly;
pub mod roots;
pub mod topology;
pub mod weighted;

pub use error::{Error, Result};

/// A point of the complex plane: an eigenvalue, a root or a curve sample.
pub type ComplexPoint = num_complex::Complex64;

pub use charpoly::{char_poly, locus_points, Parity};
pub use consensus::{FrequencyVariable, OmegaVerdict};
pub use curves::BivariatePoly;
pub use poly::IntPoly;
pub use topology::{NecklaceVector, RingClass, RingTopology};
pub use weighted::WeightedRing;
