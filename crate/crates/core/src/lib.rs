//! Exact symbolic computation on the quantum complex vector space.
//!
//! The algebra `A = C_q[z_1..z_n, w_1..w_n]` is a noncommutative deformation of
//! the polynomial ring on `C^n` together with its conjugate coordinates.  This
//! crate implements, entirely in exact arithmetic over the field `Q(v)` with
//! `v^2 = q`:
//!
//! - the algebra itself with its two normal-ordered (PBW) bases ([`algebra`]),
//! - q-derivatives, the q-Laplace operator, gradation and multiplication
//!   operators, and the quantum-group actions on the algebra ([`ops`]),
//! - q-harmonic polynomials: the harmonic projector, harmonic decomposition,
//!   zonal polynomials and the orthogonal bases built from separation of
//!   variables ([`harmonics`]),
//! - the invariant functional on the quantum sphere and the scalar product it
//!   induces ([`sphere`]),
//! - terminating basic hypergeometric series and little q-Jacobi polynomials
//!   ([`qspecial`]),
//! - batch verification suites that machine-check every operator identity and
//!   closed form at small sizes ([`verify`]).

pub mod algebra;
pub mod error;
pub mod harmonics;
pub mod linalg;
pub mod numeric;
pub mod ops;
pub mod qspecial;
pub mod scalar;
pub mod sphere;
pub mod verify;

pub use algebra::{Monomial, NCPoly, Order};
pub use error::QError;
pub use harmonics::HarmonicLabel;
pub use ops::LinearOp;
pub use scalar::{LaurentV, ScalarQ};
