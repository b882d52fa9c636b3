//! Exact computations with finitely presented graded modules over
//! quotients of polynomial rings: Gröbner bases and syzygies, minimal
//! presentations and resolutions, Tor and Koszul depth, torsion in tensor
//! powers, and Frobenius functors in positive characteristic.
//!
//! Everything is generic over a coefficient [`field::Field`]; the aliases
//! below fix the two supported fields.

pub mod certificate;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod homology;
pub mod module;
pub mod poly;
pub mod ring;
pub mod torsion;
pub mod verify;

pub use certificate::{Certificate, Verdict};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use module::{FPModule, ModuleElement, ModuleMap};
pub use poly::groebner::{CancelToken, GroebnerBasis, Limits};
pub use poly::matrix::Matrix;
pub use poly::polynomial::Polynomial;
pub use ring::{Ideal, RingContext, RingFlags};

pub type QRing = RingContext<Rationals>;
pub type FpRing = RingContext<PrimeField>;
pub type QModule = FPModule<Rationals>;
pub type FpModule = FPModule<PrimeField>;
pub type QPolynomial = Polynomial<Rationals>;
pub type FpPolynomial = Polynomial<PrimeField>;
