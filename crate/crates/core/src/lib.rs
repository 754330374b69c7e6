//! Numerical construction of the discrete quantum group `su_q(2)` from the
//! deformed enveloping algebra generated by `q, q^-1, e, f`, together with
//! its compact dual.
//!
//! The pipeline runs bottom-up:
//!
//! - [`words`]: free polynomials in the generators and the formal Hopf `*`-structure;
//! - [`reps`]: the irreducible `*`-representations `pi_n` and `pi'_n`;
//! - [`clebsch`]: intertwining isometries decomposing `(pi_n (x) pi_m) Delta`;
//! - [`dqg`]: the direct sum `A` of matrix algebras with coproduct, counit,
//!   antipodes, cointegral, integrals and modular data;
//! - [`dual`]: finitely supported functionals on `A` with the convolution
//!   product, the fundamental matrix `u` and the Haar functional;
//! - [`verify`] and [`report`]: check batteries and the reports the CLI emits.

pub mod clebsch;
pub mod dqg;
pub mod dual;
pub mod error;
pub mod group;
pub mod linalg;
pub mod params;
pub mod report;
pub mod reps;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use group::QuantumGroup;
pub use params::{Params, RepIndex, Weight};
