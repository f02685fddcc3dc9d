//! Stable primes for polynomial iteration over ℚ.
//!
//! The crate bundles exact arithmetic, orbit and critical-point analysis,
//! mod-p stability engines, a cycle-type calculus for iterated wreath
//! products, the Dickson cubic family, and a census harness that estimates
//! densities of stable primes.

pub mod dickson;
pub mod dynamics;
pub mod census;
pub mod exactalg;
pub mod stability;
pub mod wreath;
