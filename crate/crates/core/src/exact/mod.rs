//! Exact scalars, polynomials and numerical plumbing.

pub mod float;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod symmetric;
pub mod trig;
pub mod wronskian;

pub use float::{BigComplex, BigFloat};
pub use poly::{DensePoly, Field, RatPoly};
pub use rational::{GaussianRational, Rational};
pub use roots::poly_roots;
pub use trig::TrigPoly;
pub use wronskian::wronskian;
