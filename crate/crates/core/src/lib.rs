//! Certified computation of diagonal hyperplane sections of the unit cube.

pub mod asymptotics;
pub mod error;
pub mod eulerian;
pub mod extremality;
pub mod numeric;
pub mod quadrature;
pub mod monotonicity;
pub mod sections;

pub use error::{Error, Result};
pub use numeric::{
    DyadicInterval, IsolatingInterval, Poly, QuadExtValue, RatPoly, Rational, Sign, Var,
};
