//! Exact scalar and polynomial arithmetic.

mod gamma;
mod poly;
mod rational;

pub use gamma::{gamma_shift, GammaValue};
pub use poly::Poly;
pub use rational::{
    binomial, factorial, falling_factorial, general_binomial, int, is_integer, parse_rational, rat,
    rising_factorial, Rational,
};
