//! Exact arithmetic over ℤ[1/2] and ℚ.

mod dyadic;
pub mod numtheory;
mod pow2;
mod rat;

pub use dyadic::Dyadic;
pub use numtheory::{decompose, order2mod, solve_exponent, OddDecomposition};
pub use pow2::Pow2;
pub use rat::Rat;

