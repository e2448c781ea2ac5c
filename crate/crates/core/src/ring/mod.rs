//! Exact coefficient arithmetic: Laurent polynomial rings, cyclotomic
//! fields, and finite-order torus characters.

pub mod character;
pub mod cyclotomic;
pub mod laurent;

pub use character::{characters_of_order_at_most, fractional_part_vector, full_grid, Character};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use laurent::{ExpVec, LaurentPoly};
