//! Exact special-relativistic kinematics and dynamics on finite models.
//!
//! The crate provides an exact ordered-field kernel closed under square
//! roots, coordinate geometry of Minkowski spacetime over that field,
//! Poincaré transformations and Lorentz boosts, a finite scenario model with
//! observers, photons and inelastic collisions, and checkers that decide the
//! kinematic and dynamic axioms (and the theorems relating them) on such
//! scenarios with zero numerical tolerance.

pub mod axioms;
pub mod dynamics;
pub mod minkowski;
pub mod quantity;
pub mod scenario;
pub mod transforms;

pub use quantity::{Quantity, QuantityError};
