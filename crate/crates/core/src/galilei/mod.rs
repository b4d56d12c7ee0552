//! The Galilei group, its projective phase and Bargmann cocycle, and the
//! centrally extended Lie algebra alongside the Poincaré algebra.

pub mod algebra;
pub mod bch;
pub mod group;

pub use algebra::{centrality_check, jacobi_check, AlgebraTable};
pub use bch::{bch_crosscheck, extrapolated_bracket, OneParam};
pub use group::{cocycle_difference, cocycle_exponent, sample_points, GalileiElement, Mat3, Scalar, Vec3};
