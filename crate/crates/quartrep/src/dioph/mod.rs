//! Continued fractions and the explicit approximation witnesses built from them.

pub mod cf;
pub mod witness;

pub use cf::{badly_approximable_bound, cf_expand_quad, cf_expand_rat, convergents, ContinuedFraction};
pub use witness::{cont2_points, dirichlet_pairs, dirlem_pairs, WitnessPoint};
