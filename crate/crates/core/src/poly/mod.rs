//! Multi-indices, sparse polynomials, and the linear functional `L_y`.

mod basis;
mod functional;
mod index;
mod products;
mod sparse;

pub use basis::{basis_size, MonomialBasis};
pub use functional::apply_functional;
pub use index::MultiIndex;
pub use products::{mask_to_subset, power_product, subset_product};
pub use sparse::{poly_mul, SparsePoly};
