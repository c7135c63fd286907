//! Exact linear algebra over the integers, the rationals and prime fields.

mod matrix;
mod module;
mod ring;
mod snf;
mod solve;
mod system;

pub use matrix::ExactMatrix;
pub use module::{check_module_map, module_from_cokernel, module_map_is_iso, module_maps_agree, ModulePresentation};
pub use ring::{Ring, Scalar};
pub use snf::{smith_normal_form, SmithForm};
pub use solve::{coordinates, image_basis, kernel_basis, rank, solve_linear, solve_matrix, Solution};
pub use system::{Equation, LinearSystem, Unknown};

pub(crate) use snf::{SnfEngine, Track};
