//! Bounded complexes of free modules, chain maps, homotopies, cones,
//! cohomology and the truncation models.

mod chain_complex;
pub mod cohomology;
mod cone;
mod map;
mod truncation;

pub use chain_complex::{ChainComplex, Violation};
pub use cohomology::{amplitude, amplitude_within, cohomology, cohomology_with_basis, induced_map, Cohomology};
pub use cone::{cone, Cone};
pub use map::{ChainMap, Homotopy};
pub use truncation::{bottom_truncation_model, top_truncation_model};

pub(crate) use map::check_homotopy_identity;
