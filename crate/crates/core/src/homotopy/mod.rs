//! Equalities of maps in the homotopy category, decided and witnessed.

mod decomposition;
mod minimize;
mod normal;
mod solver;
mod split;

pub use decomposition::{Decomposition, Part};
pub use minimize::{minimize, Minimization};
pub use normal::{canonical_form, first_inert_entry, inert_mask};
pub use solver::{hom_k_presentation, homotopy_inverse, null_homotopy, HomotopyEquivalence};
pub use split::{split_with_retraction, SplitData};

pub(crate) use decomposition::witness;
