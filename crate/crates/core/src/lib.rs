//! Exact computation of hard Lefschetz decompositions.
//!
//! Given a bounded complex `A` of finitely generated free modules over the
//! integers, the rationals or a prime field, and a Lefschetz map
//! `phi: A[-1] -> A[1]` whose iterates induce isomorphisms
//! `H^-n(A) -> H^n(A)`, [`deligne_decompose`] produces an explicit
//! homotopy equivalence `A ~ (+)_k H^-k(A)[k]` together with every homotopy
//! needed to check it. [`verify_certificate`] re-checks such a certificate
//! by matrix arithmetic alone.

pub mod complex;
mod error;
pub mod homotopy;
pub mod io;
pub mod lefschetz;
pub mod linalg;

pub use error::{Error, Result};
pub use lefschetz::{deligne_decompose, verify_certificate, DecompositionCertificate};
