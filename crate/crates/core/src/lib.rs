//! Exact chain-level models of Hochschild complexes of curved DG categories,
//! the twisted de Rham complex and their u-connections, with verifiers for
//! every identity and invariant extraction for isolated hypersurface
//! singularities.

pub mod exactfield;

pub use exactfield::{ExactMatrix, IdealBasis, Monomial, Poly, QuotientDim, RatFuncU, Q};
pub mod mixedcore;
pub mod cdgcat;
pub mod hochschild;
pub mod derham;
