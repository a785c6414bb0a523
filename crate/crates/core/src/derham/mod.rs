//! The twisted de Rham mixed complex (Ω•, −dW∧, d) with its u-connection,
//! and the invariants of an isolated hypersurface singularity read off from
//! it: Milnor number, cohomology dimensions, the reduced connection, its
//! residue and monodromy.

mod complex;
mod forms;
mod invariants;
mod reduce;

use thiserror::Error;

pub use complex::{derham_apply, DeRham, DerhamOp};
pub use forms::{FormKey, FormVector};
pub use invariants::{
    critical_locus_in_zero_fiber, hh_dims, koszul_dims, milnor_number, quasi_homogeneous_weights, ParityDims,
};
pub use reduce::{connection_data, u_reduce, ConnectionReport, UReducer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerhamError {
    #[error("the critical locus of W is not isolated (Milnor number is infinite)")]
    NonIsolated,
    #[error("truncated computation did not stabilize at bound {bound}")]
    NonStabilized { bound: u32 },
    #[error("connection matrix is not of the form R/u: entry {entry}")]
    HigherPole { entry: String },
    #[error("expected a top-degree form, found a component of degree {degree}")]
    NotTopForm { degree: usize },
    #[error("residue spectrum is not rational")]
    IrrationalSpectrum,
}

impl DerhamError {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            DerhamError::NonIsolated => "NonIsolated",
            DerhamError::NonStabilized { .. } => "NonStabilized",
            DerhamError::HigherPole { .. } => "HigherPole",
            DerhamError::NotTopForm { .. } => "NotTopForm",
            DerhamError::IrrationalSpectrum => "IrrationalSpectrum",
        }
    }
}

#[cfg(test)]
mod tests;
