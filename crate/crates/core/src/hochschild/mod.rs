//! Hochschild complexes of the first and second kind of a CDG category at
//! chain level: the differentials, the Connes differential B, the u-connection
//! operators, maps induced by strict functors, the comparison with the
//! opposite category and the HKR map.

mod chain;
mod complex;
mod hkr;
mod induced;
mod ops;
mod phi;

pub use chain::{ChainKind, Entry, HochChain, Word};
pub use complex::{HochschildComplex, OperatorKind, SampleConfig};
pub use hkr::{hkr_eps, hkr_homotopy, HkrHomotopy, HkrMorphism};
pub use induced::{induced_map, InducedMorphism};
pub use phi::{phi_opposite, phi_opposite_with_homotopy, OppositeComparison};
