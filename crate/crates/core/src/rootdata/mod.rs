//! Root data, Weyl groups, Levi subgroups and Langlands duality.
//!
//! Supported types: `A1`–`A4`, `B2`, `C2`, `G2`, each with the simply
//! connected or adjoint character lattice.

mod datum;
mod weyl;

pub use datum::{build_root_datum, langlands_dual, CartanType, Family, LatticeChoice, RootDatum};
pub use weyl::{classify_foliation_element, weyl_elements, LeviDescriptor, PositiveRoot, WeylElement, WeylGroup};

/// Every supported (type, lattice) pair.
pub fn supported_data() -> Vec<RootDatum> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "A3", "A4", "B2", "C2", "G2"] {
        for l in [LatticeChoice::SimplyConnected, LatticeChoice::Adjoint] {
            out.push(build_root_datum(t.parse().expect("known type"), l).expect("valid datum"));
        }
    }
    out
}
