//! Generalized twisted Reed-Solomon (GTRS) codes over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: table-driven arithmetic in GF(p^m) and the GF(q) ⊂ GF(q^2) maps.
//! - [`fflinalg`]: dense matrices over a field.
//! - [`codes`]: generic linear codes, Euclidean/Hermitian duals, exhaustive
//!   minimum distance and MDS/AMDS/NMDS classification.
//! - [`gtrs`]: GTRS code construction and closed-form duals.
//! - [`selfdual`]: Hermitian self-duality of (+)-GTRS codes and the two coset
//!   constructions of Hermitian self-dual MDS/NMDS codes.
//! - [`table`]: the reference q = 7 catalogue of self-dual codes and its
//!   reproduction.
//! - [`serial`]: JSON data formats shared with the command-line tool.

pub mod codes;
pub mod fflinalg;
pub mod gf;
pub mod gtrs;
pub mod selfdual;
pub mod serial;
pub mod table;

pub use codes::{CodeClass, LinearCode};
pub use fflinalg::{FFMatrix, FFVector};
pub use gf::{Field, FieldDesc, Gf};
pub use gtrs::{GtrsParams, Twist, TwistSpec};
pub use selfdual::{ConstructionClass, ConstructionResult};

/// Enumeration limits shared by the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum message-space size `q^k` for minimum distance.
    pub distance: u64,
    /// Maximum number of k-subsets for the subset MDS criterion.
    pub subset: u64,
    /// Maximum field order for exhaustive root scans.
    pub scan: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            distance: codes::DEFAULT_DISTANCE_CAP,
            subset: gtrs::DEFAULT_SUBSET_CAP,
            scan: gf::DEFAULT_SCAN_CAP,
        }
    }
}
