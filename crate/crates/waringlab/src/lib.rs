//! Computational laboratory for Waring-type problems with Dickson polynomials
//! over prime fields: value sets and iterated sumsets, Waring numbers over
//! F_p and over the norm-one subgroup of F_{p^2}, incomplete Kloosterman and
//! Gauss sum spectra with bound menus, additive-energy statistics, point
//! counts on the associated curve families, and reproducible parameter
//! sweeps with threshold scans.

pub mod curves;
pub mod dickson;
pub mod energy;
pub mod error;
pub mod expsums;
pub mod field;
pub mod harness;
pub mod rng;
pub mod valueset;
pub mod waring;

pub use error::{Error, Result};
pub use field::{FieldCtx, Fp2, FpSubgroup, NormOneSubgroup};
pub use valueset::{Ambient, ValueSet};
pub use waring::{CoverageProfile, CoverageStatus};
