//! Exact-arithmetic kernel for the Dickson–Siegel–Eichler–Roy (DSER) elementary
//! orthogonal transformations of `Q ⊥ H(P)` over commutative rings.

pub mod dser;
pub mod error;
pub mod identities;
pub mod local_global;
pub mod matrix;
pub mod quad_space;
pub mod ring;
pub mod sample;
pub mod suite;
pub mod wire;

pub use error::{Error, Result};
