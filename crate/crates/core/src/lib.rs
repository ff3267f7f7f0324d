pub mod admissibility;
pub mod cli;
pub mod conditions;
pub mod domain;
pub mod error;
pub mod grid;
pub mod identity;
pub mod optimize;
pub mod par;
pub mod series;
pub mod verifier;
