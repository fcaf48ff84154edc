//! Rank-2 Drinfeld modules over `F_q(T)`: torsion fields, Frobenius data, mod-l images,
//! quadratic subextensions of division fields, and the finite group checks behind them.

pub mod algebra;
pub mod error;
pub mod linalg;

pub mod drinfeld;
pub mod skew;
pub mod torsion;

pub mod bivariate;
pub mod hensel;
pub mod splitting;
pub mod tower;

pub mod frobenius;
pub mod groups;
pub mod image;

pub mod classfield;
pub mod groupverify;

pub mod parse;
pub mod suite;

pub use error::{Error, Result};
