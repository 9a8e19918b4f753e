//! Exact invariants of knots from Seifert matrices and the algebraic obstructions to the
//! sliceness of Bing doubles.
//!
//! Everything is computed over arbitrary-precision integers and rationals: Alexander
//! polynomials, Levine–Tristram signatures at rational angles (evaluated in cyclotomic
//! fields with certified signs), the signature function, Arf and determinant invariants,
//! the Fox–Milnor condition, Fox's order of branched-cover homology, covering Seifert
//! matrices, and the Witt-presentation transforms `t ↦ t^n` used by the Bing-double
//! argument.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod cover;
pub mod error;
pub mod exactmat;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod report;
pub mod seifert;
pub mod sigfn;
pub mod witt;

pub use catalog::{builtin_catalog, lookup, CatalogEntry};
pub use cover::HomologyOrder;
pub use error::{Error, Result};
pub use exactmat::{LaurentMatrix, Matrix, RatMatrix};
pub use poly::{IntPoly, LaurentPoly};
pub use rational::Rational;
pub use seifert::{fox_milnor, FoxMilnor, Integrality, SeifertMatrix};
pub use sigfn::{Angle, SignatureFunction};
pub use witt::{
    bing_double_verdict, jpq_presentation, obstruction_battery, BingConclusion, Certificate,
    CoefficientRing, ObstructionReport, Verdict, WittPresentation,
};

#[cfg(test)]
mod testutil;
