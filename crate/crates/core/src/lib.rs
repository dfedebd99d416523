//! Exact power-series algebra for the eñe product.
//!
//! The eñe product `⋆` is a second multiplication on power series with
//! constant term 1. Series multiplication plays the role of addition (its
//! neutral element is the series `1`) and `⋆` distributes over it, with unit
//! `1 - X`. On polynomials over the complex numbers, `f ⋆ g` is the
//! polynomial whose roots are the pairwise products of the roots of `f` and
//! `g`.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`]: coefficient rings (rationals, integers, integers mod m,
//!   complex floats, multivariate polynomials).
//! * [`series`]: truncated power series, log/exp, Hadamard product.
//! * [`engine`]: the eñe product by several independent algorithms.
//! * [`transforms`]: named elements and operators (Weierstrass factors,
//!   Hecke and dilatation operators, subrings and ideals).
//! * [`rational`]: rational functions and polynomials with `X^n` factors.
//! * [`analytic`]: root finding and numerical checks over the complex numbers.
//! * [`expr`] and [`verify`]: the expression language and identity suites
//!   used by the `ene` command-line tool.

pub mod error;
pub mod ring;

pub use error::{EneError, Result};
pub mod random;
pub mod series;
pub mod engine;
pub mod transforms;
pub mod rational;
pub mod analytic;
pub mod expr;
pub mod verify;
pub mod cli;
