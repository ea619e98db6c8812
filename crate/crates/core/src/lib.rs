//! Finite set-theoretic solutions of the Yang–Baxter equation.
//!
//! A solution on `X = {0, …, n-1}` is a map `r(x, y) = (σ_x(y), τ_y(x))`
//! satisfying the braid relation `r₁₂ r₂₃ r₁₂ = r₂₃ r₁₂ r₂₃` on `X³`.
//! Tables are indexed acting-subscript first: `sigma[x][y] = σ_x(y)` and
//! `tau[y][x] = τ_y(x)`.

// Table code reads most clearly with explicit index loops.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod diagonals;
pub mod error;
pub mod omega;
pub mod orbits;
pub mod perm;
pub mod qcycle;
pub mod report;
pub mod retract;
pub mod search;
pub mod solution;
pub mod suite;

pub use error::{Error, Result};
pub use omega::{OmegaSymbol, OmegaWord};
pub use report::{Check, CheckReport};
pub use solution::{FiniteSolution, Tables};
