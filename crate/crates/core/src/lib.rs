//! Numerical evaluation of the explicit formula for the Cesàro–Riesz means
//! `G_k(N) = (1/Γ(k+1)) Σ_{n<N} R(n)(1-n/N)^k` of the Goldbach
//! representation numbers `R(n) = Σ_{m+m'=n} Λ(m)Λ(m')`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: von Mangoldt sieve, `R(n)`, direct `G_0` and `G_k`.
//! * [`special`]: complex gamma family, `ζ'/ζ`, the Mellin kernel.
//! * [`zeros`]: loading and enumerating zeta-zero ordinates.
//! * [`continuation`]: the entire functions `T_N(w)` and `Z_N(w)`.
//! * [`explicit`]: residue sums, Laurent data and the 13-term formula.

pub mod arith;
pub mod continuation;
pub mod error;
pub mod explicit;
pub mod quad;
pub mod special;
pub mod sum;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;
