//! Coherent-state quantization of paragrassmann algebras.
//!
//! The crate covers exact arithmetic in the nilpotent algebra generated by
//! `θ_i, θ̄_i` (`θ^{k'} = 0`, `θθ̄ = q_k θ̄θ`), the quantization map sending a
//! polynomial `f(θ, θ̄)` to a `(k')^d × (k')^d` complex matrix `A_f`, its
//! inverse (upper symbols), lower symbols, the induced star product, and
//! checkers for the relations satisfied by the quantized generators.

pub mod bargmann;
pub mod basis;
pub mod error;
pub mod pgalgebra;
pub mod qnum;
pub mod quantization;
pub mod random;
pub mod suite;
pub mod symbols;

pub use error::{Error, Result};
pub use pgalgebra::{FactorWord, Generator, Monomial, ParaPoly};
pub use qnum::{Deformation, DEFAULT_TOLERANCE};
pub use quantization::{quantize, FockOperator, Ordering, VerificationReport};
pub use symbols::{lower_symbol, moyal_star, upper_symbol};
