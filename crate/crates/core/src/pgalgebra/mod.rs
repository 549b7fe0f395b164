//! Paragrassmann polynomials in `θ_i, θ̄_i` kept in canonical form.
//!
//! Canonical order puts every unbarred generator to the left of every barred
//! one, each group sorted by increasing mode. Two different reorderings exist:
//!
//! * algebra multiplication, which picks up a power of `q_k` on every swap
//!   ([`canonicalize_q`], [`ParaPoly::multiply`]);
//! * the ordering prescription `: :` used inside integral kernels, which
//!   reorders without phases ([`canonicalize_prescription`]).

mod integral;
mod poly;
mod word;

pub use integral::{
    berezin_full_integral, inner_product, prescription_product, pseudo_norm_sq, weight,
};
pub use poly::{Monomial, ParaPoly, PolyJson, TermJson, PRUNE_THRESHOLD};
pub use word::{canonicalize_prescription, canonicalize_q, exchange_exponent, FactorWord, Generator};
