//! Lower and upper symbols of single-mode operators, and the star product
//! they induce on polynomials.

mod coefficients;
mod lower;
mod star;
mod upper;

pub use coefficients::SymbolCoefficients;
pub use lower::{lower_symbol, lower_symbol_by_pairing, lower_symbol_identities};
pub use star::{
    moyal_star, moyal_star_k4, moyal_star_with, quaternion_demo, quaternion_demo_with, quaternion_matrix,
    quaternion_product, quaternion_symbol,
};
pub use upper::{upper_symbol, UpperSymbolSolver};
