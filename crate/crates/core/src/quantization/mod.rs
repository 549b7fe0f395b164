//! Coherent states, the quantization map `f ↦ A_f`, closed-form ladder
//! operators, and relation checkers.

mod coherent;
mod fock;
mod ladder;
mod quantize;
mod verify;

pub use coherent::{coherent_bra, coherent_ket, resolution_of_unity, scaled_coherent_ket, CoherentBra, CoherentKet};
pub use fock::{ComplexJson, FockOperator, MatrixJson};
pub use ladder::{
    ladder, ladder_dag, ladder_dag_left, ladder_right, number_operator, q_half_n, q_power_n, quantize_mixed_monomial,
    rescale_b,
};
pub use quantize::{quantize, quantize_word, quantize_words, Ordering};
pub use verify::{
    appendix_identities, check_kfermionic, check_kfermionic_with, verify_relations, BranchResidual, KFermionicReport,
    RelationCheck, VerificationReport,
};
