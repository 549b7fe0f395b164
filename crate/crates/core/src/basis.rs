//! Multi-index bookkeeping for the tensor Fock basis `|n₁…n_d⟩`.
//!
//! Basis vectors are flattened row-major with `n₁` most significant, so for
//! `k' = 2, d = 2` the order is `|00⟩, |01⟩, |10⟩, |11⟩`.

/// Human-readable statement of the flattening rule, embedded in matrix JSON.
pub const BASIS_ORDER: &str = "row-major multi-index |n1..nd>, mode 1 most significant";

pub fn dimension(kprime: usize, modes: usize) -> usize {
    kprime.pow(modes as u32)
}

pub fn flatten(index: &[usize], kprime: usize) -> usize {
    index.iter().fold(0, |acc, &n| acc * kprime + n)
}

pub fn unflatten(mut flat: usize, kprime: usize, modes: usize) -> Vec<usize> {
    let mut out = vec![0; modes];
    for slot in out.iter_mut().rev() {
        *slot = flat % kprime;
        flat /= kprime;
    }
    out
}

/// All multi-indices in flattened order.
pub fn multi_indices(kprime: usize, modes: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..dimension(kprime, modes)).map(move |i| unflatten(i, kprime, modes))
}
