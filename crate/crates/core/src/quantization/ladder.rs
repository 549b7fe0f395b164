//! Closed-form operators on the Fock space: the lowering/raising pair
//! `A_{θ_i}, A_{θ̄_i}`, the phase operators `q^{±N_i}`, the rescaled pair
//! `B_θ, B_θ̄` and the quantized mixed monomials `A_{θ^n θ̄^m}`.
//!
//! Shift terms whose target index leaves `0..k'` are dropped; this agrees
//! with `[k']_q = 0`.

use num_complex::Complex64;

use super::fock::FockOperator;
use crate::basis;
use crate::error::{Error, Result};
use crate::qnum::Deformation;

fn check_mode(modes: usize, mode: usize) -> Result<()> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    if mode == 0 || mode > modes {
        return Err(Error::BadMode { mode, modes });
    }
    Ok(())
}

/// Operator with entries `coef(n)` at `(n, n + e_mode)` (or the transpose
/// pattern when `raise` is set).
fn shift(d: &Deformation, modes: usize, mode: usize, raise: bool, coef: impl Fn(usize) -> Complex64) -> FockOperator {
    let kp = d.kprime();
    let mut op = FockOperator::zeros(*d, modes);
    for idx in basis::multi_indices(kp, modes) {
        let ni = idx[mode - 1];
        if ni + 1 >= kp {
            continue;
        }
        let mut up = idx.clone();
        up[mode - 1] += 1;
        let (lo, hi) = (basis::flatten(&idx, kp), basis::flatten(&up, kp));
        let (r, c) = if raise { (hi, lo) } else { (lo, hi) };
        op.matrix_mut()[(r, c)] = coef(ni);
    }
    op
}

/// `A_{θ_i} = Σ √[n_i+1]_q |…n_i…⟩⟨…n_i+1…|`.
pub fn ladder(d: &Deformation, modes: usize, mode: usize) -> Result<FockOperator> {
    check_mode(modes, mode)?;
    Ok(shift(d, modes, mode, false, |n| Complex64::new(d.qnum(n + 1).sqrt(), 0.0)))
}

/// `A_{θ̄_i} = Σ √[n_i+1]_q |…n_i+1…⟩⟨…n_i…|`.
pub fn ladder_dag(d: &Deformation, modes: usize, mode: usize) -> Result<FockOperator> {
    check_mode(modes, mode)?;
    Ok(shift(d, modes, mode, true, |n| Complex64::new(d.qnum(n + 1).sqrt(), 0.0)))
}

/// Right-ordered `A^R_θ = Σ √[n+1]_q q_k^{n+2} |n⟩⟨n+1|` (single mode).
pub fn ladder_right(d: &Deformation) -> FockOperator {
    shift(d, 1, 1, false, |n| d.qk_pow(n as i64 + 2) * d.qnum(n + 1).sqrt())
}

/// Left-ordered `A^L_θ̄ = Σ √[n+1]_q q_k^{n+2} |n+1⟩⟨n|` (single mode).
pub fn ladder_dag_left(d: &Deformation) -> FockOperator {
    shift(d, 1, 1, true, |n| d.qk_pow(n as i64 + 2) * d.qnum(n + 1).sqrt())
}

/// `N_i`, the occupation of mode `i`.
pub fn number_operator(d: &Deformation, modes: usize, mode: usize) -> Result<FockOperator> {
    check_mode(modes, mode)?;
    Ok(FockOperator::diagonal(*d, modes, |n| Complex64::new(n[mode - 1] as f64, 0.0)))
}

/// `q^{sign·N_i}`: `Q_i` for `sign = +1`, `Q̄_i` for `sign = −1`.
pub fn q_power_n(d: &Deformation, modes: usize, sign: i64, mode: usize) -> Result<FockOperator> {
    check_mode(modes, mode)?;
    Ok(FockOperator::diagonal(*d, modes, |n| d.q_pow(sign * n[mode - 1] as i64)))
}

/// `q^{N/2}` with the principal value `exp(iπn/k)`.
pub fn q_half_n(d: &Deformation) -> FockOperator {
    FockOperator::diagonal(*d, 1, |n| d.q_half_pow(n[0] as i64))
}

/// `B_θ = q^{N/2} A_θ` and `B_θ̄ = A_θ̄ q^{N/2}`, which satisfy
/// `B_θ B_θ̄ − q² B_θ̄ B_θ = 1`.
pub fn rescale_b(d: &Deformation) -> (FockOperator, FockOperator) {
    let half = q_half_n(d);
    let a = ladder(d, 1, 1).expect("mode 1");
    let ad = ladder_dag(d, 1, 1).expect("mode 1");
    (&half * &a, &ad * &half)
}

/// Closed form of `A_{θ^n θ̄^m}` (single mode):
///
/// ```text
/// n ≥ m:  Σ_l {[l+n]!/[l]! · [l+n]!/[l+n−m]!}^{1/2} |l⟩⟨l+n−m|
/// m > n:  Σ_l {[l+m]!/[l+m−n]! · [l+m]!/[l]!}^{1/2} |l+m−n⟩⟨l|
/// ```
pub fn quantize_mixed_monomial(d: &Deformation, n: usize, m: usize) -> Result<FockOperator> {
    let kp = d.kprime();
    for v in [n, m] {
        if v >= kp {
            return Err(Error::OutOfRange { index: v, max: kp - 1 });
        }
    }
    let f = |j: usize| d.qfact(j);
    let mut op = FockOperator::zeros(*d, 1);
    for l in 0..kp {
        if n >= m {
            let (top, col) = (l + n, l + n - m);
            if top >= kp {
                continue;
            }
            let v = (f(top) / f(l) * f(top) / f(col)).sqrt();
            op.matrix_mut()[(l, col)] = Complex64::new(v, 0.0);
        } else {
            let (top, row) = (l + m, l + m - n);
            if top >= kp {
                continue;
            }
            let v = (f(top) / f(row) * f(top) / f(l)).sqrt();
            op.matrix_mut()[(row, l)] = Complex64::new(v, 0.0);
        }
    }
    Ok(op)
}
