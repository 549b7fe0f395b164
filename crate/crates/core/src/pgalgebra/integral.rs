use num_complex::Complex64;

use super::poly::{Monomial, ParaPoly};
use crate::basis;
use crate::error::{Error, Result};
use crate::qnum::Deformation;

/// Berezin–Majid integral over all generators: the coefficient of
/// `θ₁^{k'-1}⋯θ_d^{k'-1} θ̄₁^{k'-1}⋯θ̄_d^{k'-1}`. Lower powers integrate to zero.
pub fn berezin_full_integral(p: &ParaPoly) -> Complex64 {
    p.coeff(&Monomial::top(p.deformation().kprime(), p.modes()))
}

/// The weight `w(θ, θ̄) = Σ_n Π_i [n_i]_q! θ_i^{k'-1-n_i} ⋯ θ̄_i^{k'-1-n_i}`.
pub fn weight(d: &Deformation, modes: usize) -> Result<ParaPoly> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    let kp = d.kprime();
    let terms = basis::multi_indices(kp, modes).map(|n| {
        let c: f64 = n.iter().map(|&ni| d.qfact(ni)).product();
        let exps: Vec<usize> = n.iter().map(|&ni| kp - 1 - ni).collect();
        (
            Monomial::new(exps.clone(), exps).expect("modes >= 1"),
            Complex64::new(c, 0.0),
        )
    });
    ParaPoly::from_terms(*d, modes, terms)
}

/// Formal product `: p₁ p₂ :` under the ordering prescription: powers add,
/// no q-phases, overflowing powers vanish.
pub fn prescription_product(p1: &ParaPoly, p2: &ParaPoly) -> Result<ParaPoly> {
    p1.check_compatible(p2)?;
    let kp = p1.deformation().kprime();
    let mut terms = Vec::new();
    for (m1, c1) in p1.terms() {
        for (m2, c2) in p2.terms() {
            if let Some(m) = m1.prescription_product(m2, kp) {
                terms.push((m, c1 * c2));
            }
        }
    }
    ParaPoly::from_terms(*p1.deformation(), p1.modes(), terms)
}

/// `(v, v') = ∫∫ dθ : conj(v) v' w : dθ̄`, single mode only.
pub fn inner_product(v: &ParaPoly, v2: &ParaPoly) -> Result<Complex64> {
    v.check_compatible(v2)?;
    if v.modes() != 1 {
        return Err(Error::SingleModeOnly(v.modes()));
    }
    let w = weight(v.deformation(), 1)?;
    let kernel = prescription_product(&prescription_product(&v.conjugate(), v2)?, &w)?;
    Ok(berezin_full_integral(&kernel))
}

pub fn pseudo_norm_sq(v: &ParaPoly) -> Result<Complex64> {
    inner_product(v, v)
}
