use num_complex::Complex64;

use super::fock::FockOperator;
use crate::basis;
use crate::error::{Error, Result};
use crate::pgalgebra::{
    canonicalize_prescription, canonicalize_q, weight, FactorWord, Monomial, ParaPoly,
};
use crate::qnum::Deformation;

/// `|θ) = Σ_n Π_i θ_i^{n_i} / ([n_i]_q!)^{1/2} |n₁…n_d⟩`, stored as one
/// paragrassmann coefficient per basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentKet {
    deformation: Deformation,
    modes: usize,
    components: Vec<ParaPoly>,
}

impl CoherentKet {
    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn components(&self) -> &[ParaPoly] {
        &self.components
    }

    pub fn component(&self, n: usize) -> &ParaPoly {
        &self.components[n]
    }

    /// The dual `(θ|`: each component replaced by its formal adjoint word.
    pub fn bra(&self) -> CoherentBra {
        let words = self
            .components
            .iter()
            .map(|p| {
                let (m, c) = p.terms().next().expect("ket components are monomials");
                FactorWord::from_monomial(*c, m).adjoint()
            })
            .collect();
        CoherentBra {
            deformation: self.deformation,
            modes: self.modes,
            words,
        }
    }
}

/// `(θ|`, kept as unordered words `θ̄_d^{n_d}⋯θ̄₁^{n₁}` so that kernels can
/// choose between the ordering prescription and algebra reordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentBra {
    deformation: Deformation,
    modes: usize,
    words: Vec<FactorWord>,
}

impl CoherentBra {
    pub fn words(&self) -> &[FactorWord] {
        &self.words
    }

    pub fn word(&self, n: usize) -> &FactorWord {
        &self.words[n]
    }

    /// Component `n` with generators put in canonical order without phases.
    pub fn ordered(&self, n: usize) -> ParaPoly {
        let (c, m) = canonicalize_prescription(&self.words[n], self.deformation.kprime(), self.modes)
            .expect("modes in range")
            .expect("powers below k'");
        ParaPoly::monomial(self.deformation, self.modes, c, m).expect("valid monomial")
    }

    /// Component `n` as an algebra element (q-phases from reordering included).
    pub fn canonical(&self, n: usize) -> ParaPoly {
        canonicalize_q(&self.words[n], &self.deformation, self.modes).expect("modes in range")
    }
}

pub fn coherent_ket(d: &Deformation, modes: usize) -> Result<CoherentKet> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    let components = basis::multi_indices(d.kprime(), modes)
        .map(|n| {
            let norm: f64 = n.iter().map(|&ni| d.qfact(ni)).product();
            let m = Monomial::new(n.clone(), vec![0; modes]).expect("modes >= 1");
            ParaPoly::monomial(*d, modes, Complex64::new(1.0 / norm.sqrt(), 0.0), m).expect("powers below k'")
        })
        .collect();
    Ok(CoherentKet {
        deformation: *d,
        modes,
        components,
    })
}

pub fn coherent_bra(d: &Deformation, modes: usize) -> Result<CoherentBra> {
    Ok(coherent_ket(d, modes)?.bra())
}

/// Single-mode `|λθ) = Σ_n λ^n θ^n / ([n]_q!)^{1/2} |n⟩`.
pub fn scaled_coherent_ket(d: &Deformation, lambda: Complex64) -> CoherentKet {
    let mut ket = coherent_ket(d, 1).expect("one mode");
    for (n, c) in ket.components.iter_mut().enumerate() {
        *c = c.scale(lambda.powu(n as u32));
    }
    ket
}

/// `∫∫ dθ : |θ) w (θ| : dθ̄`, evaluated entry by entry as the Berezin integral
/// of the prescription-ordered word `ket_n · w · bra_m`.
pub fn resolution_of_unity(d: &Deformation, modes: usize) -> Result<FockOperator> {
    let ket = coherent_ket(d, modes)?;
    let bra = ket.bra();
    let w = weight(d, modes)?;
    let w_words: Vec<FactorWord> = w.terms().map(|(m, c)| FactorWord::from_monomial(*c, m)).collect();
    let top = Monomial::top(d.kprime(), modes);
    let mut op = FockOperator::zeros(*d, modes);
    let dim = op.dim();
    for n in 0..dim {
        let (km, kc) = ket.component(n).terms().next().expect("monomial");
        let ket_word = FactorWord::from_monomial(*kc, km);
        for m in 0..dim {
            let mut total = Complex64::new(0.0, 0.0);
            for ww in &w_words {
                let word = ket_word.concat(ww).concat(bra.word(m));
                if let Some((c, mono)) = canonicalize_prescription(&word, d.kprime(), modes)? {
                    if mono == top {
                        total += c;
                    }
                }
            }
            op.matrix_mut()[(n, m)] = total;
        }
    }
    Ok(op)
}
