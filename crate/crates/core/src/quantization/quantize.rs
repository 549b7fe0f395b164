use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::FockOperator;
use crate::basis;
use crate::error::{Error, Result};
use crate::pgalgebra::{
    canonicalize_prescription, canonicalize_q, prescription_product, weight, FactorWord, Monomial, ParaPoly,
};
use crate::qnum::Deformation;

/// Where the symbol sits in the kernel `|θ) · w · (θ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    /// `: f w :`, all generators ordered without phases.
    Antinormal,
    /// `|θ) f w (θ|` with algebra reordering.
    Left,
    /// `|θ) w f (θ|` with algebra reordering.
    Right,
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Antinormal => "antinormal",
            Ordering::Left => "left",
            Ordering::Right => "right",
        })
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "antinormal" => Ok(Ordering::Antinormal),
            "left" => Ok(Ordering::Left),
            "right" => Ok(Ordering::Right),
            other => Err(Error::Invalid(format!("unknown ordering '{other}'"))),
        }
    }
}

/// Coherent-state quantization `f ↦ A_f` of a canonical polynomial.
pub fn quantize(f: &ParaPoly, ord: Ordering) -> Result<FockOperator> {
    let words: Vec<FactorWord> = f.terms().map(|(m, c)| FactorWord::from_monomial(*c, m)).collect();
    quantize_words(f.deformation(), f.modes(), &words, ord)
}

/// Quantizes a formal sum of words, applying the ordering rule to each word
/// as written. Under [`Ordering::Antinormal`] `θ₂θ₁` and `θ₁θ₂` therefore have
/// the same image, while the algebra orderings see the q-phase.
pub fn quantize_words(d: &Deformation, modes: usize, words: &[FactorWord], ord: Ordering) -> Result<FockOperator> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    let kp = d.kprime();
    let w = weight(d, modes)?;
    let kernel = match ord {
        Ordering::Antinormal => {
            let mut terms = Vec::with_capacity(words.len());
            for word in words {
                if let Some(t) = canonicalize_prescription(word, kp, modes)? {
                    terms.push((t.1, t.0));
                }
            }
            let f = ParaPoly::from_terms(*d, modes, terms)?;
            prescription_product(&f, &w)?
        }
        Ordering::Left | Ordering::Right => {
            let mut f = ParaPoly::zero(*d, modes);
            for word in words {
                f = f.try_add(&canonicalize_q(word, d, modes)?)?;
            }
            if ord == Ordering::Left {
                f.multiply(&w)?
            } else {
                w.multiply(&f)?
            }
        }
    };
    Ok(integrate_kernel(&kernel, ord != Ordering::Antinormal))
}

/// Entry `(n, m)` of `∫ |θ) K (θ|` is the Berezin integral of
/// `ket_n · K · bra_m`. For a kernel term `θ^a θ̄^b` only `n = top − a`,
/// `m = top − b` reach the top monomial, so each term lands in one entry.
fn integrate_kernel(kernel: &ParaPoly, phased: bool) -> FockOperator {
    let d = *kernel.deformation();
    let modes = kernel.modes();
    let kp = d.kprime();
    let mut op = FockOperator::zeros(d, modes);
    for (t, c) in kernel.terms() {
        let n: Vec<usize> = t.theta().iter().map(|a| kp - 1 - a).collect();
        let m: Vec<usize> = t.bar().iter().map(|b| kp - 1 - b).collect();
        let norm: f64 = n.iter().chain(&m).map(|&j| d.qfact(j)).product();
        let mut value = c / norm.sqrt();
        if phased {
            let ket = Monomial::new(n.clone(), vec![0; modes]).expect("modes >= 1");
            let bra = Monomial::new(vec![0; modes], m.clone()).expect("modes >= 1");
            let (e1, left) = ket.product(t, kp).expect("top powers fit");
            let (e2, _) = left.product(&bra, kp).expect("top powers fit");
            value *= d.qk_pow(e1 + e2);
        }
        op.matrix_mut()[(basis::flatten(&n, kp), basis::flatten(&m, kp))] += value;
    }
    op
}

/// Convenience: `A_f` of a single word with unit scalar.
pub fn quantize_word(d: &Deformation, modes: usize, word: &FactorWord, ord: Ordering) -> Result<FockOperator> {
    quantize_words(d, modes, std::slice::from_ref(word), ord)
}

pub(crate) fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}
