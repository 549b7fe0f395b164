use std::fmt;

use num_complex::Complex64;

use super::poly::{Monomial, ParaPoly};
use crate::error::{Error, Result};
use crate::qnum::Deformation;

/// One generator `θ_i` or `θ̄_i`. Modes are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub mode: usize,
    pub barred: bool,
}

impl Generator {
    pub fn theta(mode: usize) -> Self {
        Generator {
            mode,
            barred: false,
        }
    }

    pub fn bar(mode: usize) -> Self {
        Generator { mode, barred: true }
    }

    pub fn conjugate(self) -> Self {
        Generator {
            mode: self.mode,
            barred: !self.barred,
        }
    }

    /// Position in the canonical order for a `modes`-mode algebra.
    pub(crate) fn key(self, modes: usize) -> usize {
        if self.barred {
            modes + self.mode
        } else {
            self.mode
        }
    }

    fn sign(self) -> i64 {
        if self.barred {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stem = if self.barred { "bth" } else { "th" };
        write!(f, "{stem}{}", self.mode)
    }
}

/// Exponent `e` in `x·y = q_k^e · y·x`.
///
/// Same mode: `θθ̄ = q_k θ̄θ`. Different modes `i < j`, with `α_i, β_j`
/// generators of sign `a, b` (+1 unbarred, −1 barred): `α_i β_j = q_k^{ab} β_j α_i`.
pub fn exchange_exponent(x: Generator, y: Generator) -> i64 {
    use std::cmp::Ordering::*;
    match x.mode.cmp(&y.mode) {
        Equal => match (x.barred, y.barred) {
            (false, true) => 1,
            (true, false) => -1,
            _ => 0,
        },
        Less => x.sign() * y.sign(),
        Greater => -x.sign() * y.sign(),
    }
}

/// An ordered product of generators with a scalar prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorWord {
    pub scalar: Complex64,
    pub letters: Vec<Generator>,
}

impl FactorWord {
    pub fn new(scalar: Complex64, letters: Vec<Generator>) -> Self {
        FactorWord { scalar, letters }
    }

    pub fn unit() -> Self {
        FactorWord::new(Complex64::new(1.0, 0.0), Vec::new())
    }

    /// Expands a monomial into its canonically ordered word.
    pub fn from_monomial(scalar: Complex64, m: &Monomial) -> Self {
        let modes = m.modes();
        let mut letters = Vec::with_capacity(m.total_degree());
        for (i, &p) in m.theta().iter().enumerate() {
            letters.extend(std::iter::repeat(Generator::theta(i + 1)).take(p));
        }
        for (i, &p) in m.bar().iter().enumerate() {
            letters.extend(std::iter::repeat(Generator::bar(i + 1)).take(p));
        }
        debug_assert!(letters.iter().all(|g| g.mode <= modes));
        FactorWord::new(scalar, letters)
    }

    /// Formal concatenation `self · other`, no reordering.
    pub fn concat(&self, other: &FactorWord) -> FactorWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FactorWord::new(self.scalar * other.scalar, letters)
    }

    /// Formal adjoint: conjugated scalar, reversed order, `θ_i ↔ θ̄_i`.
    pub fn adjoint(&self) -> FactorWord {
        FactorWord::new(
            self.scalar.conj(),
            self.letters.iter().rev().map(|g| g.conjugate()).collect(),
        )
    }

    fn check_modes(&self, modes: usize) -> Result<()> {
        match self.letters.iter().find(|g| g.mode == 0 || g.mode > modes) {
            Some(g) => Err(Error::BadMode {
                mode: g.mode,
                modes,
            }),
            None => Ok(()),
        }
    }

    fn powers(&self, modes: usize) -> Vec<usize> {
        let mut powers = vec![0; 2 * modes];
        for g in &self.letters {
            powers[g.key(modes) - 1] += 1;
        }
        powers
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}i)", self.scalar.re, self.scalar.im)?;
        for g in &self.letters {
            write!(f, "*{g}")?;
        }
        Ok(())
    }
}

/// Reorders a word into canonical form by adjacent transpositions, applying
/// the q-commutation phase on every swap. Any power reaching `k'` gives zero.
pub fn canonicalize_q(w: &FactorWord, d: &Deformation, modes: usize) -> Result<ParaPoly> {
    w.check_modes(modes)?;
    let mut letters = w.letters.clone();
    let mut exponent = 0i64;
    // bubble sort: each inverted pair is exchanged exactly once
    let n = letters.len();
    for pass in 0..n {
        let mut swapped = false;
        for j in 0..n.saturating_sub(1 + pass) {
            let (x, y) = (letters[j], letters[j + 1]);
            if x.key(modes) > y.key(modes) {
                exponent += exchange_exponent(x, y);
                letters.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let sorted = FactorWord::new(w.scalar, letters);
    let powers = sorted.powers(modes);
    if powers.iter().any(|&p| p >= d.kprime()) {
        return Ok(ParaPoly::zero(*d, modes));
    }
    let mono = Monomial::from_powers(powers, modes);
    ParaPoly::monomial(*d, modes, w.scalar * d.qk_pow(exponent), mono)
}

/// Orders a word canonically without phases (the `: :` prescription).
/// Returns `None` when some generator power reaches `k'`.
pub fn canonicalize_prescription(
    w: &FactorWord,
    kprime: usize,
    modes: usize,
) -> Result<Option<(Complex64, Monomial)>> {
    w.check_modes(modes)?;
    let powers = w.powers(modes);
    if powers.iter().any(|&p| p >= kprime) {
        return Ok(None);
    }
    Ok(Some((w.scalar, Monomial::from_powers(powers, modes))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn same_mode_swap_k4() {
        let d = Deformation::new(4).unwrap();
        let w = FactorWord::new(c(1.0), vec![Generator::bar(1), Generator::theta(1)]);
        let p = canonicalize_q(&w, &d, 1).unwrap();
        let m = Monomial::new(vec![1], vec![1]).unwrap();
        assert!((p.coeff(&m) - c(-1.0)).norm() < 1e-14);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn cross_mode_swap() {
        for k in [4, 6, 8] {
            let d = Deformation::new(k).unwrap();
            let w = FactorWord::new(c(1.0), vec![Generator::theta(2), Generator::theta(1)]);
            let p = canonicalize_q(&w, &d, 2).unwrap();
            let m = Monomial::new(vec![1, 1], vec![0, 0]).unwrap();
            assert!((p.coeff(&m) - d.q_k().conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn nilpotent_word() {
        let d = Deformation::new(4).unwrap();
        let w = FactorWord::new(c(1.0), vec![Generator::theta(1), Generator::theta(1)]);
        assert!(canonicalize_q(&w, &d, 1).unwrap().is_zero());
        assert!(canonicalize_prescription(&w, 2, 1).unwrap().is_none());
    }

    #[test]
    fn prescription_has_no_phase() {
        let w = FactorWord::new(c(2.5), vec![Generator::bar(1), Generator::theta(1)]);
        let (s, m) = canonicalize_prescription(&w, 4, 1).unwrap().unwrap();
        assert_eq!(s, c(2.5));
        assert_eq!(m, Monomial::new(vec![1], vec![1]).unwrap());

        let w = FactorWord::new(
            c(1.0),
            vec![Generator::theta(2), Generator::bar(1), Generator::theta(1)],
        );
        let (_, m) = canonicalize_prescription(&w, 4, 2).unwrap().unwrap();
        assert_eq!(m, Monomial::new(vec![1, 1], vec![1, 0]).unwrap());

        let (s, m) = canonicalize_prescription(&FactorWord::unit(), 4, 2)
            .unwrap()
            .unwrap();
        assert_eq!(s, c(1.0));
        assert_eq!(m, Monomial::one(2));
    }

    #[test]
    fn bad_mode_rejected() {
        let d = Deformation::new(4).unwrap();
        let w = FactorWord::new(c(1.0), vec![Generator::theta(3)]);
        assert!(matches!(
            canonicalize_q(&w, &d, 2),
            Err(Error::BadMode { mode: 3, modes: 2 })
        ));
    }

    #[test]
    fn exchange_matches_displayed_relations() {
        // i < j: θ_iθ_j = q_k θ_jθ_i, θ̄_iθ̄_j = q_k θ̄_jθ̄_i, θ_iθ̄_j = q̄_k θ̄_jθ_i
        assert_eq!(exchange_exponent(Generator::theta(1), Generator::theta(2)), 1);
        assert_eq!(exchange_exponent(Generator::bar(1), Generator::bar(2)), 1);
        assert_eq!(exchange_exponent(Generator::theta(1), Generator::bar(2)), -1);
        // each relation read backwards gives the inverse phase
        for (x, y) in [
            (Generator::theta(1), Generator::theta(2)),
            (Generator::bar(1), Generator::theta(2)),
            (Generator::theta(1), Generator::bar(1)),
        ] {
            assert_eq!(exchange_exponent(x, y), -exchange_exponent(y, x));
        }
    }
}
