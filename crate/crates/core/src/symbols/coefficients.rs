use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pgalgebra::{Monomial, ParaPoly};
use crate::qnum::Deformation;

/// Dense single-mode view `f_{s,t}` = coefficient of `θ^s θ̄^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolCoefficients {
    deformation: Deformation,
    values: Vec<Complex64>,
}

impl SymbolCoefficients {
    pub fn zeros(deformation: Deformation) -> Self {
        let kp = deformation.kprime();
        SymbolCoefficients {
            deformation,
            values: vec![Complex64::new(0.0, 0.0); kp * kp],
        }
    }

    pub fn from_poly(f: &ParaPoly) -> Result<Self> {
        if f.modes() != 1 {
            return Err(Error::SingleModeOnly(f.modes()));
        }
        let mut out = SymbolCoefficients::zeros(*f.deformation());
        for (m, c) in f.terms() {
            out.set(m.theta()[0], m.bar()[0], *c);
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> ParaPoly {
        let kp = self.deformation.kprime();
        let terms = (0..kp).flat_map(|s| (0..kp).map(move |t| (Monomial::single(s, t), self.get(s, t))));
        ParaPoly::from_terms(self.deformation, 1, terms).expect("powers below k'")
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn get(&self, s: usize, t: usize) -> Complex64 {
        self.values[s * self.deformation.kprime() + t]
    }

    pub fn set(&mut self, s: usize, t: usize, c: Complex64) {
        let kp = self.deformation.kprime();
        self.values[s * kp + t] = c;
    }

    /// The pairs `(s, t)` with `t − s = p`, by increasing `s`.
    pub fn diagonal(kprime: usize, p: i64) -> Vec<(usize, usize)> {
        (0..kprime)
            .filter_map(|s| {
                let t = s as i64 + p;
                (0..kprime as i64).contains(&t).then_some((s, t as usize))
            })
            .collect()
    }
}
