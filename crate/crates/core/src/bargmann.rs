//! The map `|ψ⟩ ↦ ψ(θ) = Σ ψ_n θ^n / ([n]_q!)^{1/2}` onto holomorphic
//! polynomials, under which `A_θ` becomes the q-derivative and `A_θ̄`
//! multiplication by `θ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pgalgebra::{Monomial, ParaPoly};
use crate::qnum::Deformation;
use crate::quantization::{ladder, ladder_dag, FockOperator, VerificationReport};

/// A single-mode polynomial in `θ` alone.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaPolynomial(ParaPoly);

impl ThetaPolynomial {
    pub fn new(p: ParaPoly) -> Result<Self> {
        if p.modes() != 1 {
            return Err(Error::SingleModeOnly(p.modes()));
        }
        if let Some((m, _)) = p.terms().find(|(m, _)| m.bar()[0] != 0) {
            return Err(Error::Invalid(format!("term with θ̄ power {} in a θ-polynomial", m.bar()[0])));
        }
        Ok(ThetaPolynomial(p))
    }

    pub fn from_coefficients(d: &Deformation, c: &[Complex64]) -> Result<Self> {
        if c.len() > d.kprime() {
            return Err(Error::OutOfRange {
                index: c.len() - 1,
                max: d.kprime() - 1,
            });
        }
        let terms = c.iter().enumerate().map(|(n, v)| (Monomial::single(n, 0), *v));
        Ok(ThetaPolynomial(ParaPoly::from_terms(*d, 1, terms)?))
    }

    pub fn as_poly(&self) -> &ParaPoly {
        &self.0
    }

    pub fn into_poly(self) -> ParaPoly {
        self.0
    }

    pub fn deformation(&self) -> &Deformation {
        self.0.deformation()
    }

    /// Coefficient of `θ^n`.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.0.coeff_st(n, 0)
    }

    /// All `k'` coefficients of `θ^n`.
    pub fn coefficients(&self) -> Vec<Complex64> {
        (0..self.deformation().kprime()).map(|n| self.coeff(n)).collect()
    }

    pub fn max_abs_diff(&self, other: &ThetaPolynomial) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

pub fn to_bargmann(d: &Deformation, psi: &[Complex64]) -> Result<ThetaPolynomial> {
    if psi.len() != d.kprime() {
        return Err(Error::Invalid(format!(
            "state has length {}, expected {}",
            psi.len(),
            d.kprime()
        )));
    }
    let c: Vec<Complex64> = psi.iter().enumerate().map(|(n, v)| v / d.qfact(n).sqrt()).collect();
    ThetaPolynomial::from_coefficients(d, &c)
}

/// Inverse of [`to_bargmann`]: `ψ_n = ([n]_q!)^{1/2} × coefficient of θ^n`.
pub fn from_bargmann(p: &ThetaPolynomial) -> Vec<Complex64> {
    let d = p.deformation();
    (0..d.kprime()).map(|n| p.coeff(n) * d.qfact(n).sqrt()).collect()
}

/// `∂_θ θ^n = [n]_q θ^{n−1}`.
pub fn derivative(p: &ThetaPolynomial) -> ThetaPolynomial {
    let d = p.deformation();
    let c: Vec<Complex64> = (1..d.kprime()).map(|n| p.coeff(n) * d.qnum(n)).collect();
    ThetaPolynomial::from_coefficients(d, &c).expect("shorter than k'")
}

/// `θ · p`, truncated at `θ^{k'}`.
pub fn multiply_theta(p: &ThetaPolynomial) -> ThetaPolynomial {
    let d = p.deformation();
    let mut c = vec![Complex64::new(0.0, 0.0)];
    c.extend((0..d.kprime() - 1).map(|n| p.coeff(n)));
    ThetaPolynomial::from_coefficients(d, &c).expect("length k'")
}

fn apply(op: &FockOperator, psi: &[Complex64]) -> Vec<Complex64> {
    (0..psi.len())
        .map(|r| (0..psi.len()).map(|c| op.entry(r, c) * psi[c]).sum())
        .collect()
}

/// Checks `𝒲 A_θ = ∂_θ 𝒲` and `𝒲 A_θ̄ = 𝔪_θ 𝒲` on every basis vector, plus
/// nilpotency of both realizations.
pub fn intertwining_report(d: &Deformation, tolerance: f64) -> VerificationReport {
    let kp = d.kprime();
    let a = ladder(d, 1, 1).expect("mode 1");
    let ad = ladder_dag(d, 1, 1).expect("mode 1");
    let (mut lower, mut raise, mut nil_d, mut nil_m, mut commut) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 0..kp {
        let mut e = vec![Complex64::new(0.0, 0.0); kp];
        e[n] = Complex64::new(1.0, 0.0);
        let w = to_bargmann(d, &e).expect("length k'");
        lower = lower.max(to_bargmann(d, &apply(&a, &e)).expect("length k'").max_abs_diff(&derivative(&w)));
        raise = raise.max(to_bargmann(d, &apply(&ad, &e)).expect("length k'").max_abs_diff(&multiply_theta(&w)));
        let (mut dp, mut mp) = (w.clone(), w.clone());
        for _ in 0..kp {
            dp = derivative(&dp);
            mp = multiply_theta(&mp);
        }
        nil_d = nil_d.max(dp.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max));
        nil_m = nil_m.max(mp.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max));
        let lhs = derivative(&multiply_theta(&w)).as_poly() - &multiply_theta(&derivative(&w)).as_poly().scale(d.q());
        commut = commut.max(lhs.max_abs_diff(&w.as_poly().scale(d.q_pow(-(n as i64)))));
    }
    let mut report = VerificationReport::new(tolerance);
    report.record("W A_th W^dagger = d_th on the basis", lower);
    report.record("W A_bth W^dagger = m_th on the basis", raise);
    report.record("d_th^k' = 0", nil_d);
    report.record("m_th^k' = 0", nil_m);
    report.record("d_th m_th - q m_th d_th = q^-n on th^n", commut);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgalgebra::Generator;
    use crate::random;

    fn basis(d: &Deformation, n: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); d.kprime()];
        v[n] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn examples() {
        let d = Deformation::new(8).unwrap();
        let p = to_bargmann(&d, &basis(&d, 0)).unwrap();
        assert_eq!(p.as_poly(), &ParaPoly::one(d, 1));
        let p = to_bargmann(&d, &basis(&d, 2)).unwrap();
        assert!((p.coeff(2) - Complex64::new(2f64.powf(-0.25), 0.0)).norm() < 1e-15);
        assert!(to_bargmann(&d, &basis(&d, 0)[..3]).is_err());

        let th = ThetaPolynomial::from_coefficients(&d, &[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        assert!((derivative(&th).coeff(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let th2 = ThetaPolynomial::from_coefficients(&d, &basis(&d, 2)).unwrap();
        assert!((derivative(&th2).coeff(1) - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-14);
        let one = ThetaPolynomial::new(ParaPoly::one(d, 1)).unwrap();
        assert!(derivative(&one).as_poly().is_zero());
        assert_eq!(multiply_theta(&one), th);
        let top = ThetaPolynomial::from_coefficients(&d, &basis(&d, 3)).unwrap();
        assert!(multiply_theta(&top).as_poly().is_zero());
    }

    #[test]
    fn rejects_barred_content() {
        let d = Deformation::new(6).unwrap();
        let bth = ParaPoly::generator(d, 1, Generator::bar(1)).unwrap();
        assert!(ThetaPolynomial::new(bth).is_err());
    }

    #[test]
    fn intertwining() {
        let mut rng = random::rng(9);
        for k in [4, 6, 8, 10, 12] {
            let d = Deformation::new(k).unwrap();
            let a = ladder(&d, 1, 1).unwrap();
            let ad = ladder_dag(&d, 1, 1).unwrap();
            let mut states: Vec<_> = (0..d.kprime()).map(|n| basis(&d, n)).collect();
            states.push(random::vector(d.kprime(), &mut rng));
            for psi in &states {
                let w = to_bargmann(&d, psi).unwrap();
                let lhs = to_bargmann(&d, &apply(&a, psi)).unwrap();
                assert!(lhs.max_abs_diff(&derivative(&w)) < 1e-10, "k={k}");
                let lhs = to_bargmann(&d, &apply(&ad, psi)).unwrap();
                assert!(lhs.max_abs_diff(&multiply_theta(&w)) < 1e-10, "k={k}");
                let back = from_bargmann(&w);
                assert!(back.iter().zip(psi).all(|(x, y)| (x - y).norm() < 1e-12));
            }
        }
    }

    #[test]
    fn report_passes() {
        for k in [4, 6, 8, 10, 12] {
            let r = intertwining_report(&Deformation::new(k).unwrap(), 1e-10);
            assert!(r.all_pass(), "k={k}\n{r}");
        }
    }

    #[test]
    fn nilpotent_and_deformed_commutator() {
        for k in [4, 6, 8, 10, 12] {
            let d = Deformation::new(k).unwrap();
            let kp = d.kprime();
            for n in 0..kp {
                let mono = ThetaPolynomial::from_coefficients(&d, &basis(&d, n)).unwrap();
                let (mut dp, mut mp) = (mono.clone(), mono.clone());
                for _ in 0..kp {
                    dp = derivative(&dp);
                    mp = multiply_theta(&mp);
                }
                assert!(dp.as_poly().is_zero() && mp.as_poly().is_zero());
                // ∂𝔪 − q 𝔪∂ = q^{−n} on θ^n
                let lhs = derivative(&multiply_theta(&mono)).as_poly()
                    - &multiply_theta(&derivative(&mono)).as_poly().scale(d.q());
                let expect = mono.as_poly().scale(d.q_pow(-(n as i64)));
                assert!(lhs.max_abs_diff(&expect) < 1e-12, "k={k} n={n}");
            }
        }
    }
}
