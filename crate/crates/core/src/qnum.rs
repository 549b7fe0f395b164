//! Deformation parameters and symmetric q-integers at even roots of unity.
//!
//! For an even order `k >= 4` the algebra uses
//!
//! ```text
//! k' = k / 2            nilpotency order
//! q   = exp(2πi / k)
//! q_k = q²  = exp(2πi / k')   commutation phase, (q_k)^{k'} = 1
//! [n]_q = sin(2πn / k) / sin(2π / k)
//! ```
//!
//! The q-integers are real, positive for `1 <= n < k'` and vanish at `n = k'`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance used by the verification routines.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct Deformation {
    k: u32,
    kprime: usize,
    q: Complex64,
    q_k: Complex64,
}

impl PartialEq for Deformation {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
    }
}

impl Eq for Deformation {}

impl Deformation {
    pub fn new(k: u32) -> Result<Self> {
        if k % 2 == 1 {
            return Err(Error::OddOrder(k));
        }
        if k < 4 {
            return Err(Error::OrderTooSmall(k));
        }
        let q = Complex64::from_polar(1.0, 2.0 * PI / k as f64);
        Ok(Deformation {
            k,
            kprime: (k / 2) as usize,
            q,
            q_k: q * q,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn q_k(&self) -> Complex64 {
        self.q_k
    }

    /// `q^e` evaluated from the reduced exponent, so phases are reproducible
    /// regardless of how they were accumulated.
    pub fn q_pow(&self, e: i64) -> Complex64 {
        let r = e.rem_euclid(self.k as i64);
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / self.k as f64)
    }

    /// `q_k^e`, reduced modulo `k'`.
    pub fn qk_pow(&self, e: i64) -> Complex64 {
        let kp = self.kprime as i64;
        let r = e.rem_euclid(kp);
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / kp as f64)
    }

    /// Principal value of `q^{n/2}`, i.e. `exp(iπn/k)`.
    pub fn q_half_pow(&self, n: i64) -> Complex64 {
        Complex64::from_polar(1.0, PI * n as f64 / self.k as f64)
    }

    /// Symmetric q-integer `[n]_q`, defined for `0 <= n <= k`.
    pub fn qnumber(&self, n: usize) -> Result<f64> {
        if n > self.k as usize {
            return Err(Error::OutOfRange {
                index: n,
                max: self.k as usize,
            });
        }
        Ok(self.qnum(n))
    }

    /// `[n]_q! = [1]_q ⋯ [n]_q`, defined for `0 <= n <= k'`.
    pub fn qfactorial(&self, n: usize) -> Result<f64> {
        if n > self.kprime {
            return Err(Error::OutOfRange {
                index: n,
                max: self.kprime,
            });
        }
        Ok(self.qfact(n))
    }

    pub(crate) fn qnum(&self, n: usize) -> f64 {
        let k = self.k as f64;
        (2.0 * PI * n as f64 / k).sin() / (2.0 * PI / k).sin()
    }

    pub(crate) fn qfact(&self, n: usize) -> f64 {
        (1..=n).map(|j| self.qnum(j)).product()
    }
}

/// Free-function form of [`Deformation::new`].
pub fn new_deformation(k: u32) -> Result<Deformation> {
    Deformation::new(k)
}

pub fn qnumber(n: usize, d: &Deformation) -> Result<f64> {
    d.qnumber(n)
}

pub fn qfactorial(n: usize, d: &Deformation) -> Result<f64> {
    d.qfactorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVEN_KS: [u32; 6] = [4, 6, 8, 10, 12, 16];

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn k4_parameters() {
        let d = Deformation::new(4).unwrap();
        assert_eq!(d.kprime(), 2);
        assert!(close(d.q(), Complex64::i()));
        assert!(close(d.q_k(), Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn k8_parameters() {
        let d = Deformation::new(8).unwrap();
        assert_eq!(d.kprime(), 4);
        let s = 0.5f64.sqrt();
        assert!(close(d.q(), Complex64::new(s, s)));
        assert!(close(d.q_k(), Complex64::i()));
    }

    #[test]
    fn rejects_odd_and_small() {
        assert_eq!(Deformation::new(5), Err(Error::OddOrder(5)));
        assert!(Deformation::new(5)
            .unwrap_err()
            .to_string()
            .contains("odd k unsupported"));
        assert_eq!(Deformation::new(2), Err(Error::OrderTooSmall(2)));
        assert_eq!(Deformation::new(0), Err(Error::OrderTooSmall(0)));
    }

    #[test]
    fn roots_of_unity() {
        for k in EVEN_KS {
            let d = Deformation::new(k).unwrap();
            assert!((d.q().norm() - 1.0).abs() < 1e-12);
            assert!((d.q_k().norm() - 1.0).abs() < 1e-12);
            assert!(close(d.q().powu(k), Complex64::new(1.0, 0.0)));
            assert!(close(
                d.q_k().powu(d.kprime() as u32),
                Complex64::new(1.0, 0.0)
            ));
            assert!(close(d.qk_pow(1), d.q_k()));
            assert!(close(d.qk_pow(-1), d.q_k().conj()));
            assert!(close(d.q_pow(3), d.q().powu(3)));
            let h = d.q_half_pow(3);
            assert!(close(h * h, d.q_pow(3)));
        }
    }

    #[test]
    fn qnumber_examples() {
        for k in EVEN_KS {
            let d = Deformation::new(k).unwrap();
            assert_eq!(d.qnumber(0).unwrap(), 0.0);
            assert!((d.qnumber(1).unwrap() - 1.0).abs() < 1e-15);
        }
        let d8 = Deformation::new(8).unwrap();
        assert!((d8.qnumber(2).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let d4 = Deformation::new(4).unwrap();
        assert!(d4.qnumber(2).unwrap().abs() < 1e-12);
        assert!(d4.qnumber(5).is_err());
        assert!(d4.qnumber(4).is_ok());
    }

    #[test]
    fn qfactorial_examples() {
        let d8 = Deformation::new(8).unwrap();
        assert_eq!(d8.qfactorial(0).unwrap(), 1.0);
        assert!((d8.qfactorial(3).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let d6 = Deformation::new(6).unwrap();
        assert!((d6.qfactorial(2).unwrap() - 1.0).abs() < 1e-12);
        assert!(d6.qfactorial(4).is_err());
    }

    #[test]
    fn reflection_and_positivity() {
        for k in EVEN_KS {
            let d = Deformation::new(k).unwrap();
            let kp = d.kprime();
            for n in 0..=kp {
                let a = d.qnumber(n).unwrap();
                let b = d.qnumber(kp - n).unwrap();
                assert!((a - b).abs() < 1e-12, "k={k} n={n}");
            }
            assert!(d.qnumber(kp).unwrap().abs() < 1e-12);
            for n in 1..kp {
                assert!(d.qnumber(n).unwrap() > 0.0);
            }
            for n in 0..kp {
                assert!(d.qfactorial(n).unwrap() > 0.0);
            }
        }
    }
}
