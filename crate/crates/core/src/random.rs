//! Seeded generators for randomized checks. Real and imaginary parts are
//! drawn uniformly from `[-1, 1]`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis;
use crate::pgalgebra::{Monomial, ParaPoly};
use crate::qnum::Deformation;
use crate::quantization::FockOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// A polynomial with every canonical monomial populated.
pub fn poly<R: Rng>(d: &Deformation, modes: usize, rng: &mut R) -> ParaPoly {
    let terms: Vec<_> = basis::multi_indices(d.kprime(), 2 * modes)
        .map(|p| {
            let m = Monomial::new(p[..modes].to_vec(), p[modes..].to_vec()).expect("modes >= 1");
            (m, complex(rng))
        })
        .collect();
    ParaPoly::from_terms(*d, modes, terms).expect("powers below k'")
}

pub fn matrix<R: Rng>(d: &Deformation, modes: usize, rng: &mut R) -> FockOperator {
    let dim = basis::dimension(d.kprime(), modes);
    let m = DMatrix::from_fn(dim, dim, |_, _| complex(rng));
    FockOperator::from_matrix(*d, modes, m).expect("square of the right size")
}

/// `a₀ + Σ a_n θ^n + Σ b_n θ̄^n` (single mode, no mixed terms).
pub fn pure_power_poly<R: Rng>(d: &Deformation, rng: &mut R) -> ParaPoly {
    let mut terms = vec![(Monomial::one(1), complex(rng))];
    for n in 1..d.kprime() {
        terms.push((Monomial::single(n, 0), complex(rng)));
        terms.push((Monomial::single(0, n), complex(rng)));
    }
    ParaPoly::from_terms(*d, 1, terms).expect("powers below k'")
}

pub fn vector<R: Rng>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_is_reproducible() {
        let d = Deformation::new(6).unwrap();
        let a = poly(&d, 1, &mut rng(7));
        let b = poly(&d, 1, &mut rng(7));
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        let c = poly(&d, 1, &mut rng(8));
        assert_ne!(a, c);
    }

    #[test]
    fn ranges() {
        let mut r = rng(1);
        for _ in 0..1000 {
            let z = complex(&mut r);
            assert!(z.re.abs() <= 1.0 && z.im.abs() <= 1.0);
        }
        let d = Deformation::new(8).unwrap();
        let p = pure_power_poly(&d, &mut r);
        assert!(p.terms().all(|(m, _)| m.theta()[0] == 0 || m.bar()[0] == 0));
    }
}
