//! Everything checkable for one `k`, gathered into a single report.

use num_complex::Complex64;

use crate::bargmann::intertwining_report;
use crate::error::Result;
use crate::pgalgebra::{inner_product, pseudo_norm_sq, Monomial, ParaPoly};
use crate::qnum::Deformation;
use crate::quantization::{
    appendix_identities, check_kfermionic, quantize, resolution_of_unity, verify_relations, FockOperator, Ordering,
    VerificationReport,
};
use crate::random;
use crate::symbols::{lower_symbol, lower_symbol_by_pairing, lower_symbol_identities, UpperSymbolSolver};

/// Random instances drawn per randomized check in [`full_report`].
pub const SUITE_SAMPLES: usize = 10;

/// `(φ_n, φ_m) = δ_{nm}` for `φ_n = θ̄^n / ([n]_q!)^{1/2}`; returns the worst deviation.
pub fn orthonormality_residual(d: &Deformation) -> Result<f64> {
    let kp = d.kprime();
    let phi = |n: usize| {
        ParaPoly::monomial(*d, 1, Complex64::new(1.0 / d.qfact(n).sqrt(), 0.0), Monomial::single(0, n))
    };
    let mut worst = 0.0f64;
    for n in 0..kp {
        for m in 0..kp {
            let expect = if n == m { 1.0 } else { 0.0 };
            worst = worst.max((inner_product(&phi(n)?, &phi(m)?)? - expect).norm());
        }
    }
    Ok(worst)
}

/// Distance of `z` from the non-negative real axis.
pub fn nonneg_real_residual(z: Complex64) -> f64 {
    z.im.abs() + (-z.re).max(0.0)
}

/// Relations, resolution of unity, the k'-fermionic suite, appendix and
/// lower-symbol identities, the Bargmann realization, and seeded randomized
/// round trips. Single-mode checks are included for every `modes`.
pub fn full_report(d: &Deformation, modes: usize, tolerance: f64, seed: u64) -> Result<VerificationReport> {
    let mut report = verify_relations(d, modes, tolerance)?;
    let id = FockOperator::identity(*d, modes);
    report.record(
        format!("resolution of unity ({modes} mode{})", if modes == 1 { "" } else { "s" }),
        resolution_of_unity(d, modes)?.max_abs_diff(&id),
    );
    report.record("(phi_n, phi_m) = delta_nm", orthonormality_residual(d)?);
    report.merge(check_kfermionic(d, tolerance).to_report());
    report.merge(appendix_identities(d, tolerance)?);
    report.merge(lower_symbol_identities(d, tolerance)?);
    report.merge(intertwining_report(d, tolerance));

    let mut rng = random::rng(seed);
    let solver = UpperSymbolSolver::new(d);
    let (mut herm, mut up, mut down, mut lower, mut norm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..SUITE_SAMPLES {
        let f = random::poly(d, 1, &mut rng);
        let af = quantize(&f, Ordering::Antinormal)?;
        herm = herm.max(quantize(&f.conjugate(), Ordering::Antinormal)?.max_abs_diff(&af.adjoint()));
        up = up.max(solver.solve(&af)?.max_abs_diff(&f));
        let a = random::matrix(d, 1, &mut rng);
        down = down.max(quantize(&solver.solve(&a)?, Ordering::Antinormal)?.max_abs_diff(&a));
        lower = lower.max(lower_symbol(&a)?.max_abs_diff(&lower_symbol_by_pairing(&a)?));
        norm = norm.max(nonneg_real_residual(pseudo_norm_sq(&random::pure_power_poly(d, &mut rng))?));
    }
    let n = SUITE_SAMPLES;
    report.record(format!("A_conj(f) = (A_f)^dagger ({n} random f)"), herm);
    report.record(format!("upper_symbol(A_f) = f ({n} random f)"), up);
    report.record(format!("A_upper_symbol(A) = A ({n} random A)"), down);
    report.record(format!("lower symbol formula = direct pairing ({n} random A)"), lower);
    report.record(format!("pseudo-norm real and >= 0 ({n} random pure-power elements)"), norm);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOLERANCE;

    #[test]
    fn full_report_passes() {
        for (k, modes) in [(4, 1), (6, 1), (8, 2), (12, 1)] {
            let d = Deformation::new(k).unwrap();
            let r = full_report(&d, modes, DEFAULT_TOLERANCE, 1).unwrap();
            assert!(r.all_pass(), "k={k} modes={modes}\n{r}");
        }
    }

    #[test]
    fn residual_helper() {
        assert_eq!(nonneg_real_residual(Complex64::new(2.0, 0.0)), 0.0);
        assert_eq!(nonneg_real_residual(Complex64::new(-1.0, 0.5)), 1.5);
    }
}
