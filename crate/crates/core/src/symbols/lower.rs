use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pgalgebra::{Generator, Monomial, ParaPoly};
use crate::qnum::Deformation;
use crate::quantization::{
    coherent_ket, ladder, ladder_dag, scaled_coherent_ket, FockOperator, VerificationReport,
};

fn single_mode(a: &FockOperator) -> Result<()> {
    if a.modes() != 1 {
        return Err(Error::SingleModeOnly(a.modes()));
    }
    Ok(())
}

/// `(θ|A|θ) = Σ q̄_k^{n n̄} a_{n̄ n} / ([n̄]_q! [n]_q!)^{1/2} θ^n θ̄^{n̄}`.
pub fn lower_symbol(a: &FockOperator) -> Result<ParaPoly> {
    single_mode(a)?;
    let d = a.deformation();
    let kp = d.kprime();
    let mut terms = Vec::with_capacity(kp * kp);
    for n in 0..kp {
        for nb in 0..kp {
            let norm = (d.qfact(nb) * d.qfact(n)).sqrt();
            let c = d.qk_pow(-((n * nb) as i64)) * a.entry(nb, n) / norm;
            terms.push((Monomial::single(n, nb), c));
        }
    }
    ParaPoly::from_terms(*d, 1, terms)
}

/// `Σ_{n̄,n} μ^{n̄} λ^n (θ|_{n̄} a_{n̄ n} |θ)_n` with each product formed in
/// the algebra. `μ` scales the bra and `λ` the ket.
fn pairing(a: &FockOperator, mu: Complex64, lambda: Complex64) -> ParaPoly {
    let d = a.deformation();
    let ket = scaled_coherent_ket(d, lambda);
    let bra = coherent_ket(d, 1).expect("one mode").bra();
    let mut out = ParaPoly::zero(*d, 1);
    for nb in 0..d.kprime() {
        let b = bra.canonical(nb).scale(mu.powu(nb as u32));
        for (n, k) in ket.components().iter().enumerate() {
            let a_nn = a.entry(nb, n);
            if a_nn.norm() == 0.0 {
                continue;
            }
            out = &out + &(&b * k).scale(a_nn);
        }
    }
    out
}

/// The lower symbol computed by pairing bra, matrix and ket directly.
pub fn lower_symbol_by_pairing(a: &FockOperator) -> Result<ParaPoly> {
    single_mode(a)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(pairing(a, one, one))
}

/// Identities satisfied by lower symbols of the generators and by the
/// overlap `(θ|θ)`, including the versions with the scaled state `|q_k θ)`.
pub fn lower_symbol_identities(d: &Deformation, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(tolerance);
    let one = Complex64::new(1.0, 0.0);
    let qk = d.q_k();
    let id = FockOperator::identity(*d, 1);
    let th = ParaPoly::generator(*d, 1, Generator::theta(1))?;
    let bth = ParaPoly::generator(*d, 1, Generator::bar(1))?;

    let overlap = lower_symbol(&id)?;
    let sym_a = lower_symbol(&ladder(d, 1, 1)?)?;
    let sym_ad = lower_symbol(&ladder_dag(d, 1, 1)?)?;
    report.record("(th|A_th|th) = (th|th) th", sym_a.max_abs_diff(&(&overlap * &th)));
    report.record("(th|A_bth|th) = bth (th|th)", sym_ad.max_abs_diff(&(&bth * &overlap)));
    // the quotients θ and θ̄ carry the algebra relation
    report.record(
        "normalized symbols: th bth = q_k bth th",
        (&th * &bth).max_abs_diff(&(&bth * &th).scale(qk)),
    );

    // (q_kθ| is the adjoint of |q_kθ), so its coefficients pick up q̄_k
    let ket_q = pairing(&id, one, qk);
    let bra_q = pairing(&id, qk.conj(), one);
    let both_q = pairing(&id, qk.conj(), qk);
    report.record("th (th|th) = (th|q_k th) th", (&th * &overlap).max_abs_diff(&(&ket_q * &th)));
    report.record("(th|th) th = th (q_k th|th)", (&overlap * &th).max_abs_diff(&(&th * &bra_q)));
    report.record("bth (th|th) = (q_k th|th) bth", (&bth * &overlap).max_abs_diff(&(&bra_q * &bth)));
    report.record("(th|th) bth = bth (th|q_k th)", (&overlap * &bth).max_abs_diff(&(&bth * &ket_q)));
    report.record("(th|th) = (q_k th|q_k th)", overlap.max_abs_diff(&both_q));

    let mut bar_first = ParaPoly::zero(*d, 1);
    let mut theta_first = ParaPoly::zero(*d, 1);
    for n in 0..d.kprime() {
        let inv = Complex64::new(1.0 / d.qfact(n), 0.0);
        bar_first = &bar_first + &(&bth.pow(n as u32) * &th.pow(n as u32)).scale(inv);
        let m = ParaPoly::monomial(*d, 1, d.qk_pow(-((n * n) as i64)) * inv, Monomial::single(n, n))?;
        theta_first = &theta_first + &m;
    }
    report.record("(th|th) = sum bth^n th^n / [n]!", overlap.max_abs_diff(&bar_first));
    report.record("(th|th) = sum conj(q_k)^(n^2) th^n bth^n / [n]!", overlap.max_abs_diff(&theta_first));
    Ok(report)
}
