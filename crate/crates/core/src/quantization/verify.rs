//! Residual-based checks of the relations obeyed by the quantized generators.
//!
//! Failures are recorded in the report, never raised.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::FockOperator;
use super::ladder::{
    ladder, ladder_dag, ladder_dag_left, ladder_right, number_operator, q_power_n, quantize_mixed_monomial, rescale_b,
};
use super::quantize::{one, quantize, quantize_word, Ordering};
use crate::error::Result;
use crate::pgalgebra::{FactorWord, Generator, Monomial, ParaPoly};
use crate::qnum::Deformation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relations: Vec<RelationCheck>,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn new(tolerance: f64) -> Self {
        VerificationReport {
            relations: Vec::new(),
            tolerance,
        }
    }

    /// Records a residual; the check passes iff `residual <= tolerance`.
    pub fn record(&mut self, name: impl Into<String>, residual: f64) {
        self.relations.push(RelationCheck {
            name: name.into(),
            residual,
            pass: residual <= self.tolerance,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for r in other.relations {
            self.record(r.name, r.residual);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&RelationCheck> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            let status = if r.pass { "pass" } else { "FAIL" };
            writeln!(f, "{}: {status} (residual {:.3e})", r.name, r.residual)?;
        }
        let passed = self.relations.iter().filter(|r| r.pass).count();
        write!(
            f,
            "{passed}/{} relations pass at tolerance {:e}",
            self.relations.len(),
            self.tolerance
        )
    }
}

fn word(letters: Vec<Generator>) -> FactorWord {
    FactorWord::new(one(), letters)
}

fn diag(d: &Deformation, f: impl Fn(usize) -> Complex64) -> FockOperator {
    FockOperator::diagonal(*d, 1, |n| f(n[0]))
}

/// Biedenharn–Macfarlane relations, homomorphism, nilpotency, hermiticity
/// and (for `modes >= 2`) the cross-mode commutation relations.
pub fn verify_relations(d: &Deformation, modes: usize, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(tolerance);
    let kp = d.kprime();
    let q = d.q();
    let mut lowering = Vec::with_capacity(modes);
    let mut raising = Vec::with_capacity(modes);
    for i in 1..=modes {
        let a = quantize_word(d, modes, &word(vec![Generator::theta(i)]), Ordering::Antinormal)?;
        let ad = quantize_word(d, modes, &word(vec![Generator::bar(i)]), Ordering::Antinormal)?;
        let tag = if modes == 1 { String::new() } else { format!("mode {i}: ") };

        report.record(format!("{tag}A_th = closed-form lowering operator"), a.max_abs_diff(&ladder(d, modes, i)?));
        report.record(format!("{tag}A_bth = closed-form raising operator"), ad.max_abs_diff(&ladder_dag(d, modes, i)?));

        let a_ad = &a * &ad;
        let ad_a = &ad * &a;
        let lhs = &a_ad - &(&ad_a * q);
        report.record(format!("{tag}A_th A_bth - q A_bth A_th = q^-N"), lhs.max_abs_diff(&q_power_n(d, modes, -1, i)?));
        let lhs = &a_ad - &(&ad_a * q.conj());
        report.record(format!("{tag}A_th A_bth - qbar A_bth A_th = q^N"), lhs.max_abs_diff(&q_power_n(d, modes, 1, i)?));

        let mut hom = 0.0f64;
        let mut hom_bar = 0.0f64;
        for n in 1..=kp {
            let an = quantize_word(d, modes, &word(vec![Generator::theta(i); n]), Ordering::Antinormal)?;
            let adn = quantize_word(d, modes, &word(vec![Generator::bar(i); n]), Ordering::Antinormal)?;
            hom = hom.max(a.pow(n as u32).max_abs_diff(&an));
            hom_bar = hom_bar.max(ad.pow(n as u32).max_abs_diff(&adn));
        }
        report.record(format!("{tag}A_th^n = A_(th^n), n <= k'"), hom);
        report.record(format!("{tag}A_bth^n = A_(bth^n), n <= k'"), hom_bar);
        report.record(format!("{tag}A_th^k' = 0"), a.pow(kp as u32).max_abs());
        report.record(format!("{tag}A_bth^k' = 0"), ad.pow(kp as u32).max_abs());
        report.record(format!("{tag}A_bth = (A_th)^dagger"), ad.max_abs_diff(&a.adjoint()));

        lowering.push(a);
        raising.push(ad);
    }

    for i in 1..=modes {
        for j in 1..=modes {
            if i == j {
                continue;
            }
            let (ai, aj) = (&lowering[i - 1], &lowering[j - 1]);
            let (adi, adj) = (&raising[i - 1], &raising[j - 1]);
            report.record(format!("[A_th{i}, A_bth{j}] = 0"), ai.commutator(adj).max_abs());
            if i < j {
                report.record(format!("[A_th{i}, A_th{j}] = 0"), ai.commutator(aj).max_abs());
                report.record(format!("[A_bth{i}, A_bth{j}] = 0"), adi.commutator(adj).max_abs());
                let ij = quantize_word(d, modes, &word(vec![Generator::theta(i), Generator::theta(j)]), Ordering::Antinormal)?;
                let ji = quantize_word(d, modes, &word(vec![Generator::theta(j), Generator::theta(i)]), Ordering::Antinormal)?;
                let prod = ai * aj;
                report.record(format!("A_(th{i} th{j}) = A_th{i} A_th{j}"), ij.max_abs_diff(&prod));
                report.record(format!("A_(th{j} th{i}) = A_(th{i} th{j})"), ji.max_abs_diff(&ij));
                report.record(format!("A_th{j} A_th{i} = A_(th{i} th{j})"), (aj * ai).max_abs_diff(&ij));
            }
        }
    }
    Ok(report)
}

/// Residuals of the two type-(iii) relations for one choice of `q_F^{1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchResidual {
    pub root: Complex64,
    /// `f₋ f₊⁺ − root^{-1} f₊⁺ f₋`
    pub annihilators: f64,
    /// `f₊ f₋⁺ − root f₋⁺ f₊`
    pub creators: f64,
}

impl BranchResidual {
    pub fn worst(&self) -> f64 {
        self.annihilators.max(self.creators)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KFermionicReport {
    pub q_f: Complex64,
    /// Type (i) and (ii) relations.
    pub core: VerificationReport,
    /// Type (iii) for the principal root first, then its negative.
    pub branches: [BranchResidual; 2],
}

impl KFermionicReport {
    /// Flattens into a plain report; each type-(iii) relation is scored by the
    /// better branch, and the entry name says which branch that was.
    pub fn to_report(&self) -> VerificationReport {
        let mut r = self.core.clone();
        let label = |i: usize| if i == 0 { "principal" } else { "negated" };
        let best_a = if self.branches[0].annihilators <= self.branches[1].annihilators { 0 } else { 1 };
        let best_c = if self.branches[0].creators <= self.branches[1].creators { 0 } else { 1 };
        r.record(
            format!(
                "F(iii) f- f+^+ - q_F^-1/2 f+^+ f- = 0 [{} root; other root residual {:.3e}]",
                label(best_a),
                self.branches[1 - best_a].annihilators
            ),
            self.branches[best_a].annihilators,
        );
        r.record(
            format!(
                "F(iii) f+ f-^+ - q_F^+1/2 f-^+ f+ = 0 [{} root; other root residual {:.3e}]",
                label(best_c),
                self.branches[1 - best_c].creators
            ),
            self.branches[best_c].creators,
        );
        r
    }
}

/// Checks the k'-fermionic algebra with `f₋ = B_θ`, `f₊ = B_θ̄`,
/// `f₊⁺ = f₊†`, `f₋⁺ = f₋†`, `N = diag(0, …, k'−1)` and `q_F = q_k`.
pub fn check_kfermionic(d: &Deformation, tolerance: f64) -> KFermionicReport {
    check_kfermionic_with(d, 2.0 * PI / d.kprime() as f64, tolerance)
}

/// As [`check_kfermionic`] with `q_F = exp(i·angle)`.
pub fn check_kfermionic_with(d: &Deformation, angle: f64, tolerance: f64) -> KFermionicReport {
    let kp = d.kprime();
    let q_f = Complex64::from_polar(1.0, angle);
    // principal branch of the square root: half of the angle folded into (−π, π]
    let folded = (angle + PI).rem_euclid(2.0 * PI) - PI;
    let folded = if folded <= -PI { folded + 2.0 * PI } else { folded };
    let principal = Complex64::from_polar(1.0, folded / 2.0);

    let (fm, fp) = rescale_b(d);
    let fp_plus = fp.adjoint();
    let fm_plus = fm.adjoint();
    let n_op = number_operator(d, 1, 1).expect("mode 1");
    let id = FockOperator::identity(*d, 1);

    let mut core = VerificationReport::new(tolerance);
    core.record(
        "F(i) f- f+ - q_F f+ f- = 1",
        (&(&fm * &fp) - &(&(&fp * &fm) * q_f)).max_abs_diff(&id),
    );
    core.record("F(i) [N, f-] = -f-", n_op.commutator(&fm).max_abs_diff(&fm.scale(-one())));
    core.record("F(i) [N, f+] = +f+", n_op.commutator(&fp).max_abs_diff(&fp));
    core.record("F(i) (f-)^k' = 0", fm.pow(kp as u32).max_abs());
    core.record("F(i) (f+)^k' = 0", fp.pow(kp as u32).max_abs());
    core.record(
        "F(ii) f+^+ f-^+ - conj(q_F) f-^+ f+^+ = 1",
        (&(&fp_plus * &fm_plus) - &(&(&fm_plus * &fp_plus) * q_f.conj())).max_abs_diff(&id),
    );
    core.record("F(ii) [N, f+^+] = -f+^+", n_op.commutator(&fp_plus).max_abs_diff(&fp_plus.scale(-one())));
    core.record("F(ii) [N, f-^+] = +f-^+", n_op.commutator(&fm_plus).max_abs_diff(&fm_plus));
    core.record("F(ii) (f+^+)^k' = 0", fp_plus.pow(kp as u32).max_abs());
    core.record("F(ii) (f-^+)^k' = 0", fm_plus.pow(kp as u32).max_abs());

    let branch = |root: Complex64| BranchResidual {
        root,
        annihilators: (&(&fm * &fp_plus) - &(&(&fp_plus * &fm) * root.inv())).max_abs(),
        creators: (&(&fp * &fm_plus) - &(&(&fm_plus * &fp) * root)).max_abs(),
    };
    KFermionicReport {
        q_f,
        core,
        branches: [branch(principal), branch(-principal)],
    }
}

/// Single-mode identities: the first-order ordering table, closed forms of
/// mixed monomials, and the commutator symmetrization identity.
pub fn appendix_identities(d: &Deformation, tolerance: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(tolerance);
    let kp = d.kprime();
    let th = ParaPoly::generator(*d, 1, Generator::theta(1))?;
    let bth = ParaPoly::generator(*d, 1, Generator::bar(1))?;
    let a_l = quantize(&th, Ordering::Left)?;
    let a_r = quantize(&th, Ordering::Right)?;
    let b_l = quantize(&bth, Ordering::Left)?;
    let b_r = quantize(&bth, Ordering::Right)?;

    report.record("A^R_th closed form (q_k^(n+2) phases)", a_r.max_abs_diff(&ladder_right(d)));
    report.record("A^L_bth closed form (q_k^(n+2) phases)", b_l.max_abs_diff(&ladder_dag_left(d)));

    let up = |n: usize| d.qnum(n + 1).abs();
    let at = |n: usize| d.qnum(n).abs();
    let qk = |e: usize| d.qk_pow(e as i64);
    let table: [(&str, FockOperator, FockOperator); 8] = [
        ("A^L_th A^R_bth = sum [n+1] |n><n|", &a_l * &b_r, diag(d, |n| up(n).into())),
        ("A^L_th A^L_bth = sum [n+1] q_k^(n+2) |n><n|", &a_l * &b_l, diag(d, |n| qk(n + 2) * up(n))),
        ("A^R_th A^R_bth = sum [n+1] q_k^(n+2) |n><n|", &a_r * &b_r, diag(d, |n| qk(n + 2) * up(n))),
        ("A^R_th A^L_bth = sum [n+1] q_k^(2n+4) |n><n|", &a_r * &b_l, diag(d, |n| qk(2 * n + 4) * up(n))),
        ("A^R_bth A^L_th = sum [n] |n><n|", &b_r * &a_l, diag(d, |n| at(n).into())),
        ("A^R_bth A^R_th = sum [n] q_k^(n+1) |n><n|", &b_r * &a_r, diag(d, |n| qk(n + 1) * at(n))),
        ("A^L_bth A^L_th = sum [n] q_k^(n+1) |n><n|", &b_l * &a_l, diag(d, |n| qk(n + 1) * at(n))),
        ("A^L_bth A^R_th = sum [n] q_k^(2n+2) |n><n|", &b_l * &a_r, diag(d, |n| qk(2 * n + 2) * at(n))),
    ];
    for (name, lhs, rhs) in table {
        report.record(name, lhs.max_abs_diff(&rhs));
    }

    let a = ladder(d, 1, 1)?;
    let ad = ladder_dag(d, 1, 1)?;
    let mono = |s: usize, t: usize| ParaPoly::monomial(*d, 1, one(), Monomial::single(s, t));
    let mut closed = 0.0f64;
    let mut product = 0.0f64;
    let mut reversed = 0.0f64;
    let mut symmetrized = 0.0f64;
    for n in 0..kp {
        for m in 0..kp {
            let direct = quantize(&mono(n, m)?, Ordering::Antinormal)?;
            closed = closed.max(quantize_mixed_monomial(d, n, m)?.max_abs_diff(&direct));
            let an = a.pow(n as u32);
            let adm = ad.pow(m as u32);
            product = product.max((&an * &adm).max_abs_diff(&direct));
            let mut letters = vec![Generator::bar(1); m];
            letters.extend(vec![Generator::theta(1); n]);
            let rev = quantize_word(d, 1, &word(letters), Ordering::Antinormal)?;
            reversed = reversed.max(rev.max_abs_diff(&direct));

            if n >= 1 && m >= 1 {
                let lhs = an.commutator(&adm);
                let comm = a.commutator(&ad);
                let mut rhs = FockOperator::zeros(*d, 1);
                for s in 0..n {
                    for r in 0..m {
                        let term = &(&(&(&a.pow(s as u32) * &ad.pow(r as u32)) * &comm) * &ad.pow((m - 1 - r) as u32))
                            * &a.pow((n - 1 - s) as u32);
                        rhs = &rhs + &term;
                    }
                }
                symmetrized = symmetrized.max(lhs.max_abs_diff(&rhs));
            }
        }
    }
    report.record("A_(th^n bth^m) closed form = direct quantization", closed);
    report.record("A_(th^n bth^m) = A_(th^n) A_(bth^m)", product);
    report.record("A_(bth^m th^n) = A_(th^n bth^m)", reversed);
    report.record("[A_(th^n), A_(bth^m)] = symmetrized commutator sum", symmetrized);

    let tb = quantize(&mono(1, 1)?, Ordering::Antinormal)?;
    report.record("A_(th bth) = sum |[n+1]| |n><n|", tb.max_abs_diff(&diag(d, |n| up(n).into())));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOLERANCE;

    #[test]
    fn k4_single_mode_all_pass() {
        let d = Deformation::new(4).unwrap();
        let r = verify_relations(&d, 1, DEFAULT_TOLERANCE).unwrap();
        assert!(r.all_pass(), "{r}");
        assert_eq!(r.get("A_th^k' = 0").unwrap().residual, 0.0);
    }

    #[test]
    fn k4_bm_lhs_is_diag_1_minus_i() {
        let d = Deformation::new(4).unwrap();
        let a = ladder(&d, 1, 1).unwrap();
        let ad = ladder_dag(&d, 1, 1).unwrap();
        let lhs = &(&a * &ad) - &(&(&ad * &a) * d.q());
        assert!((lhs.entry(0, 0) - one()).norm() < 1e-15);
        assert!((lhs.entry(1, 1) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(lhs.entry(0, 1).norm() + lhs.entry(1, 0).norm() == 0.0);
    }

    #[test]
    fn k6_two_modes_all_pass() {
        let d = Deformation::new(6).unwrap();
        let r = verify_relations(&d, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(r.all_pass(), "{r}");
        assert!(r.get("[A_th1, A_bth2] = 0").is_some());
        assert!(r.get("A_(th2 th1) = A_(th1 th2)").is_some());
    }

    #[test]
    fn kfermionic_branches() {
        let d = Deformation::new(8).unwrap();
        let k = check_kfermionic(&d, DEFAULT_TOLERANCE);
        assert!(k.core.all_pass(), "{}", k.core);
        assert!(k.branches[0].worst() < 1e-12);
        assert!(k.branches[1].worst() > 1e-3);
        assert!((k.branches[0].root - d.q()).norm() < 1e-14);
        assert!(k.to_report().all_pass());

        // k' = 2: A² = 0 so both branches hold
        let d4 = Deformation::new(4).unwrap();
        let k = check_kfermionic(&d4, DEFAULT_TOLERANCE);
        assert!(k.branches.iter().all(|b| b.worst() < 1e-12));
        assert_eq!(k.core.get("F(i) (f-)^k' = 0").unwrap().residual, 0.0);
    }

    #[test]
    fn appendix_k8() {
        let d = Deformation::new(8).unwrap();
        let r = appendix_identities(&d, DEFAULT_TOLERANCE).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn bar_theta_product_differs_from_mixed_quantization() {
        let d = Deformation::new(8).unwrap();
        let ad_a = &ladder_dag(&d, 1, 1).unwrap() * &ladder(&d, 1, 1).unwrap();
        let tb = quantize_mixed_monomial(&d, 1, 1).unwrap();
        assert!(ad_a.max_abs_diff(&tb) > 0.5);
    }

    #[test]
    fn report_display_and_json() {
        let mut r = VerificationReport::new(1e-10);
        r.record("I*I = -1", 0.0);
        r.record("broken", 1.0);
        let s = r.to_string();
        assert!(s.contains("I*I = -1: pass"));
        assert!(s.contains("broken: FAIL"));
        assert!(!r.all_pass());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["relations"][0]["name"], "I*I = -1");
        assert_eq!(v["relations"][1]["pass"], false);
        assert_eq!(v["tolerance"], 1e-10);
    }
}
