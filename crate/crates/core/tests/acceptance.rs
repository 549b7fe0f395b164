//! Acceptance checks. Prints one line per criterion and exits non-zero if
//! any fails.

use std::process::ExitCode;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use paraquant::bargmann::intertwining_report;
use paraquant::pgalgebra::pseudo_norm_sq;
use paraquant::quantization::{
    appendix_identities, check_kfermionic, ladder, quantize_word, resolution_of_unity, verify_relations,
};
use paraquant::random;
use paraquant::suite::{nonneg_real_residual, orthonormality_residual};
use paraquant::symbols::{
    lower_symbol, lower_symbol_by_pairing, lower_symbol_identities, quaternion_demo_with, UpperSymbolSolver,
};
use paraquant::{quantize, Deformation, FactorWord, FockOperator, Generator, Monomial, Ordering, ParaPoly};

const KS: [u32; 5] = [4, 6, 8, 10, 12];
const TOL: f64 = 1e-10;
const LOOSE: f64 = 1e-9;
const SAMPLES: usize = 100;
const SEED: u64 = 20_240_601;

/// Outcome of one criterion: worst residual seen and any failure notes.
struct Outcome {
    worst: f64,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            worst: 0.0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, residual: f64, tol: f64) {
        self.worst = self.worst.max(residual);
        if residual.is_nan() || residual > tol {
            self.notes.push(format!("{} (residual {residual:.3e} > {tol:e})", what.into()));
        }
    }

    fn exact(&mut self, what: impl Into<String>, residual: f64) {
        if residual != 0.0 {
            self.notes.push(format!("{} is {residual:e}, expected exactly 0", what.into()));
        }
    }

    fn report(&mut self, what: &str, r: &paraquant::VerificationReport) {
        for rel in &r.relations {
            self.check(format!("{what}: {}", rel.name), rel.residual, r.tolerance);
        }
    }
}

fn def(k: u32) -> Deformation {
    Deformation::new(k).expect("even k >= 4")
}

fn c1_resolution() -> Outcome {
    let mut o = Outcome::new();
    let mut cases: Vec<(u32, usize)> = KS.iter().flat_map(|&k| [(k, 1), (k, 2)]).collect();
    cases.push((4, 3));
    for (k, modes) in cases {
        let d = def(k);
        let r = resolution_of_unity(&d, modes).expect("valid");
        o.check(format!("k={k} d={modes}"), r.max_abs_diff(&FockOperator::identity(d, modes)), TOL);
    }
    o
}

fn c2_biedenharn_macfarlane() -> Outcome {
    let mut o = Outcome::new();
    for k in KS {
        let r = verify_relations(&def(k), 1, TOL).expect("valid");
        for name in ["A_th A_bth - q A_bth A_th = q^-N", "A_th A_bth - qbar A_bth A_th = q^N"] {
            let rel = r.get(name).expect("recorded");
            o.check(format!("k={k} {name}"), rel.residual, TOL);
        }
    }
    for k in [4, 6, 8] {
        let r = verify_relations(&def(k), 2, TOL).expect("valid");
        o.report(&format!("k={k} d=2"), &r);
    }
    o
}

fn c3_homomorphism() -> Outcome {
    let mut o = Outcome::new();
    for k in KS {
        let d = def(k);
        let kp = d.kprime();
        let a = ladder(&d, 1, 1).expect("mode 1");
        let a_q = quantize(&ParaPoly::generator(d, 1, Generator::theta(1)).expect("mode 1"), Ordering::Antinormal)
            .expect("valid");
        o.check(format!("k={k} A_th closed form"), a.max_abs_diff(&a_q), TOL);
        for n in 1..=kp {
            let word = FactorWord::new(Complex64::new(1.0, 0.0), vec![Generator::theta(1); n]);
            let an = quantize_word(&d, 1, &word, Ordering::Antinormal).expect("valid");
            o.check(format!("k={k} A_th^{n} = A_(th^{n})"), a_q.pow(n as u32).max_abs_diff(&an), TOL);
        }
        o.exact(format!("k={k} max |A_th^k'|"), a_q.pow(kp as u32).max_abs());
    }
    o
}

fn c4_hermitian() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(SEED);
    for k in KS {
        let d = def(k);
        let th = ParaPoly::generator(d, 1, Generator::theta(1)).expect("mode 1");
        let bth = ParaPoly::generator(d, 1, Generator::bar(1)).expect("mode 1");
        let a = quantize(&th, Ordering::Antinormal).expect("valid");
        let ad = quantize(&bth, Ordering::Antinormal).expect("valid");
        o.check(format!("k={k} A_bth = A_th^dagger"), ad.max_abs_diff(&a.adjoint()), TOL);
        for i in 0..SAMPLES {
            let f = random::poly(&d, 1, &mut rng);
            let lhs = quantize(&f.conjugate(), Ordering::Antinormal).expect("valid");
            let rhs = quantize(&f, Ordering::Antinormal).expect("valid").adjoint();
            o.check(format!("k={k} sample {i}"), lhs.max_abs_diff(&rhs), LOOSE);
        }
    }
    o
}

fn c5_round_trips() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(SEED + 5);
    for k in KS {
        let d = def(k);
        let solver = UpperSymbolSolver::new(&d);
        for i in 0..SAMPLES {
            let f = random::poly(&d, 1, &mut rng);
            let back = solver.solve(&quantize(&f, Ordering::Antinormal).expect("valid")).expect("valid");
            o.check(format!("k={k} upper(A_f) sample {i}"), back.max_abs_diff(&f), LOOSE);
            let a = random::matrix(&d, 1, &mut rng);
            let again = quantize(&solver.solve(&a).expect("valid"), Ordering::Antinormal).expect("valid");
            o.check(format!("k={k} A_upper(A) sample {i}"), again.max_abs_diff(&a), LOOSE);
        }
    }
    // k = 4: f = a11 + a01 th + a10 bth + (a00 - a11) th bth
    let d = def(4);
    let solver = UpperSymbolSolver::new(&d);
    for i in 0..SAMPLES {
        let v: Vec<Complex64> = random::vector(4, &mut rng);
        let a = FockOperator::from_matrix(d, 1, DMatrix::from_row_slice(2, 2, &v)).expect("2x2");
        let (a00, a01, a10, a11) = (v[0], v[1], v[2], v[3]);
        let expect = ParaPoly::from_terms(
            d,
            1,
            [
                (Monomial::single(0, 0), a11),
                (Monomial::single(1, 0), a01),
                (Monomial::single(0, 1), a10),
                (Monomial::single(1, 1), a00 - a11),
            ],
        )
        .expect("k = 4");
        o.check(format!("k=4 closed form sample {i}"), solver.solve(&a).expect("valid").max_abs_diff(&expect), TOL);
    }
    o
}

fn c6_quaternions() -> Outcome {
    let mut o = Outcome::new();
    let r = quaternion_demo_with(SEED + 6, SAMPLES, TOL);
    for name in ["I*I = -1", "J*J = -1", "K*K = -1", "I*J = K", "J*I = -K", "th*th = 0", "bth*bth = 0"] {
        if r.get(name).is_none() {
            o.notes.push(format!("missing entry {name}"));
        }
    }
    o.report("quaternion", &r);
    o
}

fn c7_lower_symbols() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(SEED + 7);
    for k in KS {
        let d = def(k);
        o.report(&format!("k={k}"), &lower_symbol_identities(&d, TOL).expect("valid"));
        for i in 0..SAMPLES {
            let a = random::matrix(&d, 1, &mut rng);
            let f = lower_symbol(&a).expect("single mode");
            let g = lower_symbol_by_pairing(&a).expect("single mode");
            o.check(format!("k={k} formula vs pairing sample {i}"), f.max_abs_diff(&g), TOL);
        }
    }
    o
}

fn c8_bargmann() -> Outcome {
    let mut o = Outcome::new();
    for k in KS {
        o.report(&format!("k={k}"), &intertwining_report(&def(k), TOL));
    }
    o
}

fn c9_appendix() -> Outcome {
    let mut o = Outcome::new();
    for k in [4, 6, 8] {
        o.report(&format!("k={k}"), &appendix_identities(&def(k), TOL).expect("valid"));
    }
    o
}

fn c10_kfermionic() -> Outcome {
    let mut o = Outcome::new();
    for k in KS {
        let d = def(k);
        let r = check_kfermionic(&d, TOL);
        let expected_qf = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d.kprime() as f64);
        o.check(format!("k={k} q_F"), (r.q_f - expected_qf).norm(), 1e-15);
        o.report(&format!("k={k}"), &r.core);
        let best_a = r.branches.iter().map(|b| b.annihilators).fold(f64::INFINITY, f64::min);
        let best_c = r.branches.iter().map(|b| b.creators).fold(f64::INFINITY, f64::min);
        o.check(format!("k={k} type (iii) annihilator pair, best branch"), best_a, TOL);
        o.check(format!("k={k} type (iii) creator pair, best branch"), best_c, TOL);
    }
    o
}

fn c11_orthonormality() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(SEED + 11);
    for k in KS {
        let d = def(k);
        o.check(format!("k={k} (phi_n, phi_m)"), orthonormality_residual(&d).expect("valid"), TOL);
        for i in 0..SAMPLES {
            let v = random::pure_power_poly(&d, &mut rng);
            let n = pseudo_norm_sq(&v).expect("single mode");
            o.check(format!("k={k} pseudo-norm sample {i}"), nonneg_real_residual(n), TOL);
        }
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("resolution of unity", c1_resolution),
        ("Biedenharn-Macfarlane and cross-mode relations", c2_biedenharn_macfarlane),
        ("homomorphism and nilpotency", c3_homomorphism),
        ("hermitian pairing", c4_hermitian),
        ("symbol round trips", c5_round_trips),
        ("quaternion reproduction", c6_quaternions),
        ("lower-symbol identities", c7_lower_symbols),
        ("Fock-Bargmann intertwining", c8_bargmann),
        ("appendix identities", c9_appendix),
        ("k'-fermionic relations", c10_kfermionic),
        ("orthonormality and pseudo-norm", c11_orthonormality),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.notes.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {name}: {status} (max residual {:.3e}, {:.2}s)",
            i + 1,
            o.worst,
            start.elapsed().as_secs_f64()
        );
        for note in o.notes.iter().take(10) {
            println!("    {note}");
        }
        if !o.notes.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
