use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::upper::UpperSymbolSolver;
use crate::error::Result;
use crate::pgalgebra::{Monomial, ParaPoly};
use crate::qnum::{Deformation, DEFAULT_TOLERANCE};
use crate::quantization::{quantize, FockOperator, Ordering, VerificationReport};
use crate::random;

/// `f ⋆ g`, the symbol of `A_f A_g` (single mode).
pub fn moyal_star(f: &ParaPoly, g: &ParaPoly) -> Result<ParaPoly> {
    f.check_compatible(g)?;
    let a = &quantize(f, Ordering::Antinormal)? * &quantize(g, Ordering::Antinormal)?;
    UpperSymbolSolver::new(f.deformation()).solve(&a)
}

/// Star product with a precomputed solver, for repeated products.
pub fn moyal_star_with(solver: &UpperSymbolSolver, f: &ParaPoly, g: &ParaPoly) -> Result<ParaPoly> {
    f.check_compatible(g)?;
    let a = &quantize(f, Ordering::Antinormal)? * &quantize(g, Ordering::Antinormal)?;
    solver.solve(&a)
}

/// The four-coefficient product rule at `k = 4`, written out term by term.
pub fn moyal_star_k4(f: &ParaPoly, g: &ParaPoly) -> Result<ParaPoly> {
    f.check_compatible(g)?;
    let fc = |s, t| f.coeff_st(s, t);
    let gc = |s, t| g.coeff_st(s, t);
    let terms = [
        (Monomial::single(0, 0), fc(0, 1) * gc(1, 0) + fc(0, 0) * gc(0, 0)),
        (Monomial::single(1, 0), (fc(0, 0) + fc(1, 1)) * gc(1, 0) + fc(1, 0) * gc(0, 0)),
        (Monomial::single(0, 1), fc(0, 1) * (gc(0, 0) + gc(1, 1)) + fc(0, 0) * gc(0, 1)),
        (
            Monomial::single(1, 1),
            fc(0, 0) * gc(1, 1) + fc(1, 1) * (gc(0, 0) + gc(1, 1)) + fc(1, 0) * gc(0, 1) - fc(0, 1) * gc(1, 0),
        ),
    ];
    ParaPoly::from_terms(*f.deformation(), 1, terms)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `z₀ + z₁(iσ¹) + z₂(−iσ²) + z₃(iσ³)`.
pub fn quaternion_matrix(z: [Complex64; 4]) -> DMatrix<Complex64> {
    let i = c(0.0, 1.0);
    DMatrix::from_row_slice(2, 2, &[z[0] + i * z[3], i * z[1] - z[2], i * z[1] + z[2], z[0] - i * z[3]])
}

/// `z₀ − iz₃ + (iz₁ − z₂)θ + (iz₁ + z₂)θ̄ + 2iz₃ θθ̄`.
pub fn quaternion_symbol(d: &Deformation, z: [Complex64; 4]) -> ParaPoly {
    let i = c(0.0, 1.0);
    let terms = [
        (Monomial::single(0, 0), z[0] - i * z[3]),
        (Monomial::single(1, 0), i * z[1] - z[2]),
        (Monomial::single(0, 1), i * z[1] + z[2]),
        (Monomial::single(1, 1), 2.0 * i * z[3]),
    ];
    ParaPoly::from_terms(*d, 1, terms).expect("k = 4 powers")
}

/// Complex quaternion product with `IJ = K`.
pub fn quaternion_product(z: [Complex64; 4], w: [Complex64; 4]) -> [Complex64; 4] {
    let (z0, zv) = (z[0], [z[1], z[2], z[3]]);
    let (w0, wv) = (w[0], [w[1], w[2], w[3]]);
    let dot = zv[0] * wv[0] + zv[1] * wv[1] + zv[2] * wv[2];
    let cross = [
        zv[1] * wv[2] - zv[2] * wv[1],
        zv[2] * wv[0] - zv[0] * wv[2],
        zv[0] * wv[1] - zv[1] * wv[0],
    ];
    let mut x = [z0 * w0 - dot; 4];
    for j in 0..3 {
        x[j + 1] = z0 * wv[j] + w0 * zv[j] + cross[j];
    }
    x
}

fn random_quaternion<R: Rng>(rng: &mut R) -> [Complex64; 4] {
    [random::complex(rng), random::complex(rng), random::complex(rng), random::complex(rng)]
}

pub fn quaternion_demo() -> VerificationReport {
    quaternion_demo_with(0, 100, DEFAULT_TOLERANCE)
}

/// Rebuilds the quaternion units as `k = 4` symbols and checks their star
/// products, then tests the product law on `samples` random pairs.
pub fn quaternion_demo_with(seed: u64, samples: usize, tolerance: f64) -> VerificationReport {
    let d = Deformation::new(4).expect("k = 4");
    let solver = UpperSymbolSolver::new(&d);
    let mut report = VerificationReport::new(tolerance);
    let zero = c(0.0, 0.0);
    let unit = |j: usize| {
        let mut z = [zero; 4];
        z[j] = c(1.0, 0.0);
        z
    };
    let symbol_of = |m: DMatrix<Complex64>| {
        solver
            .solve(&FockOperator::from_matrix(d, 1, m).expect("2x2"))
            .expect("single mode")
    };
    let star = |f: &ParaPoly, g: &ParaPoly| moyal_star_with(&solver, f, g).expect("same algebra");
    let poly = |terms: &[((usize, usize), Complex64)]| {
        ParaPoly::from_terms(d, 1, terms.iter().map(|&((s, t), v)| (Monomial::single(s, t), v))).expect("k = 4")
    };
    let i = c(0.0, 1.0);

    let qi = symbol_of(quaternion_matrix(unit(1)));
    let qj = symbol_of(quaternion_matrix(unit(2)));
    let qk = symbol_of(quaternion_matrix(unit(3)));
    report.record(
        "symbol(i sigma1) = I = i th + i bth",
        qi.max_abs_diff(&poly(&[((1, 0), i), ((0, 1), i)])),
    );
    report.record(
        "symbol(-i sigma2) = J = -th + bth",
        qj.max_abs_diff(&poly(&[((1, 0), c(-1.0, 0.0)), ((0, 1), c(1.0, 0.0))])),
    );
    report.record(
        "symbol(i sigma3) = K = -i + 2i th*bth",
        qk.max_abs_diff(&poly(&[((0, 0), -i), ((1, 1), 2.0 * i)])),
    );

    let minus_one = ParaPoly::constant(d, 1, c(-1.0, 0.0));
    report.record("I*I = -1", star(&qi, &qi).max_abs_diff(&minus_one));
    report.record("J*J = -1", star(&qj, &qj).max_abs_diff(&minus_one));
    report.record("K*K = -1", star(&qk, &qk).max_abs_diff(&minus_one));
    report.record("I*J = K", star(&qi, &qj).max_abs_diff(&qk));
    report.record("J*I = -K", star(&qj, &qi).max_abs_diff(&-&qk));

    let th = poly(&[((1, 0), c(1.0, 0.0))]);
    let bth = poly(&[((0, 1), c(1.0, 0.0))]);
    let zero_poly = ParaPoly::zero(d, 1);
    report.record("th*th = 0", star(&th, &th).max_abs_diff(&zero_poly));
    report.record("bth*bth = 0", star(&bth, &bth).max_abs_diff(&zero_poly));

    let mut rng = random::rng(seed);
    let (mut law, mut symbol, mut expansion, mut formula) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let z = random_quaternion(&mut rng);
        let w = random_quaternion(&mut rng);
        let zs = symbol_of(quaternion_matrix(z));
        let ws = symbol_of(quaternion_matrix(w));
        let product = star(&zs, &ws);
        law = law.max(product.max_abs_diff(&quaternion_symbol(&d, quaternion_product(z, w))));
        symbol = symbol.max(zs.max_abs_diff(&quaternion_symbol(&d, z)));
        let combo = &(&(&ParaPoly::constant(d, 1, z[0]) + &qi.scale(z[1])) + &qj.scale(z[2])) + &qk.scale(z[3]);
        expansion = expansion.max(zs.max_abs_diff(&combo));
        formula = formula.max(product.max_abs_diff(&moyal_star_k4(&zs, &ws).expect("same algebra")));
    }
    report.record(
        format!("product law x0 = z0 w0 - z.w, x = z0 w + w0 z + z x w ({samples} random pairs)"),
        law,
    );
    report.record(
        format!("symbol z0 - i z3 + (i z1 - z2) th + (i z1 + z2) bth + 2i z3 th*bth ({samples} random)"),
        symbol,
    );
    report.record(format!("symbol = z0 + z1 I + z2 J + z3 K ({samples} random)"), expansion);
    report.record(format!("k = 4 star product coefficient formula ({samples} random pairs)"), formula);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_passes() {
        let r = quaternion_demo();
        assert!(r.all_pass(), "{r}");
        assert!(r.to_string().contains("I*I = -1: pass"));
    }

    #[test]
    fn unit_is_neutral_and_star_associates() {
        let mut rng = random::rng(2);
        for k in [4, 6, 8] {
            let d = Deformation::new(k).unwrap();
            let f = random::poly(&d, 1, &mut rng);
            let g = random::poly(&d, 1, &mut rng);
            let h = random::poly(&d, 1, &mut rng);
            let one = ParaPoly::one(d, 1);
            assert!(moyal_star(&one, &f).unwrap().max_abs_diff(&f) < 1e-10);
            assert!(moyal_star(&f, &one).unwrap().max_abs_diff(&f) < 1e-10);
            let left = moyal_star(&moyal_star(&f, &g).unwrap(), &h).unwrap();
            let right = moyal_star(&f, &moyal_star(&g, &h).unwrap()).unwrap();
            assert!(left.max_abs_diff(&right) < 1e-9, "k={k}");
        }
    }

    #[test]
    fn quaternion_product_is_standard() {
        let e = |j: usize| {
            let mut z = [c(0.0, 0.0); 4];
            z[j] = c(1.0, 0.0);
            z
        };
        assert_eq!(quaternion_product(e(1), e(2)), e(3));
        assert_eq!(quaternion_product(e(2), e(3)), e(1));
        assert_eq!(quaternion_product(e(3), e(1)), e(2));
        let m = quaternion_matrix(e(1)) * quaternion_matrix(e(2));
        assert_eq!(m, quaternion_matrix(e(3)));
    }
}
