use num_complex::Complex64;

use super::coefficients::SymbolCoefficients;
use crate::error::{Error, Result};
use crate::pgalgebra::{Monomial, ParaPoly};
use crate::qnum::Deformation;
use crate::quantization::{quantize, FockOperator, Ordering};

/// One diagonal `p = t − s` of the linear map `f ↦ A_f`: the entries
/// `a_{n, n−p}` depend only on the `f_{s, s+p}`.
#[derive(Debug, Clone)]
struct DiagonalBlock {
    /// Matrix entries `(n, n − p)`, largest `n` first.
    rows: Vec<(usize, usize)>,
    /// Unknowns `(s, s + p)`, smallest `s` first.
    unknowns: Vec<(usize, usize)>,
    /// Lower triangular coefficient matrix, `m[i][j]` for `j <= i`.
    m: Vec<Vec<Complex64>>,
}

/// Inverts antinormal quantization in one mode. The coefficients are read
/// off quantized monomials, so the inverse is consistent with [`quantize`].
#[derive(Debug, Clone)]
pub struct UpperSymbolSolver {
    deformation: Deformation,
    blocks: Vec<(i64, DiagonalBlock)>,
}

impl UpperSymbolSolver {
    pub fn new(d: &Deformation) -> Self {
        let kp = d.kprime();
        let mut blocks = Vec::new();
        for p in -(kp as i64 - 1)..=(kp as i64 - 1) {
            let unknowns = SymbolCoefficients::diagonal(kp, p);
            let mut rows: Vec<(usize, usize)> = (0..kp)
                .filter_map(|n| {
                    let m = n as i64 - p;
                    (0..kp as i64).contains(&m).then_some((n, m as usize))
                })
                .collect();
            rows.reverse();
            let columns: Vec<FockOperator> = unknowns
                .iter()
                .map(|&(s, t)| {
                    let f = ParaPoly::monomial(*d, 1, Complex64::new(1.0, 0.0), Monomial::single(s, t))
                        .expect("powers below k'");
                    quantize(&f, Ordering::Antinormal).expect("single mode")
                })
                .collect();
            let m = rows
                .iter()
                .enumerate()
                .map(|(i, &(n, mm))| {
                    debug_assert!(columns[i + 1..].iter().all(|c| c.entry(n, mm).norm() == 0.0));
                    columns[..=i].iter().map(|c| c.entry(n, mm)).collect()
                })
                .collect();
            blocks.push((p, DiagonalBlock { rows, unknowns, m }));
        }
        UpperSymbolSolver {
            deformation: *d,
            blocks,
        }
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    /// Product of the pivots of diagonal `p`; never zero.
    pub fn determinant(&self, p: i64) -> Option<Complex64> {
        self.blocks
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, b)| b.m.iter().enumerate().map(|(i, r)| r[i]).product())
    }

    /// Solves each triangular block from the top row down.
    pub fn solve(&self, a: &FockOperator) -> Result<ParaPoly> {
        if a.modes() != 1 {
            return Err(Error::SingleModeOnly(a.modes()));
        }
        if *a.deformation() != self.deformation {
            return Err(Error::DeformationMismatch {
                left: self.deformation.k(),
                right: a.deformation().k(),
            });
        }
        let mut f = SymbolCoefficients::zeros(self.deformation);
        for (_, block) in &self.blocks {
            let mut solved: Vec<Complex64> = Vec::with_capacity(block.unknowns.len());
            for (i, &(n, m)) in block.rows.iter().enumerate() {
                let known: Complex64 = block.m[i][..i].iter().zip(&solved).map(|(c, x)| c * x).sum();
                solved.push((a.entry(n, m) - known) / block.m[i][i]);
            }
            for (&(s, t), x) in block.unknowns.iter().zip(solved) {
                f.set(s, t, x);
            }
        }
        Ok(f.to_poly())
    }
}

/// The unique `f` with `quantize(f, Antinormal) = A` (single mode).
pub fn upper_symbol(a: &FockOperator) -> Result<ParaPoly> {
    UpperSymbolSolver::new(a.deformation()).solve(a)
}
