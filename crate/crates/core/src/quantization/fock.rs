use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{self, BASIS_ORDER};
use crate::error::{Error, Result};
use crate::qnum::Deformation;

/// Dense operator on `(C^{k'})^{⊗d}` in the flattened tensor Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    deformation: Deformation,
    modes: usize,
    matrix: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn zeros(deformation: Deformation, modes: usize) -> Self {
        let dim = basis::dimension(deformation.kprime(), modes);
        FockOperator {
            deformation,
            modes,
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(deformation: Deformation, modes: usize) -> Self {
        let dim = basis::dimension(deformation.kprime(), modes);
        FockOperator {
            deformation,
            modes,
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_matrix(deformation: Deformation, modes: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = basis::dimension(deformation.kprime(), modes);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Invalid(format!(
                "expected {dim}x{dim} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(FockOperator {
            deformation,
            modes,
            matrix,
        })
    }

    /// Diagonal operator with entries `f(n₁,…,n_d)`.
    pub fn diagonal(deformation: Deformation, modes: usize, f: impl Fn(&[usize]) -> Complex64) -> Self {
        let mut op = FockOperator::zeros(deformation, modes);
        for (i, idx) in basis::multi_indices(deformation.kprime(), modes).enumerate() {
            op.matrix[(i, i)] = f(&idx);
        }
        op
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<Complex64> {
        &mut self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            matrix: self.matrix.adjoint(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: Complex64) -> FockOperator {
        FockOperator {
            matrix: &self.matrix * c,
            ..self.clone()
        }
    }

    pub fn pow(&self, n: u32) -> FockOperator {
        let mut acc = FockOperator::identity(self.deformation, self.modes);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &FockOperator) -> FockOperator {
        &(self * other) - &(other * self)
    }

    pub fn check_compatible(&self, other: &FockOperator) -> Result<()> {
        if self.deformation != other.deformation {
            return Err(Error::DeformationMismatch {
                left: self.deformation.k(),
                right: other.deformation.k(),
            });
        }
        if self.modes != other.modes {
            return Err(Error::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        Ok(())
    }

    /// Largest entrywise distance.
    pub fn max_abs_diff(&self, other: &FockOperator) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            k: self.deformation.k(),
            d: self.modes,
            dim: self.dim(),
            basis: Some(BASIS_ORDER.to_string()),
            rows: self
                .matrix
                .row_iter()
                .map(|r| r.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data")
    }

    pub fn from_json_value(v: &MatrixJson) -> Result<FockOperator> {
        let d = Deformation::new(v.k)?;
        if v.d == 0 {
            return Err(Error::NoModes);
        }
        let dim = basis::dimension(d.kprime(), v.d);
        if v.dim != dim || v.rows.len() != dim || v.rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid(format!(
                "matrix for k = {}, d = {} must be {dim}x{dim}",
                v.k, v.d
            )));
        }
        let m = DMatrix::from_fn(dim, dim, |i, j| {
            let z = &v.rows[i][j];
            Complex64::new(z.re, z.im)
        });
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("non-finite matrix entry".into()));
        }
        FockOperator::from_matrix(d, v.d, m)
    }

    pub fn from_json(s: &str) -> Result<FockOperator> {
        let v: MatrixJson = serde_json::from_str(s)?;
        FockOperator::from_json_value(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub k: u32,
    pub d: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub rows: Vec<Vec<ComplexJson>>,
}

impl<'a> Mul for &'a FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: &'a FockOperator) -> FockOperator {
        self.check_compatible(rhs).expect("incompatible Fock spaces");
        FockOperator {
            matrix: &self.matrix * &rhs.matrix,
            ..self.clone()
        }
    }
}

impl<'a> Add for &'a FockOperator {
    type Output = FockOperator;

    fn add(self, rhs: &'a FockOperator) -> FockOperator {
        self.check_compatible(rhs).expect("incompatible Fock spaces");
        FockOperator {
            matrix: &self.matrix + &rhs.matrix,
            ..self.clone()
        }
    }
}

impl<'a> Sub for &'a FockOperator {
    type Output = FockOperator;

    fn sub(self, rhs: &'a FockOperator) -> FockOperator {
        self.check_compatible(rhs).expect("incompatible Fock spaces");
        FockOperator {
            matrix: &self.matrix - &rhs.matrix,
            ..self.clone()
        }
    }
}

impl Mul<Complex64> for &FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: Complex64) -> FockOperator {
        self.scale(rhs)
    }
}

fn fmt_entry(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (true, true) => "0".into(),
        (false, true) => format!("{re:.6}"),
        (true, false) => format!("{im:.6}i"),
        (false, false) => format!("{re:.6}{im:+.6}i"),
    }
}

impl fmt::Display for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .matrix
            .row_iter()
            .map(|r| r.iter().map(|z| fmt_entry(*z)).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
