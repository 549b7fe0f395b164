use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::word::{canonicalize_q, exchange_exponent, FactorWord, Generator};
use crate::error::{Error, Result};
use crate::qnum::Deformation;

/// Coefficients below this magnitude are dropped after every operation.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Canonically ordered word `θ₁^{a₁}⋯θ_d^{a_d} θ̄₁^{b₁}⋯θ̄_d^{b_d}`.
///
/// Stored as one vector `[a₁…a_d, b₁…b_d]`, which is also the canonical
/// generator order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    powers: Vec<usize>,
}

impl Monomial {
    pub fn new(theta: Vec<usize>, bar: Vec<usize>) -> Result<Self> {
        if theta.len() != bar.len() {
            return Err(Error::ModeMismatch {
                left: theta.len(),
                right: bar.len(),
            });
        }
        if theta.is_empty() {
            return Err(Error::NoModes);
        }
        let mut powers = theta;
        powers.extend(bar);
        Ok(Monomial { powers })
    }

    pub(crate) fn from_powers(powers: Vec<usize>, modes: usize) -> Self {
        debug_assert_eq!(powers.len(), 2 * modes);
        Monomial { powers }
    }

    pub fn one(modes: usize) -> Self {
        Monomial {
            powers: vec![0; 2 * modes],
        }
    }

    /// `θ^s θ̄^t` in a single mode.
    pub fn single(s: usize, t: usize) -> Self {
        Monomial { powers: vec![s, t] }
    }

    /// The top monomial `θ₁^{k'-1}⋯θ̄_d^{k'-1}` picked out by the Berezin integral.
    pub fn top(kprime: usize, modes: usize) -> Self {
        Monomial {
            powers: vec![kprime - 1; 2 * modes],
        }
    }

    pub fn modes(&self) -> usize {
        self.powers.len() / 2
    }

    pub fn theta(&self) -> &[usize] {
        &self.powers[..self.modes()]
    }

    pub fn bar(&self) -> &[usize] {
        &self.powers[self.modes()..]
    }

    pub fn total_degree(&self) -> usize {
        self.powers.iter().sum()
    }

    fn generators(&self) -> impl Iterator<Item = (Generator, usize)> + '_ {
        let modes = self.modes();
        self.powers.iter().enumerate().filter(|(_, &p)| p > 0).map(move |(i, &p)| {
            let g = if i < modes {
                Generator::theta(i + 1)
            } else {
                Generator::bar(i + 1 - modes)
            };
            (g, p)
        })
    }

    /// Algebra product of two canonical monomials: returns the canonical
    /// monomial and the exponent of `q_k` collected while merging, or `None`
    /// if a power overflows.
    pub(crate) fn product(&self, other: &Monomial, kprime: usize) -> Option<(i64, Monomial)> {
        let modes = self.modes();
        let mut powers = Vec::with_capacity(self.powers.len());
        for (a, b) in self.powers.iter().zip(&other.powers) {
            let p = a + b;
            if p >= kprime {
                return None;
            }
            powers.push(p);
        }
        // every generator of `other` that sorts before a generator of `self`
        // has to travel past it
        let mut exponent = 0i64;
        for (x, px) in self.generators() {
            for (y, py) in other.generators() {
                if x.key(modes) > y.key(modes) {
                    exponent += (px * py) as i64 * exchange_exponent(x, y);
                }
            }
        }
        Some((exponent, Monomial { powers }))
    }

    /// Phase-free product (exponent addition).
    pub(crate) fn prescription_product(&self, other: &Monomial, kprime: usize) -> Option<Monomial> {
        let mut powers = Vec::with_capacity(self.powers.len());
        for (a, b) in self.powers.iter().zip(&other.powers) {
            let p = a + b;
            if p >= kprime {
                return None;
            }
            powers.push(p);
        }
        Some(Monomial { powers })
    }
}

/// A paragrassmann polynomial `Σ v_{m m̄} θ^m θ̄^{m̄}` in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct ParaPoly {
    deformation: Deformation,
    modes: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl ParaPoly {
    pub fn zero(deformation: Deformation, modes: usize) -> Self {
        ParaPoly {
            deformation,
            modes,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(deformation: Deformation, modes: usize, c: Complex64) -> Self {
        let mut p = ParaPoly::zero(deformation, modes);
        p.accumulate(Monomial::one(modes), c);
        p.prune();
        p
    }

    pub fn one(deformation: Deformation, modes: usize) -> Self {
        ParaPoly::constant(deformation, modes, Complex64::new(1.0, 0.0))
    }

    pub fn generator(deformation: Deformation, modes: usize, g: Generator) -> Result<Self> {
        let w = FactorWord::new(Complex64::new(1.0, 0.0), vec![g]);
        canonicalize_q(&w, &deformation, modes)
    }

    pub fn monomial(deformation: Deformation, modes: usize, c: Complex64, m: Monomial) -> Result<Self> {
        let mut p = ParaPoly::zero(deformation, modes);
        p.check_monomial(&m)?;
        p.accumulate(m, c);
        p.prune();
        Ok(p)
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(deformation: Deformation, modes: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut p = ParaPoly::zero(deformation, modes);
        for (m, c) in terms {
            p.check_monomial(&m)?;
            p.accumulate(m, c);
        }
        p.prune();
        Ok(p)
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.modes() != self.modes {
            return Err(Error::ModeMismatch {
                left: self.modes,
                right: m.modes(),
            });
        }
        let kp = self.deformation.kprime();
        if let Some(&p) = m.powers.iter().find(|&&p| p >= kp) {
            return Err(Error::OutOfRange {
                index: p,
                max: kp - 1,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, m: Monomial, c: Complex64) {
        *self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    /// Single-mode coefficient of `θ^s θ̄^t`.
    pub fn coeff_st(&self, s: usize, t: usize) -> Complex64 {
        self.coeff(&Monomial::single(s, t))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check_compatible(&self, other: &ParaPoly) -> Result<()> {
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

    pub fn try_add(&self, other: &ParaPoly) -> Result<ParaPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> ParaPoly {
        let mut out = ParaPoly::zero(self.deformation, self.modes);
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out.prune();
        out
    }

    /// Algebra product with q-commutation phases and nilpotent truncation.
    pub fn multiply(&self, other: &ParaPoly) -> Result<ParaPoly> {
        self.check_compatible(other)?;
        let d = &self.deformation;
        let mut out = ParaPoly::zero(self.deformation, self.modes);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((e, m)) = m1.product(m2, d.kprime()) {
                    out.accumulate(m, c1 * c2 * d.qk_pow(e));
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> ParaPoly {
        let mut acc = ParaPoly::one(self.deformation, self.modes);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same algebra");
        }
        acc
    }

    /// Antilinear involution: conjugates coefficients, exchanges `θ_i ↔ θ̄_i`,
    /// reverses the factor order and re-canonicalizes with q-phases.
    pub fn conjugate(&self) -> ParaPoly {
        let mut out = ParaPoly::zero(self.deformation, self.modes);
        for (m, c) in &self.terms {
            let w = FactorWord::from_monomial(*c, m).adjoint();
            let p = canonicalize_q(&w, &self.deformation, self.modes).expect("modes in range");
            for (m2, c2) in p.terms {
                out.accumulate(m2, c2);
            }
        }
        out.prune();
        out
    }

    /// Largest coefficientwise distance; `∞` when the algebras differ.
    pub fn max_abs_diff(&self, other: &ParaPoly) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for (m, c) in &self.terms {
            worst = worst.max((c - other.coeff(m)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn is_single_mode(&self) -> bool {
        self.modes == 1
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            k: self.deformation.k(),
            d: self.modes,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    theta: m.theta().to_vec(),
                    bar: m.bar().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data")
    }

    pub fn from_json_value(v: &PolyJson) -> Result<ParaPoly> {
        let d = Deformation::new(v.k)?;
        if v.d == 0 {
            return Err(Error::NoModes);
        }
        let mut terms = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            if t.theta.len() != v.d || t.bar.len() != v.d {
                return Err(Error::Invalid(format!(
                    "term has {} / {} powers, expected {}",
                    t.theta.len(),
                    t.bar.len(),
                    v.d
                )));
            }
            let m = Monomial::new(t.theta.clone(), t.bar.clone())?;
            terms.push((m, Complex64::new(t.re, t.im)));
        }
        ParaPoly::from_terms(d, v.d, terms)
    }

    pub fn from_json(s: &str) -> Result<ParaPoly> {
        let v: PolyJson = serde_json::from_str(s)?;
        ParaPoly::from_json_value(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: u32,
    pub d: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub theta: Vec<usize>,
    pub bar: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

impl Add for &ParaPoly {
    type Output = ParaPoly;

    fn add(self, rhs: &ParaPoly) -> ParaPoly {
        self.try_add(rhs).expect("incompatible paragrassmann algebras")
    }
}

impl Sub for &ParaPoly {
    type Output = ParaPoly;

    fn sub(self, rhs: &ParaPoly) -> ParaPoly {
        self + &(-rhs)
    }
}

impl Neg for &ParaPoly {
    type Output = ParaPoly;

    fn neg(self) -> ParaPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &ParaPoly {
    type Output = ParaPoly;

    fn mul(self, rhs: &ParaPoly) -> ParaPoly {
        self.multiply(rhs).expect("incompatible paragrassmann algebras")
    }
}

impl Mul<Complex64> for &ParaPoly {
    type Output = ParaPoly;

    fn mul(self, rhs: Complex64) -> ParaPoly {
        self.scale(rhs)
    }
}

fn write_generator(f: &mut fmt::Formatter<'_>, stem: &str, mode: usize, modes: usize, p: usize) -> fmt::Result {
    if modes == 1 {
        write!(f, "{stem}")?;
    } else {
        write!(f, "{stem}{mode}")?;
    }
    if p > 1 {
        write!(f, "^{p}")?;
    }
    Ok(())
}

/// Prints in the expression syntax accepted by the command-line parser, e.g.
/// `2 - th*bth + (0.5+1i)*th1^2*bth2`. Coefficients use the shortest exact
/// decimal representation, so printing and re-parsing is lossless.
impl fmt::Display for ParaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let is_unit = m.total_degree() == 0;
            let negative_real = c.im == 0.0 && c.re.is_sign_negative();
            match (idx, negative_real) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut need_star = false;
            if c.im == 0.0 {
                let a = c.re.abs();
                if a != 1.0 || is_unit {
                    write!(f, "{a}")?;
                    need_star = true;
                }
            } else {
                let sign = if c.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", c.re, sign, c.im.abs())?;
                need_star = true;
            }
            for (g, p) in m.generators() {
                if need_star {
                    write!(f, "*")?;
                }
                let stem = if g.barred { "bth" } else { "th" };
                write_generator(f, stem, g.mode, self.modes, p)?;
                need_star = true;
            }
        }
        Ok(())
    }
}
