//! Regular polynomials `f(q) = sum q^n a_n` with coefficients on the right.
//!
//! Under coefficient convolution (the star product) these form an associative
//! real algebra. Evaluation is not multiplicative: `(f*g)(q)` equals
//! `f(q) g(f(q)^{-1} q f(q))`, which only reduces to `f(q) g(q)` when `f` has
//! real coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::tolerance;

/// Dense coefficient vector, index = power of `q`. Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "PolynomialJson", into = "PolynomialJson")]
pub struct RegularPolynomial {
    coeffs: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    coeffs: Vec<Quaternion>,
}

impl From<PolynomialJson> for RegularPolynomial {
    fn from(j: PolynomialJson) -> Self {
        RegularPolynomial::new(j.coeffs)
    }
}

impl From<RegularPolynomial> for PolynomialJson {
    fn from(p: RegularPolynomial) -> Self {
        PolynomialJson { coeffs: p.coeffs }
    }
}

impl RegularPolynomial {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last() == Some(&Quaternion::ZERO) {
            coeffs.pop();
        }
        RegularPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RegularPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Quaternion) -> Self {
        RegularPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        RegularPolynomial::constant(Quaternion::ONE)
    }

    /// The identity function `q`.
    pub fn identity() -> Self {
        RegularPolynomial::new(vec![Quaternion::ZERO, Quaternion::ONE])
    }

    /// `q * slope + offset`.
    pub fn linear(slope: Quaternion, offset: Quaternion) -> Self {
        RegularPolynomial::new(vec![offset, slope])
    }

    /// Real-coefficient polynomial.
    pub fn from_real(coeffs: &[f64]) -> Self {
        RegularPolynomial::new(coeffs.iter().map(|&r| Quaternion::real(r)).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// Coefficient of `q^n`, zero past the degree.
    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation `a_0 + q(a_1 + q(a_2 + ...))`.
    pub fn evaluate(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| a + q * acc)
    }

    /// Star product: `c_n = sum_k a_k b_{n-k}`.
    pub fn star(&self, other: &RegularPolynomial) -> RegularPolynomial {
        if self.is_zero() || other.is_zero() {
            return RegularPolynomial::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            for (m, &b) in other.coeffs.iter().enumerate() {
                out[k + m] += a * b;
            }
        }
        RegularPolynomial::new(out)
    }

    /// `f^{*n}`.
    pub fn star_pow(&self, n: u32) -> RegularPolynomial {
        (0..n).fold(RegularPolynomial::one(), |acc, _| acc.star(self))
    }

    /// `f^c(q) = sum q^n conj(a_n)`.
    pub fn regular_conjugate(&self) -> RegularPolynomial {
        RegularPolynomial::new(self.coeffs.iter().map(|a| a.conj()).collect())
    }

    /// `f^s = f * f^c`, projected onto real coefficients.
    pub fn symmetrization(&self) -> RegularPolynomial {
        self.symmetrization_with_residual().0
    }

    /// `f^s` together with the largest imaginary part discarded by the projection.
    pub fn symmetrization_with_residual(&self) -> (RegularPolynomial, f64) {
        let raw = self.star(&self.regular_conjugate());
        let residual = raw
            .coeffs
            .iter()
            .map(|c| c.im().norm())
            .fold(0.0, f64::max);
        let real = RegularPolynomial::new(raw.coeffs.iter().map(|c| Quaternion::real(c.w)).collect());
        (real, residual)
    }

    pub fn has_real_coefficients(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.im().norm() <= tol)
    }

    /// `c * f`: every coefficient multiplied by `c` on the left.
    pub fn left_scale(&self, c: Quaternion) -> RegularPolynomial {
        RegularPolynomial::new(self.coeffs.iter().map(|&a| c * a).collect())
    }

    /// `f * c`: every coefficient multiplied by `c` on the right.
    pub fn right_scale(&self, c: Quaternion) -> RegularPolynomial {
        RegularPolynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scale(&self, s: f64) -> RegularPolynomial {
        RegularPolynomial::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    /// The unique `R` with `f(q) - f(q0) = (q - q0) * R(q)`.
    ///
    /// Backward recurrence `b_{N-1} = a_N`, `b_{n-1} = a_n + q0 b_n`; the
    /// constant coefficient of `f` is never used, so no division is needed.
    pub fn remainder(&self, q0: Quaternion) -> RegularPolynomial {
        let n = self.coeffs.len();
        if n <= 1 {
            return RegularPolynomial::zero();
        }
        let mut b = vec![Quaternion::ZERO; n - 1];
        let mut carry = Quaternion::ZERO;
        for idx in (1..n).rev() {
            carry = self.coeffs[idx] + q0 * carry;
            b[idx - 1] = carry;
        }
        RegularPolynomial::new(b)
    }

    /// Coefficients `A_0..=A_{max_index}` of the expansion of `f` on the sphere
    /// through `q0`, by iterated remainders.
    pub fn spherical_expansion(&self, q0: Quaternion, max_index: usize) -> Result<SphericalExpansion> {
        if max_index > 0 && q0.is_real(tolerance::REAL_AXIS) {
            return Err(Error::DegenerateCenter(q0.to_string()));
        }
        let q0_bar = q0.conj();
        let mut coefficients = Vec::with_capacity(max_index + 1);
        let mut g = self.clone();
        loop {
            coefficients.push(g.evaluate(q0));
            if coefficients.len() > max_index {
                break;
            }
            let h = g.remainder(q0);
            coefficients.push(h.evaluate(q0_bar));
            if coefficients.len() > max_index {
                break;
            }
            g = h.remainder(q0_bar);
        }
        Ok(SphericalExpansion { center: q0, coefficients })
    }

    /// Termwise derivative `sum q^{n-1} n a_n`.
    pub fn cullen_derivative(&self) -> RegularPolynomial {
        RegularPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &a)| a * n as f64)
                .collect(),
        )
    }

    /// `(2 Im q)^{-1} (f(q) - f(conj q))`.
    pub fn spherical_derivative_at(&self, q: Quaternion) -> Result<Quaternion> {
        if q.is_real(tolerance::REAL_AXIS) {
            return Err(Error::RealPoint(q.to_string()));
        }
        let two_im = q.im() * 2.0;
        Ok(two_im.inverse()? * (self.evaluate(q) - self.evaluate(q.conj())))
    }

    /// Derivative of `f` at `q0` along `v`: `v A_1 + (q0 v - v conj(q0)) A_2`.
    pub fn directional_derivative(&self, q0: Quaternion, v: Quaternion) -> Result<Quaternion> {
        let exp = self.spherical_expansion(q0, 2)?;
        let (a1, a2) = (exp.coefficient(1), exp.coefficient(2));
        Ok(v * a1 + (q0 * v - v * q0.conj()) * a2)
    }

    /// `sum |a_n|`, an upper bound for `|f|` on the closed unit ball.
    pub fn coefficient_norm_sum(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }

    /// Largest coefficient difference.
    pub fn max_coeff_distance(&self, other: &RegularPolynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| self.coeff(i).distance(other.coeff(i)))
            .fold(0.0, f64::max)
    }

    /// Drops trailing coefficients of modulus at most `tol`.
    pub fn trimmed(&self, tol: f64) -> RegularPolynomial {
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= tol) {
            coeffs.pop();
        }
        RegularPolynomial { coeffs }
    }
}

impl Add for &RegularPolynomial {
    type Output = RegularPolynomial;
    fn add(self, o: &RegularPolynomial) -> RegularPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RegularPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RegularPolynomial {
    type Output = RegularPolynomial;
    fn sub(self, o: &RegularPolynomial) -> RegularPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RegularPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &RegularPolynomial {
    type Output = RegularPolynomial;
    fn neg(self) -> RegularPolynomial {
        RegularPolynomial::new(self.coeffs.iter().map(|&a| -a).collect())
    }
}

/// Star product.
impl Mul for &RegularPolynomial {
    type Output = RegularPolynomial;
    fn mul(self, o: &RegularPolynomial) -> RegularPolynomial {
        self.star(o)
    }
}

impl fmt::Display for RegularPolynomial {
    /// Descending powers, e.g. `q^2 + q*(-i-j) + k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (n, &a) in self.coeffs.iter().enumerate().rev() {
            if a == Quaternion::ZERO {
                continue;
            }
            let power = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            let components = a.to_array().iter().filter(|&&c| c != 0.0).count();
            let negative = components == 1 && a.to_array().iter().any(|&c| c < 0.0);
            let magnitude = if negative { -a } else { a };
            let body = if n == 0 {
                if components > 1 && !out.is_empty() {
                    format!("({magnitude})")
                } else {
                    magnitude.to_string()
                }
            } else if magnitude == Quaternion::ONE {
                power
            } else if components > 1 {
                format!("{power}*({magnitude})")
            } else {
                format!("{power}*{magnitude}")
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `f(q) = sum_n [(q-x0)^2 + y0^2]^n [A_{2n} + (q - q0) A_{2n+1}]` around the
/// sphere through `center = x0 + y0 I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalExpansion {
    pub center: Quaternion,
    pub coefficients: Vec<Quaternion>,
}

impl SphericalExpansion {
    /// `A_n`, zero past the stored truncation.
    pub fn coefficient(&self, n: usize) -> Quaternion {
        self.coefficients.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    /// Partial sum of the expansion over the stored coefficients.
    pub fn evaluate(&self, q: Quaternion) -> Quaternion {
        let x0 = self.center.re();
        let y0_sq = self.center.im().norm_sqr();
        let shifted = q - Quaternion::real(x0);
        let sphere_factor = shifted * shifted + Quaternion::real(y0_sq);
        let offset = q - self.center;
        let mut power = Quaternion::ONE;
        let mut acc = Quaternion::ZERO;
        for pair in self.coefficients.chunks(2) {
            let mut term = pair[0];
            if let Some(&odd) = pair.get(1) {
                term += offset * odd;
            }
            acc += power * term;
            power = power * sphere_factor;
        }
        acc
    }
}
