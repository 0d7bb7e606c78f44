//! 2x2 quaternionic matrices and regular fractional transformations.
//!
//! A matrix is stored with the entry layout
//!
//! ```text
//! A = [ a  c ]
//!     [ b  d ]
//! ```
//!
//! so that `F_A(q) = (qc + d)^{-*} * (qa + b)`. The right action on quotients is
//! `f.A = (fc + d)^{-*} * (fa + b)` and the left action of `A` (written with the
//! transposed matrix) is `(a*f + b) * (c*f + d)^{-*}`.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rational::{self, RegularQuotient};
use crate::series::RegularPolynomial;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuaternionMatrix2 {
    pub a: Quaternion,
    pub c: Quaternion,
    pub b: Quaternion,
    pub d: Quaternion,
}

impl QuaternionMatrix2 {
    /// Entries in reading order of the first row (`a`, `c`) then the second (`b`, `d`).
    pub const fn from_rows(a: Quaternion, c: Quaternion, b: Quaternion, d: Quaternion) -> Self {
        QuaternionMatrix2 { a, c, b, d }
    }

    pub const fn identity() -> Self {
        QuaternionMatrix2::scalar(Quaternion::ONE)
    }

    /// `c * Id`.
    pub const fn scalar(c: Quaternion) -> Self {
        QuaternionMatrix2 { a: c, c: Quaternion::ZERO, b: Quaternion::ZERO, d: c }
    }

    /// `H = diag(1, -1)`.
    pub const fn h() -> Self {
        QuaternionMatrix2 {
            a: Quaternion::ONE,
            c: Quaternion::ZERO,
            b: Quaternion::ZERO,
            d: Quaternion::real(-1.0),
        }
    }

    pub fn entries(&self) -> [Quaternion; 4] {
        [self.a, self.c, self.b, self.d]
    }

    /// Entrywise conjugate `A-bar`.
    pub fn conj_entries(&self) -> Self {
        QuaternionMatrix2 { a: self.a.conj(), c: self.c.conj(), b: self.b.conj(), d: self.d.conj() }
    }

    pub fn transpose(&self) -> Self {
        QuaternionMatrix2 { a: self.a, c: self.b, b: self.c, d: self.d }
    }

    /// `conj(A)^t`.
    pub fn conj_transpose(&self) -> Self {
        self.conj_entries().transpose()
    }

    /// `lambda * A`, every entry multiplied on the left.
    pub fn left_scale(&self, lambda: Quaternion) -> Self {
        QuaternionMatrix2 { a: lambda * self.a, c: lambda * self.c, b: lambda * self.b, d: lambda * self.d }
    }

    pub fn max_entry_distance(&self, other: &QuaternionMatrix2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| x.distance(y))
            .fold(0.0, f64::max)
    }

    fn entry_scale(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Dieudonne determinant: `|a| |d - b a^{-1} c|`, or `|b| |c|` when `a = 0`.
    pub fn dieudonne_det(&self) -> f64 {
        match self.a.inverse() {
            Ok(a_inv) if self.a != Quaternion::ZERO => self.a.norm() * (self.d - self.b * a_inv * self.c).norm(),
            _ => self.b.norm() * self.c.norm(),
        }
    }

    fn ensure_invertible(&self) -> Result<()> {
        let det = self.dieudonne_det();
        let scale = self.entry_scale();
        if !(det > 1e-12 * scale * scale) || !det.is_finite() {
            return Err(Error::SingularMatrix(det));
        }
        Ok(())
    }

    /// Largest entry of `conj(A)^t H A - H`.
    pub fn sp11_defect(&self) -> f64 {
        let h = QuaternionMatrix2::h();
        (self.conj_transpose() * h * *self).max_entry_distance(&h)
    }

    /// `conj(A)^t H A = H` entrywise within `tol`.
    pub fn is_sp11(&self, tol: f64) -> bool {
        self.sp11_defect() <= tol
    }

    /// `a, d` real and `c = conj(b)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.a.is_real(tol) && self.d.is_real(tol) && self.c.distance(self.b.conj()) <= tol
    }
}

impl Mul for QuaternionMatrix2 {
    type Output = QuaternionMatrix2;
    fn mul(self, o: QuaternionMatrix2) -> QuaternionMatrix2 {
        QuaternionMatrix2 {
            a: self.a * o.a + self.c * o.b,
            c: self.a * o.c + self.c * o.d,
            b: self.b * o.a + self.d * o.b,
            d: self.b * o.c + self.d * o.d,
        }
    }
}

/// `F_A(q) = (qc + d)^{-*} * (qa + b)`.
pub fn regular_fractional(m: &QuaternionMatrix2) -> Result<RegularQuotient> {
    m.ensure_invertible()?;
    RegularQuotient::left(RegularPolynomial::linear(m.c, m.d), RegularPolynomial::linear(m.a, m.b))
}

fn nonvanishing(p: RegularPolynomial, scale: f64) -> Result<RegularPolynomial> {
    let trimmed = p.trimmed(1e-13 * scale.max(f64::MIN_POSITIVE));
    if trimmed.is_zero() {
        Err(Error::DegenerateComposite)
    } else {
        Ok(trimmed)
    }
}

/// `f.A = (fc + d)^{-*} * (fa + b)`.
///
/// Writing `f = F^{-*} * G` the result is `(Gc + Fd)^{-*} * (Ga + Fb)`.
pub fn right_action(f: &RegularQuotient, m: &QuaternionMatrix2) -> Result<RegularQuotient> {
    m.ensure_invertible()?;
    let left = f.to_left();
    let (den, num) = (left.den(), left.num());
    let scale = (num.coefficient_norm_sum() + den.coefficient_norm_sum()) * m.entry_scale();
    let new_den = &num.right_scale(m.c) + &den.right_scale(m.d);
    let new_num = &num.right_scale(m.a) + &den.right_scale(m.b);
    RegularQuotient::left(nonvanishing(new_den, scale)?, new_num)
}

/// Left action `(a*f + b) * (c*f + d)^{-*}` of the transposed matrix.
///
/// Writing `f = G * F^{-*}` the result is `(aG + bF) * (cG + dF)^{-*}`.
pub fn left_action(m: &QuaternionMatrix2, f: &RegularQuotient) -> Result<RegularQuotient> {
    m.ensure_invertible()?;
    let right = f.to_right();
    let (den, num) = (right.den(), right.num());
    let scale = (num.coefficient_norm_sum() + den.coefficient_norm_sum()) * m.entry_scale();
    let new_num = &num.left_scale(m.a) + &den.left_scale(m.b);
    let new_den = &num.left_scale(m.c) + &den.left_scale(m.d);
    RegularQuotient::right(new_num, nonvanishing(new_den, scale)?)
}

/// Deterministic scatter of points in the ball of radius 0.9, used to compare
/// two quotients pointwise.
pub fn comparison_grid(count: usize) -> Vec<Quaternion> {
    let golden = 0.618_033_988_749_894_9_f64;
    (0..count)
        .map(|n| {
            let t = n as f64 + 1.0;
            let v = Quaternion::new(
                (t * golden).fract() * 2.0 - 1.0,
                (t * golden * golden).fract() * 2.0 - 1.0,
                (t * 0.754_877_666).fract() * 2.0 - 1.0,
                (t * 0.569_840_291).fract() * 2.0 - 1.0,
            );
            let r = 0.9 * ((t * 0.445_041_867).fract()).powf(0.25);
            if v.norm() == 0.0 {
                Quaternion::ZERO
            } else {
                v * (r / v.norm())
            }
        })
        .collect()
}

/// Largest relative pointwise deviation between two quotients on `points`,
/// skipping points that are poles of either.
pub fn max_pointwise_deviation(f: &RegularQuotient, g: &RegularQuotient, points: &[Quaternion]) -> (f64, usize) {
    let (ef, eg) = (f.evaluator(), g.evaluator());
    let mut worst = 0.0_f64;
    let mut compared = 0;
    for &p in points {
        if let (Ok(x), Ok(y)) = (ef.evaluate(p), eg.evaluate(p)) {
            let scale = 1.0_f64.max(x.norm()).max(y.norm());
            worst = worst.max(x.distance(y) / scale);
            compared += 1;
        }
    }
    (worst, compared)
}

/// For Hermitian `A`, checks `f.A = (a*f + b) * (conj(b)*f + d)^{-*}` pointwise.
pub fn hermitian_coincidence_check(f: &RegularQuotient, m: &QuaternionMatrix2) -> Result<bool> {
    if !m.is_hermitian(tolerance::IDENTITY * (1.0 + m.entry_scale())) {
        return Err(Error::NotHermitian);
    }
    let right = right_action(f, m)?;
    let left = left_action(m, f)?;
    let (worst, compared) = max_pointwise_deviation(&right, &left, &comparison_grid(50));
    Ok(compared > 0 && worst <= 1e-10)
}

/// Swaps `(q - p_bar) * (q alpha + beta) = (q gamma + delta) * (q - p_tilde)`
/// with `p_tilde` on the sphere of `p`; returns `(gamma, delta, p_tilde)`.
fn swap_left_factor(p: Quaternion, alpha: Quaternion, beta: Quaternion) -> Result<(Quaternion, Quaternion, Quaternion)> {
    let s = beta + p * alpha;
    let scale = beta.norm() + p.norm() * alpha.norm();
    if s.norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateSwap);
    }
    let p_tilde = s.inverse()? * (p.conj() * beta + alpha * p.norm_sqr());
    let delta = beta - p.conj() * alpha + alpha * p_tilde;
    Ok((alpha, delta, p_tilde))
}

/// Mirror of [`swap_left_factor`]:
/// `(q alpha + beta) * (q - p_bar) = (q - p_tilde) * (q gamma + delta)`.
fn swap_right_factor(p: Quaternion, alpha: Quaternion, beta: Quaternion) -> Result<(Quaternion, Quaternion, Quaternion)> {
    let s = beta + alpha * p;
    let scale = beta.norm() + p.norm() * alpha.norm();
    if s.norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateSwap);
    }
    let p_tilde = (beta * p.conj() + alpha * p.norm_sqr()) * s.inverse()?;
    let delta = beta - alpha * p.conj() + p_tilde * alpha;
    Ok((alpha, delta, p_tilde))
}

fn is_negligible(x: Quaternion, m: &QuaternionMatrix2) -> bool {
    x.norm() <= 1e-14 * m.entry_scale()
}

/// Returns `C` with `left_action(C, id) = F_A` pointwise.
pub fn left_right_convert(m: &QuaternionMatrix2) -> Result<QuaternionMatrix2> {
    m.ensure_invertible()?;
    if is_negligible(m.c, m) {
        let d_inv = m.d.inverse()?;
        return Ok(QuaternionMatrix2::from_rows(d_inv * m.a, Quaternion::ZERO, d_inv * m.b, Quaternion::ONE));
    }
    let c_inv = m.c.inverse()?;
    let (alpha, beta, p) = (c_inv * m.a, c_inv * m.b, -(c_inv * m.d));
    let (gamma, delta, p_tilde) = swap_left_factor(p, alpha, beta)?;
    Ok(QuaternionMatrix2::from_rows(gamma, Quaternion::ONE, delta, -p_tilde.conj()))
}

/// Returns `A` with `F_A = left_action(C, id)` pointwise.
pub fn right_left_convert(m: &QuaternionMatrix2) -> Result<QuaternionMatrix2> {
    m.ensure_invertible()?;
    if is_negligible(m.c, m) {
        let d_inv = m.d.inverse()?;
        return Ok(QuaternionMatrix2::from_rows(m.a * d_inv, Quaternion::ZERO, m.b * d_inv, Quaternion::ONE));
    }
    let c_inv = m.c.inverse()?;
    let (alpha, beta, p) = (m.a * c_inv, m.b * c_inv, -(m.d * c_inv));
    let (gamma, delta, p_tilde) = swap_right_factor(p, alpha, beta)?;
    Ok(QuaternionMatrix2::from_rows(gamma, Quaternion::ONE, delta, -p_tilde.conj()))
}

/// `(q0, u)` identifying `M_{q0} u = (1 - q conj(q0))^{-*} * (q - q0) u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusNormalForm {
    pub q0: Quaternion,
    pub u: Quaternion,
}

impl MoebiusNormalForm {
    pub fn new(q0: Quaternion, u: Quaternion) -> Result<Self> {
        if !(q0.norm() < 1.0) {
            return Err(Error::OutsideBall(q0.to_string()));
        }
        if !((u.norm() - 1.0).abs() <= tolerance::SP11) {
            return Err(Error::InvalidParameter(format!("|u| must be 1, got {}", u.norm())));
        }
        Ok(MoebiusNormalForm { q0, u })
    }

    /// Left quotient `(1 - q conj(q0))^{-*} * (q u - q0 u)`.
    pub fn quotient(&self) -> RegularQuotient {
        RegularQuotient::left(
            RegularPolynomial::linear(-self.q0.conj(), Quaternion::ONE),
            RegularPolynomial::linear(self.u, -(self.q0 * self.u)),
        )
        .expect("denominator has constant term 1")
    }

    /// The unit-determinant `Sp(1,1)` matrix of this transformation.
    pub fn to_matrix(&self) -> QuaternionMatrix2 {
        let s = 1.0 / (1.0 - self.q0.norm_sqr()).sqrt();
        QuaternionMatrix2::from_rows(self.u * s, -self.q0.conj() * s, -(self.q0 * self.u) * s, Quaternion::real(s))
    }
}

/// Matrix of `M_{q0} u`, scaled into `Sp(1,1)`.
pub fn from_normal_form(q0: Quaternion, u: Quaternion) -> Result<QuaternionMatrix2> {
    Ok(MoebiusNormalForm::new(q0, u)?.to_matrix())
}

/// Recovers `(q0, u)` from an `Sp(1,1)` matrix.
///
/// The zero of `F_A` is `T_{f^c}(-b a^{-1})` with `f = qc + d`. For `q0` away
/// from 0, `u = -q0^{-1} F_A(0)`; near 0 the real point `t = 1/2` is used with
/// `u = M_{q0}(t)^{-1} F_A(t)`, which is `F_A(t)/t` when `q0 = 0`.
pub fn normal_form(m: &QuaternionMatrix2) -> Result<MoebiusNormalForm> {
    let defect = m.sp11_defect();
    if !(defect <= tolerance::SP11) {
        return Err(Error::NotSp11(defect));
    }
    let den = RegularPolynomial::linear(m.c, m.d);
    let zero_of_num = -(m.b * m.a.inverse()?);
    let q0 = rational::transform_tf(&den.regular_conjugate(), zero_of_num)?;
    let f = regular_fractional(m)?;
    let u = if q0.norm() >= 1e-3 {
        -(q0.inverse()? * f.evaluate(Quaternion::ZERO)?)
    } else {
        let t = Quaternion::real(0.5);
        let classical = (Quaternion::ONE - t * q0.conj()).inverse()? * (t - q0);
        classical.inverse()? * f.evaluate(t)?
    };
    Ok(MoebiusNormalForm { q0, u: u / u.norm() })
}

/// Classical value `(qc + d)^{-1} (qa + b)`.
pub fn classical_fractional(m: &QuaternionMatrix2, q: Quaternion) -> Result<Quaternion> {
    let den = q * m.c + m.d;
    if den.norm() <= 1e-14 * (q.norm() * m.c.norm() + m.d.norm()) {
        return Err(Error::PoleAtPoint(q.to_string()));
    }
    Ok(den.inverse().map_err(|_| Error::PoleAtPoint(q.to_string()))? * (q * m.a + m.b))
}

/// Generators of the classical group of linear fractional transformations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    /// `q + b`
    Translation(Quaternion),
    /// `q a` with `|a| = 1`
    RightRotation(Quaternion),
    /// `r q` with `r > 0`
    Dilation(f64),
    /// `q^{-1}`
    Inversion,
}

pub fn generator(kind: Generator) -> Result<QuaternionMatrix2> {
    let (zero, one) = (Quaternion::ZERO, Quaternion::ONE);
    match kind {
        Generator::Translation(b) => Ok(QuaternionMatrix2::from_rows(one, zero, b, one)),
        Generator::RightRotation(a) => {
            if (a.norm() - 1.0).abs() > tolerance::SP11 {
                return Err(Error::InvalidParameter(format!("rotation needs |a| = 1, got {}", a.norm())));
            }
            Ok(QuaternionMatrix2::from_rows(a, zero, zero, one))
        }
        Generator::Dilation(r) => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidParameter(format!("dilation needs r > 0, got {r}")));
            }
            Ok(QuaternionMatrix2::from_rows(Quaternion::real(r), zero, zero, one))
        }
        Generator::Inversion => Ok(QuaternionMatrix2::from_rows(zero, one, one, zero)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;
    const ZERO: Quaternion = Quaternion::ZERO;

    fn generic() -> QuaternionMatrix2 {
        QuaternionMatrix2::from_rows(
            Quaternion::new(0.7, -0.2, 0.4, 0.1),
            Quaternion::new(0.3, 0.5, -0.6, 0.2),
            Quaternion::new(-0.1, 0.2, 0.3, 0.9),
            Quaternion::new(1.1, 0.0, -0.4, 0.3),
        )
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(QuaternionMatrix2::identity().dieudonne_det(), 1.0);
        assert_eq!(QuaternionMatrix2::scalar(Quaternion::real(2.0)).dieudonne_det(), 4.0);
        assert_eq!(QuaternionMatrix2::from_rows(ZERO, J, I, ZERO).dieudonne_det(), 1.0);
    }

    #[test]
    fn sp11_examples() {
        assert!(QuaternionMatrix2::h().is_sp11(1e-12));
        assert!(QuaternionMatrix2::identity().is_sp11(1e-12));
        let m = from_normal_form(I * 0.5, ONE).unwrap();
        assert!(m.is_sp11(1e-12));
        assert!((m.dieudonne_det() - 1.0).abs() < 1e-12);
        assert!(!generic().is_sp11(1e-9));
    }

    #[test]
    fn regular_fractional_examples() {
        let p = Quaternion::new(0.3, -0.2, 0.1, 0.4);
        let id = regular_fractional(&QuaternionMatrix2::identity()).unwrap();
        assert!(id.evaluate(p).unwrap().approx_eq(p, 1e-15));

        let (a, b) = (Quaternion::new(0.5, 1.0, 0.0, -1.0), K);
        let affine = regular_fractional(&QuaternionMatrix2::from_rows(a, ZERO, b, ONE)).unwrap();
        assert!(affine.evaluate(p).unwrap().approx_eq(p * a + b, 1e-15));

        let inv = regular_fractional(&generator(Generator::Inversion).unwrap()).unwrap();
        assert!(inv.evaluate(Quaternion::real(2.0)).unwrap().approx_eq(Quaternion::real(0.5), 1e-15));

        let singular = QuaternionMatrix2::from_rows(ONE, I, ONE, I);
        assert!(matches!(regular_fractional(&singular), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn actions_on_identity() {
        let id = RegularQuotient::polynomial(RegularPolynomial::identity());
        let grid = comparison_grid(30);
        let same = right_action(&id, &QuaternionMatrix2::identity()).unwrap();
        assert!(max_pointwise_deviation(&same, &id, &grid).0 < 1e-15);
        let m = generic();
        let orbit = right_action(&id, &m).unwrap();
        assert!(max_pointwise_deviation(&orbit, &regular_fractional(&m).unwrap(), &grid).0 < 1e-14);
        // the stabilizer of id contains every c * Id
        let c = Quaternion::new(0.2, 1.3, -0.7, 0.4);
        let stab = right_action(&id, &QuaternionMatrix2::scalar(c)).unwrap();
        assert!(max_pointwise_deviation(&stab, &id, &grid).0 < 1e-14);
        let stab = left_action(&QuaternionMatrix2::scalar(c), &id).unwrap();
        assert!(max_pointwise_deviation(&stab, &id, &grid).0 < 1e-14);
    }

    #[test]
    fn degenerate_composite() {
        // f = -d c^{-1} is constant, so fc + d vanishes identically
        let m = QuaternionMatrix2::from_rows(ONE, I, ZERO, ONE);
        let f = RegularQuotient::polynomial(RegularPolynomial::constant(I));
        assert!(matches!(right_action(&f, &m), Err(Error::DegenerateComposite)));
    }

    #[test]
    fn hermitian_examples() {
        let q2 = RegularQuotient::polynomial(RegularPolynomial::new(vec![ZERO, ZERO, ONE]));
        assert!(hermitian_coincidence_check(&q2, &QuaternionMatrix2::identity()).unwrap());
        let q0 = Quaternion::new(0.1, 0.3, -0.2, 0.2);
        let moebius = QuaternionMatrix2::from_rows(ONE, -q0.conj(), -q0, ONE);
        let id = RegularQuotient::polynomial(RegularPolynomial::identity());
        assert!(hermitian_coincidence_check(&id, &moebius).unwrap());
        let b = Quaternion::new(0.2, -0.4, 0.1, 0.3);
        let herm = QuaternionMatrix2::from_rows(Quaternion::real(1.3), b.conj(), b, Quaternion::real(-0.8));
        assert!(hermitian_coincidence_check(&q2, &herm).unwrap());
        assert!(matches!(hermitian_coincidence_check(&q2, &generic()), Err(Error::NotHermitian)));
    }

    #[test]
    fn left_right_conversion() {
        let grid = comparison_grid(50);
        let id = RegularQuotient::polynomial(RegularPolynomial::identity());
        for m in [generic(), QuaternionMatrix2::identity(), from_normal_form(J * 0.3, K).unwrap()] {
            let c = left_right_convert(&m).unwrap();
            let lhs = left_action(&c, &id).unwrap();
            let (dev, n) = max_pointwise_deviation(&lhs, &regular_fractional(&m).unwrap(), &grid);
            assert!(n > 40 && dev < 1e-9, "deviation {dev}");

            let back = right_left_convert(&c).unwrap();
            let (dev, _) = max_pointwise_deviation(&regular_fractional(&back).unwrap(), &lhs, &grid);
            assert!(dev < 1e-9, "deviation {dev}");
        }
        assert_eq!(left_right_convert(&QuaternionMatrix2::identity()).unwrap(), QuaternionMatrix2::identity());
        // diagonal case: F_A = (d^{-1} a) * q + d^{-1} b
        let (a, b, d) = (Quaternion::new(0.5, 1.0, 0.0, 0.0), J, Quaternion::new(0.0, 0.0, 0.0, 2.0));
        let c = left_right_convert(&QuaternionMatrix2::from_rows(a, ZERO, b, d)).unwrap();
        let d_inv = d.inverse().unwrap();
        assert_eq!(c, QuaternionMatrix2::from_rows(d_inv * a, ZERO, d_inv * b, ONE));
    }

    #[test]
    fn normal_form_round_trip() {
        for (q0, u) in [
            (ZERO, ONE),
            (I * 0.5, ONE),
            (Quaternion::new(0.2, -0.3, 0.4, 0.1), Quaternion::new(0.5, 0.5, 0.5, 0.5)),
            (Quaternion::new(1e-5, 0.0, 2e-5, 0.0), K),
        ] {
            let m = from_normal_form(q0, u).unwrap();
            let nf = normal_form(&m).unwrap();
            assert!(nf.q0.approx_eq(q0, 1e-12), "{:?} vs {q0:?}", nf.q0);
            assert!(nf.u.approx_eq(u, 1e-12), "{:?} vs {u:?}", nf.u);
        }
        // a different representative of the same map, multiplied by a unit scalar
        let v = Quaternion::new(0.0, 0.6, 0.0, 0.8);
        let m = from_normal_form(I * 0.5, J).unwrap().left_scale(v);
        assert!(m.is_sp11(1e-12));
        let nf = normal_form(&m).unwrap();
        assert!(nf.q0.approx_eq(I * 0.5, 1e-12));
        assert!(nf.u.approx_eq(J, 1e-12));
        assert!(matches!(normal_form(&generic()), Err(Error::NotSp11(_))));
    }

    #[test]
    fn normal_form_values() {
        let f = regular_fractional(&from_normal_form(I * 0.5, ONE).unwrap()).unwrap();
        assert!(f.evaluate(ZERO).unwrap().approx_eq(-I * 0.5, 1e-15));
        assert!(f.evaluate(I * 0.5).unwrap().norm() < 1e-15);
        assert!(from_normal_form(Quaternion::real(1.0), ONE).is_err());
        assert!(from_normal_form(ZERO, ONE * 2.0).is_err());
    }

    #[test]
    fn classical_generators() {
        let inv = generator(Generator::Inversion).unwrap();
        assert!(classical_fractional(&inv, I).unwrap().approx_eq(-I, 1e-15));
        let tr = generator(Generator::Translation(J)).unwrap();
        assert_eq!(classical_fractional(&tr, I).unwrap(), I + J);
        let dil = generator(Generator::Dilation(2.0)).unwrap();
        assert_eq!(classical_fractional(&dil, ONE + K).unwrap(), (ONE + K) * 2.0);
        let rot = generator(Generator::RightRotation(J)).unwrap();
        assert_eq!(classical_fractional(&rot, I).unwrap(), I * J);
        assert!(matches!(classical_fractional(&inv, ZERO), Err(Error::PoleAtPoint(_))));
        assert!(generator(Generator::Dilation(-1.0)).is_err());
        assert!(generator(Generator::RightRotation(ONE * 2.0)).is_err());
    }

    #[test]
    fn json_schema() {
        let v = serde_json::to_value(QuaternionMatrix2::identity()).unwrap();
        assert_eq!(v["a"], serde_json::json!([1.0, 0.0, 0.0, 0.0]));
        assert_eq!(v["c"], serde_json::json!([0.0, 0.0, 0.0, 0.0]));
        let back: QuaternionMatrix2 = serde_json::from_value(v).unwrap();
        assert_eq!(back, QuaternionMatrix2::identity());
    }
}
