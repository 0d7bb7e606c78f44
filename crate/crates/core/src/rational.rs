//! Regular quotients `f^{-*} * g` and `g * h^{-*}` of regular polynomials.
//!
//! A left quotient is evaluated as `f^s(q)^{-1} (f^c * g)(q)` and a right one as
//! `h^s(q)^{-1} (g * h^c)(q)`. Both reduce to a pair `(D, N)` with `D` a
//! real-coefficient polynomial, `Q = D^{-1} N`; since real-coefficient
//! polynomials are central for the star product, products, sums, reciprocals
//! and remainders of quotients stay inside polynomial arithmetic in that form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::roots;
use crate::series::RegularPolynomial;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `den^{-*} * num`
    Left,
    /// `num * den^{-*}`
    Right,
}

/// A regular quotient, undefined on the zero set of `den^s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuotientJson")]
pub struct RegularQuotient {
    den: RegularPolynomial,
    num: RegularPolynomial,
    side: Side,
}

#[derive(Deserialize)]
struct QuotientJson {
    den: RegularPolynomial,
    num: RegularPolynomial,
    side: Side,
}

impl TryFrom<QuotientJson> for RegularQuotient {
    type Error = Error;
    fn try_from(raw: QuotientJson) -> Result<Self> {
        RegularQuotient::new(raw.den, raw.num, raw.side)
    }
}

impl RegularQuotient {
    pub fn new(den: RegularPolynomial, num: RegularPolynomial, side: Side) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParameter("quotient denominator is identically zero".into()));
        }
        Ok(RegularQuotient { den, num, side })
    }

    /// `den^{-*} * num`.
    pub fn left(den: RegularPolynomial, num: RegularPolynomial) -> Result<Self> {
        RegularQuotient::new(den, num, Side::Left)
    }

    /// `num * den^{-*}`.
    pub fn right(num: RegularPolynomial, den: RegularPolynomial) -> Result<Self> {
        RegularQuotient::new(den, num, Side::Right)
    }

    /// A polynomial seen as the quotient `1^{-*} * f`.
    pub fn polynomial(f: RegularPolynomial) -> Self {
        RegularQuotient { den: RegularPolynomial::one(), num: f, side: Side::Left }
    }

    /// The regular reciprocal `f^{-*}`.
    pub fn reciprocal_of(f: RegularPolynomial) -> Result<Self> {
        RegularQuotient::left(f, RegularPolynomial::one())
    }

    pub fn den(&self) -> &RegularPolynomial {
        &self.den
    }

    pub fn num(&self) -> &RegularPolynomial {
        &self.num
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `(D, N)` with `D` real-coefficient and `Q = D^{-1} N` pointwise.
    pub fn central_form(&self) -> (RegularPolynomial, RegularPolynomial) {
        if self.den.has_real_coefficients(0.0) {
            return (self.den.clone(), self.num.clone());
        }
        let sym = self.den.symmetrization();
        let numer = match self.side {
            Side::Left => self.den.regular_conjugate().star(&self.num),
            Side::Right => self.num.star(&self.den.regular_conjugate()),
        };
        (sym, numer)
    }

    fn from_central(den: RegularPolynomial, num: RegularPolynomial) -> Result<Self> {
        RegularQuotient::left(den, num)
    }

    /// Precomputes the central form for repeated evaluation.
    pub fn evaluator(&self) -> QuotientEvaluator {
        let (sym, numer) = self.central_form();
        let threshold = tolerance::POLE * (1.0 + sym.coefficient_norm_sum());
        QuotientEvaluator { sym, numer, threshold }
    }

    /// Direct evaluation: `f^s(q)^{-1} (f^c * g)(q)` (left) or
    /// `h^s(q)^{-1} (g * h^c)(q)` (right).
    pub fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        self.evaluator().evaluate(q)
    }

    /// Evaluation through the change of variables:
    /// `f^{-*} * g (q) = f(T_f(q))^{-1} g(T_f(q))`.
    ///
    /// Right quotients are first rewritten as left quotients with a real
    /// denominator, for which `T` is the identity.
    pub fn eval_via_transform(&self, q: Quaternion) -> Result<Quaternion> {
        let left;
        let (den, num) = match self.side {
            Side::Left => (&self.den, &self.num),
            Side::Right => {
                left = self.to_left();
                (&left.den, &left.num)
            }
        };
        check_pole(&den.symmetrization(), q)?;
        let t = transform_tf(den, q)?;
        let value = den.evaluate(t).inverse()? * num.evaluate(t);
        finite(value, "quotient evaluation")
    }

    /// The same function written as a left quotient.
    pub fn to_left(&self) -> RegularQuotient {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => {
                let (den, num) = self.central_form();
                RegularQuotient { den, num, side: Side::Left }
            }
        }
    }

    /// The same function written as a right quotient.
    pub fn to_right(&self) -> RegularQuotient {
        match self.side {
            Side::Right => self.clone(),
            Side::Left => {
                let (den, num) = self.central_form();
                RegularQuotient { den, num, side: Side::Right }
            }
        }
    }

    /// `(f^{-*} * g)^c = g^c * (f^c)^{-*}` and `(g * h^{-*})^c = (h^c)^{-*} * g^c`.
    pub fn conjugate(&self) -> RegularQuotient {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        RegularQuotient {
            den: self.den.regular_conjugate(),
            num: self.num.regular_conjugate(),
            side,
        }
    }

    /// `Q^s(q) = den^s(q)^{-1} num^s(q)`.
    pub fn symmetrization_at(&self, q: Quaternion) -> Result<Quaternion> {
        let den_s = self.den.symmetrization();
        check_pole(&den_s, q)?;
        let value = den_s.evaluate(q).inverse()? * self.num.symmetrization().evaluate(q);
        finite(value, "quotient symmetrization")
    }

    /// Star product in the ring of quotients:
    /// `(f^{-*}*g) * (h^{-*}*k) = (f^s h^s)^{-1} f^c*g*h^c*k`.
    pub fn star(&self, other: &RegularQuotient) -> RegularQuotient {
        let (d1, n1) = self.central_form();
        let (d2, n2) = other.central_form();
        RegularQuotient { den: d1.star(&d2), num: n1.star(&n2), side: Side::Left }
    }

    pub fn add(&self, other: &RegularQuotient) -> RegularQuotient {
        let (d1, n1) = self.central_form();
        let (d2, n2) = other.central_form();
        RegularQuotient {
            den: d1.star(&d2),
            num: &n1.star(&d2) + &d1.star(&n2),
            side: Side::Left,
        }
    }

    pub fn sub(&self, other: &RegularQuotient) -> RegularQuotient {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RegularQuotient {
        RegularQuotient { den: self.den.clone(), num: -&self.num, side: self.side }
    }

    /// `c * Q`.
    pub fn left_scale(&self, c: Quaternion) -> RegularQuotient {
        let (d, n) = self.central_form();
        RegularQuotient { den: d, num: n.left_scale(c), side: Side::Left }
    }

    /// `Q * c`.
    pub fn right_scale(&self, c: Quaternion) -> RegularQuotient {
        let (d, n) = self.central_form();
        RegularQuotient { den: d, num: n.right_scale(c), side: Side::Left }
    }

    /// `Q - c` for a constant `c`.
    pub fn sub_constant(&self, c: Quaternion) -> RegularQuotient {
        let (d, n) = self.central_form();
        RegularQuotient { den: d.clone(), num: &n - &d.right_scale(c), side: Side::Left }
    }

    /// `Q^{-*}`; fails when the numerator vanishes identically.
    pub fn reciprocal(&self) -> Result<RegularQuotient> {
        let (d, n) = self.central_form();
        if n.is_zero() {
            return Err(Error::DegenerateComposite);
        }
        RegularQuotient::from_central_reciprocal(d, n)
    }

    fn from_central_reciprocal(d: RegularPolynomial, n: RegularPolynomial) -> Result<Self> {
        // (D^{-1} N)^{-*} = N^{-*} * D
        RegularQuotient::left(n, d)
    }

    /// `R_{q0} Q = (q - q0)^{-*} * (Q - Q(q0))`.
    pub fn remainder(&self, q0: Quaternion) -> Result<RegularQuotient> {
        let value = self.evaluate(q0)?;
        let (d, n) = self.central_form();
        let shifted = &n - &d.right_scale(value);
        RegularQuotient::from_central(d, shifted.remainder(q0))
    }
}

impl std::fmt::Display for RegularQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == RegularPolynomial::one() {
            return write!(f, "{}", self.num);
        }
        match self.side {
            Side::Left => write!(f, "({})^-* * ({})", self.den, self.num),
            Side::Right => write!(f, "({}) * ({})^-*", self.num, self.den),
        }
    }
}

/// Cached central form of a quotient.
#[derive(Clone, Debug)]
pub struct QuotientEvaluator {
    sym: RegularPolynomial,
    numer: RegularPolynomial,
    threshold: f64,
}

impl QuotientEvaluator {
    pub fn evaluate(&self, q: Quaternion) -> Result<Quaternion> {
        let s = self.sym.evaluate(q);
        if s.norm() < self.threshold {
            return Err(Error::PoleOnSymmetrizationZeroSet(q.to_string()));
        }
        finite(s.inverse()? * self.numer.evaluate(q), "quotient evaluation")
    }
}

fn check_pole(sym: &RegularPolynomial, q: Quaternion) -> Result<()> {
    let threshold = tolerance::POLE * (1.0 + sym.coefficient_norm_sum());
    if sym.evaluate(q).norm() < threshold {
        Err(Error::PoleOnSymmetrizationZeroSet(q.to_string()))
    } else {
        Ok(())
    }
}

fn finite(q: Quaternion, what: &'static str) -> Result<Quaternion> {
    if q.is_finite() {
        Ok(q)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// `T_f(q) = f^c(q)^{-1} q f^c(q)`; maps each sphere `x + yS` to itself.
/// Defined off the zero set of `f^c`.
pub fn transform_tf(f: &RegularPolynomial, q: Quaternion) -> Result<Quaternion> {
    let fc = f.regular_conjugate().evaluate(q);
    let inv = fc.inverse().map_err(|_| Error::PoleAtPoint(q.to_string()))?;
    Ok(inv * q * fc)
}

/// One component of the zero set of `f^s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SphereZero {
    /// A real point `x`.
    Real { x: f64, multiplicity: usize },
    /// The sphere `x + yS`, `y > 0`.
    Sphere { x: f64, y: f64, multiplicity: usize },
}

impl SphereZero {
    pub fn center_and_radius(&self) -> (f64, f64) {
        match *self {
            SphereZero::Real { x, .. } => (x, 0.0),
            SphereZero::Sphere { x, y, .. } => (x, y),
        }
    }

    pub fn multiplicity(&self) -> usize {
        match *self {
            SphereZero::Real { multiplicity, .. } | SphereZero::Sphere { multiplicity, .. } => multiplicity,
        }
    }
}

/// Zero set of `f^s`: real points and spheres, multiplicities counted in `f^s`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SphereZeroSet {
    pub entries: Vec<SphereZero>,
}

/// Roots of `f^s` on the slice `L_i`, grouped into real points and spheres.
pub fn sphere_zero_set(f: &RegularPolynomial) -> Result<SphereZeroSet> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("zero set of the zero polynomial".into()));
    }
    let sym = f.symmetrization();
    let coeffs: Vec<f64> = sym.coeffs().iter().map(|c| c.w).collect();
    let found = roots::durand_kerner(&coeffs)?;
    let mut entries: Vec<SphereZero> = roots::cluster(&found)
        .into_iter()
        .filter_map(|root| {
            let (x, y) = (root.value.re, root.value.im);
            if y.abs() <= roots::CLUSTER_RADIUS {
                Some(SphereZero::Real { x, multiplicity: root.multiplicity })
            } else if y > 0.0 {
                Some(SphereZero::Sphere { x, y, multiplicity: root.multiplicity })
            } else {
                None
            }
        })
        .collect();
    entries.sort_by(|a, b| a.center_and_radius().partial_cmp(&b.center_and_radius()).unwrap());
    Ok(SphereZeroSet { entries })
}

/// Zeros of a regular polynomial on one sphere `x + yS`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZerosOnSphere {
    None,
    Isolated(Quaternion),
    /// `f` vanishes on the whole sphere.
    Whole,
}

impl ZerosOnSphere {
    /// 0, 1, or `None` for a whole sphere.
    pub fn count(&self) -> Option<usize> {
        match self {
            ZerosOnSphere::None => Some(0),
            ZerosOnSphere::Isolated(_) => Some(1),
            ZerosOnSphere::Whole => None,
        }
    }
}

/// Solves `f(x + yI) = 0` for `I` in the unit imaginary sphere.
///
/// On the sphere `f(x + yI) = b + I c` with `b, c` independent of `I`, read
/// off from the values at `x +- yi`. A zero exists where `I = -b c^{-1}` is a
/// unit imaginary quaternion; `b = c = 0` means the whole sphere vanishes.
/// `tol` is relative to `sum |a_n| max(1, |x + yi|)^n`.
pub fn zeros_on_sphere(f: &RegularPolynomial, x: f64, y: f64, tol: f64) -> ZerosOnSphere {
    let radius = x.hypot(y).max(1.0);
    let scale = f
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, a| acc * radius + a.norm())
        .max(f64::MIN_POSITIVE);
    if y == 0.0 {
        return if f.evaluate(Quaternion::real(x)).norm() <= tol * scale {
            ZerosOnSphere::Isolated(Quaternion::real(x))
        } else {
            ZerosOnSphere::None
        };
    }
    let z = Quaternion::new(x, y, 0.0, 0.0);
    let (fz, fzb) = (f.evaluate(z), f.evaluate(z.conj()));
    let b = (fz + fzb) * 0.5;
    let c = -(Quaternion::I * (fz - fzb)) * 0.5;
    let (bn, cn) = (b.norm(), c.norm());
    if bn <= tol * scale && cn <= tol * scale {
        return ZerosOnSphere::Whole;
    }
    if cn <= tol * scale {
        return ZerosOnSphere::None;
    }
    let unit = -(b * c.inverse().expect("c is nonzero"));
    let im = unit.im();
    if unit.re().abs() <= tol * (bn / cn).max(1.0) && (im.norm() - 1.0).abs() <= tol * (bn / cn).max(1.0) {
        ZerosOnSphere::Isolated(Quaternion::real(x) + im * (y / im.norm()))
    } else {
        ZerosOnSphere::None
    }
}
