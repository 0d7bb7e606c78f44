//! Poincare geometry of the unit ball and Moebius maps.
//!
//! `M_{q0}(q) = (1 - q conj(q0))^{-1} (q - q0)` is the classical Moebius map and
//! `ML_{q0} = (1 - q conj(q0))^{-*} * (q - q0)` its regular counterpart; they are
//! related by `ML_{q0} = M_{q0} o T` with the twist `T(q) = (1 - q q0)^{-1} q (1 - q q0)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rational::RegularQuotient;
use crate::series::{RegularPolynomial, SphericalExpansion};
use crate::tolerance;

/// Rejects points with `|q| > 1 - BALL_MARGIN`.
pub fn check_in_ball(q: Quaternion) -> Result<()> {
    if q.norm() <= 1.0 - tolerance::BALL_MARGIN {
        Ok(())
    } else {
        Err(Error::OutsideBall(q.to_string()))
    }
}

fn check_unit(u: Quaternion, name: &str) -> Result<()> {
    if (u.norm() - 1.0).abs() <= tolerance::SP11 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must have modulus 1, got {}", u.norm())))
    }
}

/// `|q1 - q2|^2 / |1 - q1 conj(q2)|^2`.
pub fn pseudo_distance_sq(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    check_in_ball(q1)?;
    check_in_ball(q2)?;
    Ok((q1 - q2).norm_sqr() / (Quaternion::ONE - q1 * q2.conj()).norm_sqr())
}

/// `delta(q1, q2) = (1/2) log((1 + r) / (1 - r))` with `r = |q1 - q2| / |1 - q1 conj(q2)|`.
pub fn poincare_distance(q1: Quaternion, q2: Quaternion) -> Result<f64> {
    check_in_ball(q1)?;
    check_in_ball(q2)?;
    let r = ((q1 - q2).norm() / (Quaternion::ONE - q1 * q2.conj()).norm()).min(1.0);
    let log = if r < 0.5 { (2.0 * r / (1.0 - r)).ln_1p() } else { ((1.0 + r) / (1.0 - r)).ln() };
    Ok(0.5 * log)
}

/// `v^{-1} (1 - q conj(q0))^{-1} (q - q0) u`.
pub fn classical_moebius(q0: Quaternion, u: Quaternion, v: Quaternion, q: Quaternion) -> Result<Quaternion> {
    check_in_ball(q0)?;
    check_in_ball(q)?;
    check_unit(u, "u")?;
    check_unit(v, "v")?;
    let den = Quaternion::ONE - q * q0.conj();
    Ok(v.inverse()? * den.inverse()? * (q - q0) * u)
}

/// `M_{q0}^{-1}(p) = (p + q0)(1 + conj(q0) p)^{-1}`.
fn classical_moebius_inverse(q0: Quaternion, p: Quaternion) -> Result<Quaternion> {
    Ok((p + q0) * (Quaternion::ONE + q0.conj() * p).inverse()?)
}

/// `ML_{q0} u` as the left quotient `(1 - q conj(q0))^{-*} * (q - q0) u`.
pub fn regular_moebius_left(q0: Quaternion, u: Quaternion) -> Result<RegularQuotient> {
    check_in_ball(q0)?;
    check_unit(u, "u")?;
    RegularQuotient::left(
        RegularPolynomial::linear(-q0.conj(), Quaternion::ONE),
        RegularPolynomial::linear(u, -(q0 * u)),
    )
}

/// `ML_{q0} u` as the right quotient `(q - q0) * (u^{-1} * (1 - q conj(q0)))^{-*}`.
pub fn regular_moebius_right(q0: Quaternion, u: Quaternion) -> Result<RegularQuotient> {
    check_in_ball(q0)?;
    check_unit(u, "u")?;
    let u_bar = u.conj();
    RegularQuotient::right(
        RegularPolynomial::linear(Quaternion::ONE, -q0),
        RegularPolynomial::linear(-(u_bar * q0.conj()), u_bar),
    )
}

/// Value of `ML_{q0}(q) u`.
pub fn regular_moebius(q0: Quaternion, u: Quaternion, q: Quaternion) -> Result<Quaternion> {
    check_in_ball(q)?;
    regular_moebius_left(q0, u)?.evaluate(q)
}

/// `T(q) = (1 - q q0)^{-1} q (1 - q q0)`.
pub fn twist_map(q0: Quaternion, q: Quaternion) -> Result<Quaternion> {
    check_in_ball(q0)?;
    check_in_ball(q)?;
    let w = Quaternion::ONE - q * q0;
    Ok(w.inverse()? * q * w)
}

/// `T^{-1}(q) = (1 - q conj(q0))^{-1} q (1 - q conj(q0))`.
pub fn twist_map_inverse(q0: Quaternion, q: Quaternion) -> Result<Quaternion> {
    check_in_ball(q0)?;
    check_in_ball(q)?;
    let w = Quaternion::ONE - q * q0.conj();
    Ok(w.inverse()? * q * w)
}

/// Closed-form expansion coefficients `A_0..=A_{max_index}` of `ML_{q0}` around
/// the sphere of `q0`:
///
/// ```text
/// A_0 = 0
/// A_{2n-1} = conj(q0)^{2n-2} / ((1 - |q0|^2)^{n-1} (1 - conj(q0)^2)^n)
/// A_{2n}   = conj(q0)^{2n-1} / ((1 - |q0|^2)^n (1 - conj(q0)^2)^n)
/// ```
pub fn moebius_expansion_coefficients(q0: Quaternion, max_index: usize) -> Result<SphericalExpansion> {
    check_in_ball(q0)?;
    if max_index > 1 && q0 != Quaternion::ZERO && q0.is_real(tolerance::REAL_AXIS) {
        return Err(Error::DegenerateCenter(q0.to_string()));
    }
    let q0_bar = q0.conj();
    let radial = 1.0 - q0.norm_sqr();
    let sphere = Quaternion::ONE - q0_bar * q0_bar;
    let sphere_inv = sphere.inverse()?;
    let mut coefficients = vec![Quaternion::ZERO];
    for k in 1..=max_index {
        let n = k.div_ceil(2) as i32;
        let value = if k % 2 == 1 {
            q0_bar.powi(2 * n as u32 - 2) * sphere_inv.powi(n as u32) / radial.powi(n - 1)
        } else {
            q0_bar.powi(2 * n as u32 - 1) * sphere_inv.powi(n as u32) / radial.powi(n)
        };
        coefficients.push(value);
    }
    Ok(SphericalExpansion { center: q0, coefficients })
}

/// `(|dc ML_{q0}(q0)|, |ds ML_{q0}(q0)|) = ((1 - |q0|^2)^{-1}, |1 - conj(q0)^2|^{-1})`.
///
/// The Cullen derivative at `q0` is `A_1 + (q0 - conj(q0)) A_2` and the
/// spherical derivative is `A_1`.
pub fn conformality_defect(q0: Quaternion) -> Result<(f64, f64)> {
    check_in_ball(q0)?;
    if q0.is_real(tolerance::REAL_AXIS) {
        return Err(Error::RealPoint(q0.to_string()));
    }
    let exp = moebius_expansion_coefficients(q0, 2)?;
    let (a1, a2) = (exp.coefficient(1), exp.coefficient(2));
    let cullen = a1 + (q0 - q0.conj()) * a2;
    Ok((cullen.norm(), a1.norm()))
}

/// The non-Euclidean line segment from `q1` to `q2`, parametrized
/// proportionally to hyperbolic arc length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSegment {
    pub q1: Quaternion,
    pub q2: Quaternion,
    /// `M_{q1}(q2)`, the far endpoint after moving `q1` to the origin.
    image: Quaternion,
}

impl GeodesicSegment {
    /// `gamma(t)` for `t` in `[0, 1]`.
    pub fn point(&self, t: f64) -> Result<Quaternion> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter(format!("geodesic parameter {t} outside [0, 1]")));
        }
        if t == 1.0 {
            return Ok(self.q2);
        }
        let r = self.image.norm();
        let on_diameter = self.image * ((t * r.atanh()).tanh() / r);
        classical_moebius_inverse(self.q1, on_diameter)
    }

    /// `n + 1` equally spaced points including both endpoints.
    pub fn sample(&self, n: usize) -> Result<Vec<Quaternion>> {
        let n = n.max(1);
        (0..=n).map(|k| self.point(k as f64 / n as f64)).collect()
    }

    pub fn length(&self) -> f64 {
        self.image.norm().atanh()
    }
}

pub fn geodesic(q1: Quaternion, q2: Quaternion) -> Result<GeodesicSegment> {
    check_in_ball(q1)?;
    check_in_ball(q2)?;
    if q1.distance(q2) <= tolerance::IDENTITY * (1.0 + q1.norm()) {
        return Err(Error::CoincidentPoints);
    }
    let image = classical_moebius(q1, Quaternion::ONE, Quaternion::ONE, q2)?;
    Ok(GeodesicSegment { q1, q2, image })
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    fn points() -> Vec<Quaternion> {
        vec![
            Quaternion::new(0.1, 0.2, -0.3, 0.4),
            Quaternion::new(-0.5, 0.1, 0.0, 0.2),
            Quaternion::new(0.0, -0.6, 0.3, -0.1),
            Quaternion::new(0.7, 0.0, 0.1, 0.0),
            Quaternion::new(0.05, 0.45, 0.45, -0.45),
        ]
    }

    #[test]
    fn distance_examples() {
        let d = poincare_distance(Quaternion::ZERO, Quaternion::real(0.5)).unwrap();
        assert_eq!(d, 0.5 * 3f64.ln());
        let p = Quaternion::new(0.1, 0.2, 0.3, 0.4);
        assert_eq!(poincare_distance(p, p).unwrap(), 0.0);
        assert!(matches!(poincare_distance(Quaternion::real(1.0), p), Err(Error::OutsideBall(_))));
        let pts = points();
        for &a in &pts {
            for &b in &pts {
                let (ab, ba) = (poincare_distance(a, b).unwrap(), poincare_distance(b, a).unwrap());
                assert!((ab - ba).abs() < 1e-14);
                for &c in &pts {
                    assert!(ab <= poincare_distance(a, c).unwrap() + poincare_distance(c, b).unwrap() + 1e-12);
                }
                // conjugation is an isometry
                assert!((poincare_distance(a.conj(), b.conj()).unwrap() - ab).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn twisted_pair_ratios() {
        let (q0, q1) = (I * 0.5, J * 0.5);
        assert!((pseudo_distance_sq(q1, q0).unwrap() - 8.0 / 17.0).abs() < 1e-12);
        let t1 = twist_map(q0, q1).unwrap();
        let want = Quaternion::new(0.0, 8.0 / 34.0, 15.0 / 34.0, 0.0);
        assert!(t1.distance(want) < 1e-12);
        assert!((pseudo_distance_sq(t1, q0).unwrap() - 8.0 / 25.0).abs() < 1e-12);
        assert!(twist_map(q0, q0).unwrap().distance(q0) < 1e-15);
        let tq0 = twist_map(q0, q0).unwrap();
        assert!(poincare_distance(q0, q1).unwrap() > poincare_distance(tq0, t1).unwrap());
    }

    #[test]
    fn twist_examples() {
        let real = Quaternion::real(0.4);
        for p in points() {
            assert!(twist_map(real, p).unwrap().approx_eq(p, 1e-15));
            let q0 = Quaternion::new(0.2, -0.3, 0.1, 0.4);
            let back = twist_map_inverse(q0, twist_map(q0, p).unwrap()).unwrap();
            assert!(back.approx_eq(p, 1e-14));
        }
    }

    #[test]
    fn classical_examples() {
        let p = Quaternion::new(0.3, -0.1, 0.2, 0.1);
        assert_eq!(classical_moebius(Quaternion::ZERO, ONE, ONE, p).unwrap(), p);
        assert!(classical_moebius(p, K, J, p).unwrap().norm() < 1e-15);
        let (q0, u, v) = (Quaternion::new(0.1, 0.5, -0.2, 0.3), Quaternion::new(0.5, 0.5, 0.5, 0.5), J);
        let pts = points();
        for &a in &pts {
            for &b in &pts {
                let before = poincare_distance(a, b).unwrap();
                let ga = classical_moebius(q0, u, v, a).unwrap();
                let gb = classical_moebius(q0, u, v, b).unwrap();
                assert!(ga.norm() < 1.0);
                assert!((poincare_distance(ga, gb).unwrap() - before).abs() < 1e-12);
            }
        }
        assert!(classical_moebius(q0, ONE * 2.0, ONE, p).is_err());
    }

    #[test]
    fn regular_examples() {
        let p = Quaternion::new(0.3, -0.1, 0.2, 0.1);
        let u = Quaternion::new(0.0, 0.6, 0.0, 0.8);
        assert!(regular_moebius(Quaternion::ZERO, u, p).unwrap().approx_eq(p * u, 1e-15));
        assert!(regular_moebius(p, u, p).unwrap().norm() < 1e-15);
        assert!(regular_moebius(I * 0.5, ONE, Quaternion::ZERO).unwrap().approx_eq(-I * 0.5, 1e-15));
        let q0 = Quaternion::new(0.1, 0.4, -0.3, 0.2);
        let (left, right) = (regular_moebius_left(q0, u).unwrap(), regular_moebius_right(q0, u).unwrap());
        for x in points() {
            assert!(left.evaluate(x).unwrap().approx_eq(right.evaluate(x).unwrap(), 1e-13));
            // ML_{q0} = M_{q0} o T
            let via_twist = classical_moebius(q0, u, ONE, twist_map(q0, x).unwrap()).unwrap();
            assert!(left.evaluate(x).unwrap().approx_eq(via_twist, 1e-13));
        }
    }

    #[test]
    fn expansion_coefficient_examples() {
        let exp = moebius_expansion_coefficients(I * 0.5, 2).unwrap();
        assert_eq!(exp.coefficient(0), Quaternion::ZERO);
        assert!(exp.coefficient(1).approx_eq(Quaternion::real(0.8), 1e-15));
        assert!(exp.coefficient(2).approx_eq(-I * (8.0 / 15.0), 1e-15));
        let origin = moebius_expansion_coefficients(Quaternion::ZERO, 5).unwrap();
        assert_eq!(origin.coefficient(1), ONE);
        assert!((2..=5).all(|n| origin.coefficient(n) == Quaternion::ZERO));
        assert!(matches!(
            moebius_expansion_coefficients(Quaternion::real(0.3), 2),
            Err(Error::DegenerateCenter(_))
        ));
        assert!(moebius_expansion_coefficients(Quaternion::real(0.3), 1).is_ok());
    }

    #[test]
    fn expansion_matches_truncated_series() {
        // ML_{q0} = (sum q^n conj(q0)^n) * (q - q0) on |q| <= 1/2
        let q0 = Quaternion::new(0.1, -0.2, 0.3, 0.15);
        let geometric = RegularPolynomial::new((0..=60).map(|n| q0.conj().powi(n)).collect());
        let series = geometric.star(&RegularPolynomial::linear(ONE, -q0));
        let iterated = series.spherical_expansion(q0, 5).unwrap();
        let closed = moebius_expansion_coefficients(q0, 5).unwrap();
        for n in 0..=5 {
            assert!(iterated.coefficient(n).distance(closed.coefficient(n)) < 1e-8, "A_{n}");
        }
    }

    #[test]
    fn conformality_examples() {
        let (c, s) = conformality_defect(I * 0.5).unwrap();
        assert!((c - 4.0 / 3.0).abs() < 1e-14 && (s - 0.8).abs() < 1e-14);
        let (c, s) = conformality_defect(I * 1e-9).unwrap();
        assert!((c - 1.0).abs() < 1e-12 && (s - 1.0).abs() < 1e-12);
        assert!(matches!(conformality_defect(Quaternion::real(0.2)), Err(Error::RealPoint(_))));

        // finite differences along the slice and orthogonally to it
        let q0 = (I + J) * 0.5;
        let (c, s) = conformality_defect(q0).unwrap();
        assert!((c - 2.0).abs() < 1e-12 && (s - 2.0 / 3.0).abs() < 1e-12);
        let f = regular_moebius_left(q0, ONE).unwrap();
        let h = 1e-6;
        let along = |v: Quaternion| {
            (f.evaluate(q0 + v * h).unwrap() - f.evaluate(q0 - v * h).unwrap()).norm() / (2.0 * h)
        };
        assert!((along(ONE) - c).abs() < 1e-6);
        assert!((along(K) - s).abs() < 1e-6);
        assert!(c > s);
    }

    #[test]
    fn geodesic_examples() {
        let g = geodesic(Quaternion::real(-0.5), Quaternion::real(0.5)).unwrap();
        for p in g.sample(10).unwrap() {
            assert!(p.im().norm() < 1e-15 && p.w.abs() <= 0.5 + 1e-15);
        }
        let g = geodesic(Quaternion::ZERO, Quaternion::real(0.5)).unwrap();
        let m = g.point(0.5).unwrap();
        let (a, b) = (poincare_distance(Quaternion::ZERO, m).unwrap(), poincare_distance(m, Quaternion::real(0.5)).unwrap());
        assert!((a - b).abs() < 1e-12);

        let (q1, q2) = (Quaternion::new(0.1, 0.3, -0.2, 0.0), Quaternion::new(-0.4, 0.0, 0.5, 0.2));
        let g = geodesic(q1, q2).unwrap();
        assert!(g.point(0.0).unwrap().approx_eq(q1, 1e-15));
        assert_eq!(g.point(1.0).unwrap(), q2);
        let total = poincare_distance(q1, q2).unwrap();
        assert!((g.length() - total).abs() < 1e-12);
        for t in [0.1, 0.37, 0.5, 0.9] {
            let p = g.point(t).unwrap();
            let split = poincare_distance(q1, p).unwrap() + poincare_distance(p, q2).unwrap();
            assert!((split - total).abs() < 1e-8);
        }
        assert!(matches!(geodesic(q1, q1), Err(Error::CoincidentPoints)));
        assert!(g.point(1.5).is_err());
    }
}
