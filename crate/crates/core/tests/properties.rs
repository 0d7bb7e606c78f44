use num_complex::Complex64;
use proptest::prelude::*;

use srq::fractional::{self, QuaternionMatrix2};
use srq::geometry;
use srq::rational::{self, RegularQuotient};
use srq::{Quaternion, RegularPolynomial};

fn quat(radius: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-radius..radius).prop_map(Quaternion::from_array)
}

fn ball_point() -> impl Strategy<Value = Quaternion> {
    quat(0.5)
}

fn unit() -> impl Strategy<Value = Quaternion> {
    quat(1.0).prop_filter("nonzero", |q| q.norm() > 0.1).prop_map(|q| q / q.norm())
}

fn in_ball(radius: f64) -> impl Strategy<Value = Quaternion> {
    (unit(), 0.0..radius).prop_map(|(u, r)| u * r)
}

fn poly(max_len: usize) -> impl Strategy<Value = RegularPolynomial> {
    prop::collection::vec(quat(1.0), 1..=max_len).prop_map(RegularPolynomial::new)
}

fn matrix() -> impl Strategy<Value = QuaternionMatrix2> {
    prop::array::uniform4(quat(1.5))
        .prop_map(|[a, c, b, d]| QuaternionMatrix2::from_rows(a, c, b, d))
        .prop_filter("invertible", |m| m.dieudonne_det() > 1e-2)
}

fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    a.distance(b) <= tol * a.norm().max(b.norm()).max(1.0)
}

/// `q = z1 + z2 j` as the complex matrix `[[z1, z2], [-conj(z2), conj(z1)]]`.
fn complex_block(q: Quaternion) -> [[Complex64; 2]; 2] {
    let z1 = Complex64::new(q.w, q.x);
    let z2 = Complex64::new(q.y, q.z);
    [[z1, z2], [-z2.conj(), z1.conj()]]
}

fn complex_det(mut m: [[Complex64; 4]; 4]) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..4 {
        let pivot = (col..4).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (target, v) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *target -= factor * v;
            }
        }
    }
    det
}

/// Dieudonne determinant through the complex 4x4 representation: `sqrt |det|`.
fn complex_dieudonne(m: &QuaternionMatrix2) -> f64 {
    let blocks = [[complex_block(m.a), complex_block(m.c)], [complex_block(m.b), complex_block(m.d)]];
    let mut full = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, block) in row.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    full[2 * bi + i][2 * bj + j] = block[i][j];
                }
            }
        }
    }
    complex_det(full).norm().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hamilton_product_laws(p in quat(2.0), q in quat(2.0), r in quat(2.0)) {
        prop_assert!(close((p * q) * r, p * (q * r), 1e-14));
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= 1e-14 * (1.0 + p.norm() * q.norm()));
        prop_assert!(close((p * q).conj(), q.conj() * p.conj(), 1e-15));
    }

    #[test]
    fn slice_decomposition_reconstructs(p in quat(2.0)) {
        let s = p.slice_decompose();
        prop_assert!(s.y0 >= 0.0);
        prop_assert!(close(s.reconstruct(), p, 1e-15));
    }

    #[test]
    fn star_product_ring_laws(f in poly(4), g in poly(4), h in poly(4)) {
        prop_assert!(f.star(&g).star(&h).max_coeff_distance(&f.star(&g.star(&h))) <= 1e-13);
        prop_assert!(f.star(&(&g + &h)).max_coeff_distance(&(&f.star(&g) + &f.star(&h))) <= 1e-14);
        let lhs = f.star(&g).regular_conjugate();
        prop_assert!(lhs.max_coeff_distance(&g.regular_conjugate().star(&f.regular_conjugate())) <= 1e-14);
        prop_assert!(f.symmetrization().has_real_coefficients(1e-14));
    }

    #[test]
    fn star_product_evaluation(f in poly(4), g in poly(4), q in quat(1.5)) {
        let fq = f.evaluate(q);
        prop_assume!(fq.norm() > 1e-3);
        let moved = fq.inverse().unwrap() * q * fq;
        let want = fq * g.evaluate(moved);
        prop_assert!(close(f.star(&g).evaluate(q), want, 1e-12));
    }

    #[test]
    fn remainder_identity(f in poly(5), q0 in quat(1.0), q in quat(1.5)) {
        // f - f(q0) = (q - q0) * R as polynomials
        let r = f.remainder(q0);
        let rebuilt = &RegularPolynomial::linear(Quaternion::ONE, -q0).star(&r)
            + &RegularPolynomial::constant(f.evaluate(q0));
        prop_assert!(rebuilt.max_coeff_distance(&f) <= 1e-13);
        prop_assert!(close(rebuilt.evaluate(q), f.evaluate(q), 1e-12));
    }

    #[test]
    fn spherical_expansion_reconstructs(f in poly(5), q0 in quat(0.8), q in quat(1.0)) {
        prop_assume!(q0.im().norm() > 0.05);
        let degree = f.degree().unwrap_or(0);
        let exp = f.spherical_expansion(q0, degree + 1).unwrap();
        prop_assert!(close(exp.evaluate(q), f.evaluate(q), 1e-9));
    }

    #[test]
    fn quotient_routes_agree(f in poly(4), g in poly(4), q in quat(1.5)) {
        prop_assume!(f.degree().is_some());
        let quotient = RegularQuotient::left(f.clone(), g).unwrap();
        prop_assume!(f.symmetrization().evaluate(q).norm() > 1e-3);
        let (a, b) = (quotient.evaluate(q).unwrap(), quotient.eval_via_transform(q).unwrap());
        prop_assert!(close(a, b, 1e-10));
        let right = RegularQuotient::right(quotient.num().clone(), f).unwrap();
        prop_assert!(close(right.evaluate(q).unwrap(), right.eval_via_transform(q).unwrap(), 1e-10));
    }

    #[test]
    fn transform_preserves_spheres(f in poly(4), q in quat(1.5)) {
        prop_assume!(f.regular_conjugate().evaluate(q).norm() > 1e-3);
        let t = rational::transform_tf(&f, q).unwrap();
        prop_assert!((t.re() - q.re()).abs() <= 1e-13);
        prop_assert!((t.im().norm() - q.im().norm()).abs() <= 1e-13);
    }

    #[test]
    fn dieudonne_matches_complex_representation(m in matrix(), n in matrix()) {
        let det = m.dieudonne_det();
        prop_assert!((det - complex_dieudonne(&m)).abs() <= 1e-10 * (1.0 + det));
        let prod = (m * n).dieudonne_det();
        prop_assert!((prod - det * n.dieudonne_det()).abs() <= 1e-10 * (1.0 + prod));
    }

    #[test]
    fn actions_compose(f in poly(3), a in matrix(), b in matrix()) {
        let f = RegularQuotient::polynomial(f);
        let grid = fractional::comparison_grid(20);
        if let (Ok(step), Ok(once)) = (
            fractional::right_action(&f, &a).and_then(|g| fractional::right_action(&g, &b)),
            fractional::right_action(&f, &(a * b)),
        ) {
            prop_assert!(fractional::max_pointwise_deviation(&step, &once, &grid).0 <= 1e-8);
        }
        if let (Ok(step), Ok(once)) = (
            fractional::left_action(&b, &f).and_then(|g| fractional::left_action(&a, &g)),
            fractional::left_action(&(a.transpose() * b.transpose()).transpose(), &f),
        ) {
            prop_assert!(fractional::max_pointwise_deviation(&step, &once, &grid).0 <= 1e-8);
        }
    }

    #[test]
    fn normal_form_round_trip(q0 in quat(0.45), u in unit()) {
        let m = fractional::from_normal_form(q0, u).unwrap();
        prop_assert!(m.is_sp11(1e-12));
        let nf = fractional::normal_form(&m).unwrap();
        prop_assert!(close(nf.q0, q0, 1e-10));
        prop_assert!(close(nf.u, u, 1e-10));
    }

    #[test]
    fn classical_moebius_is_isometry(q0 in ball_point(), u in unit(), v in unit(), a in ball_point(), b in ball_point()) {
        let before = geometry::poincare_distance(a, b).unwrap();
        let ga = geometry::classical_moebius(q0, u, v, a).unwrap();
        let gb = geometry::classical_moebius(q0, u, v, b).unwrap();
        prop_assert!((geometry::poincare_distance(ga, gb).unwrap() - before).abs() <= 1e-12);
        prop_assert!((geometry::poincare_distance(a.conj(), b.conj()).unwrap() - before).abs() <= 1e-13);
    }

    #[test]
    fn regular_moebius_factors_through_twist(q0 in ball_point(), u in unit(), q in ball_point()) {
        let regular = geometry::regular_moebius(q0, u, q).unwrap();
        let twisted = geometry::classical_moebius(q0, u, Quaternion::ONE, geometry::twist_map(q0, q).unwrap()).unwrap();
        prop_assert!(close(regular, twisted, 1e-12));
        let right = geometry::regular_moebius_right(q0, u).unwrap().evaluate(q).unwrap();
        prop_assert!(close(regular, right, 1e-12));
        let back = geometry::twist_map_inverse(q0, geometry::twist_map(q0, q).unwrap()).unwrap();
        prop_assert!(close(back, q, 1e-13));
    }

    #[test]
    fn distance_is_a_metric(a in ball_point(), b in ball_point(), c in ball_point()) {
        let ab = geometry::poincare_distance(a, b).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - geometry::poincare_distance(b, a).unwrap()).abs() <= 1e-14);
        let via = geometry::poincare_distance(a, c).unwrap() + geometry::poincare_distance(c, b).unwrap();
        prop_assert!(ab <= via + 1e-12);
    }

    #[test]
    fn geodesics_are_additive(a in ball_point(), b in ball_point(), t in 0.0..1.0f64) {
        prop_assume!(a.distance(b) > 1e-3);
        let g = geometry::geodesic(a, b).unwrap();
        let p = g.point(t).unwrap();
        let total = geometry::poincare_distance(a, b).unwrap();
        let split = geometry::poincare_distance(a, p).unwrap() + geometry::poincare_distance(p, b).unwrap();
        prop_assert!((split - total).abs() <= 1e-8);
    }

    #[test]
    fn expansion_closed_form_matches_remainders(q0 in in_ball(0.5)) {
        prop_assume!(q0.im().norm() > 1e-2);
        let geometric = RegularPolynomial::new((0..=60).map(|n| q0.conj().powi(n)).collect());
        let series = geometric.star(&RegularPolynomial::linear(Quaternion::ONE, -q0));
        let iterated = series.spherical_expansion(q0, 5).unwrap();
        let closed = geometry::moebius_expansion_coefficients(q0, 5).unwrap();
        for n in 0..=5 {
            prop_assert!(iterated.coefficient(n).distance(closed.coefficient(n)) <= 1e-8);
        }
        let (c, s) = geometry::conformality_defect(q0).unwrap();
        prop_assert!(c > s);
    }
}
