use std::f64::consts::PI;

use angle_spectrum_core::{
    angle_cos2, crosses, hyperbolic_distance, intersection_point, oriented_angle, BoundaryPoint, ElementClass,
    Geodesic, GeodesicShape, HPoint, MoebiusElement, Tolerances,
};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn sl2() -> impl Strategy<Value = MoebiusElement> {
    (0.3f64..3.0, any::<bool>(), -3.0f64..3.0, -3.0f64..3.0).prop_filter_map("bounded", |(a, neg, b, c)| {
        let a = if neg { -a } else { a };
        let d = (1.0 + b * c) / a;
        (d.abs() < 10.0).then(|| MoebiusElement::new(a, b, c, d).unwrap())
    })
}

fn hyperbolic() -> impl Strategy<Value = MoebiusElement> {
    sl2().prop_filter("hyperbolic", |m| m.trace().abs() > 2.05)
}

fn geodesic() -> impl Strategy<Value = Geodesic> {
    (0u8..5, -3.0f64..3.0, 0.1f64..3.0, any::<bool>()).prop_map(|(kind, c, r, rev)| {
        let g = if kind == 0 {
            Geodesic::vertical(c)
        } else {
            Geodesic::semicircle(c, r)
        };
        if rev {
            g.reversed()
        } else {
            g
        }
    })
}

fn crossing_pair() -> impl Strategy<Value = (Geodesic, Geodesic)> {
    (geodesic(), geodesic()).prop_filter("crossing", |(a, b)| crosses(a, b, &tol()))
}

/// Direction of travel at `p`, from the parametrisation of the curve.
fn tangent_oracle(g: &Geodesic, p: HPoint) -> (f64, f64) {
    let (tx, ty) = match g.shape() {
        GeodesicShape::Vertical { .. } => (0.0, 1.0),
        // z = c + r e^{iφ}; moving left to right means φ decreasing
        GeodesicShape::Semicircle { center, radius } => {
            let phi = p.y.atan2(p.x - center);
            (radius * phi.sin(), -radius * phi.cos())
        }
    };
    let forward = match (g.from(), g.to()) {
        (_, BoundaryPoint::Infinity) => true,
        (BoundaryPoint::Infinity, _) => false,
        (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a < b,
    };
    if forward {
        (tx, ty)
    } else {
        (-tx, -ty)
    }
}

/// Crossing point from elementary circle geometry.
fn point_oracle(a: &Geodesic, b: &Geodesic) -> HPoint {
    match (a.shape(), b.shape()) {
        (
            GeodesicShape::Semicircle { center: c1, radius: r1 },
            GeodesicShape::Semicircle { center: c2, radius: r2 },
        ) => {
            let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
            HPoint::new(x, (r1 * r1 - (x - c1) * (x - c1)).sqrt())
        }
        (GeodesicShape::Vertical { x }, GeodesicShape::Semicircle { center, radius })
        | (GeodesicShape::Semicircle { center, radius }, GeodesicShape::Vertical { x }) => {
            HPoint::new(x, (radius * radius - (x - center) * (x - center)).sqrt())
        }
        _ => unreachable!(),
    }
}

fn angle_between(u: (f64, f64), v: (f64, f64)) -> f64 {
    let raw = (u.0 * v.1 - u.1 * v.0).atan2(u.0 * v.0 + u.1 * v.1);
    if raw > 0.0 {
        raw
    } else {
        raw + PI
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn crossing_matches_circle_geometry((a, b) in crossing_pair()) {
        let t = tol();
        let p = intersection_point(&a, &b, &t).unwrap();
        let q = point_oracle(&a, &b);
        prop_assert!((p.x - q.x).abs() < 1e-7 && (p.y - q.y).abs() < 1e-7, "{p:?} vs {q:?}");
        prop_assert!(a.residual(p) < 1e-9 && b.residual(p) < 1e-9);

        let (u, v) = (tangent_oracle(&a, p), tangent_oracle(&b, p));
        let theta = angle_between(u, v);
        let got = oriented_angle(&a, &b, &t).unwrap();
        prop_assert!((got - theta).abs() < 1e-7, "{got} vs {theta}");
        let cos2 = (u.0 * v.0 + u.1 * v.1).powi(2) / ((u.0 * u.0 + u.1 * u.1) * (v.0 * v.0 + v.1 * v.1));
        prop_assert!((angle_cos2(&a, &b, &t).unwrap() - cos2).abs() < 1e-7);
    }

    #[test]
    fn angles_ignore_orientation_and_argument_order((a, b) in crossing_pair()) {
        let t = tol();
        let theta = oriented_angle(&a, &b, &t).unwrap();
        prop_assert!(theta > 0.0 && theta < PI);
        prop_assert_eq!(oriented_angle(&a.reversed(), &b, &t).unwrap(), theta);
        prop_assert_eq!(oriented_angle(&a, &b.reversed(), &t).unwrap(), theta);
        prop_assert!((oriented_angle(&b, &a, &t).unwrap() - (PI - theta)).abs() < 1e-12);
        prop_assert_eq!(angle_cos2(&a, &b, &t).unwrap(), angle_cos2(&b, &a, &t).unwrap());
    }

    #[test]
    fn isometries_preserve_angles((a, b) in crossing_pair(), g in sl2()) {
        let t = tol();
        let (ga, gb) = (g.transform_geodesic(&a), g.transform_geodesic(&b));
        prop_assume!(crosses(&ga, &gb, &t));
        let before = oriented_angle(&a, &b, &t).unwrap();
        let after = oriented_angle(&ga, &gb, &t).unwrap();
        prop_assert!((before - after).abs() < 1e-6, "{before} vs {after}");
        let p = intersection_point(&a, &b, &t).unwrap();
        let gp = g.apply(p);
        prop_assert!(ga.residual(gp) < 1e-6 && gb.residual(gp) < 1e-6);
    }

    #[test]
    fn isometries_preserve_distance(g in sl2(), x1 in -3.0f64..3.0, y1 in 0.1f64..3.0, x2 in -3.0f64..3.0, y2 in 0.1f64..3.0) {
        let (p, q) = (HPoint::new(x1, y1), HPoint::new(x2, y2));
        let d = hyperbolic_distance(p, q);
        prop_assert!((hyperbolic_distance(g.apply(p), g.apply(q)) - d).abs() < 1e-8 * (1.0 + d));
        // closed form against the arccosh expression
        let cosh = 1.0 + ((x1 - x2).powi(2) + (y1 - y2).powi(2)) / (2.0 * y1 * y2);
        prop_assert!((d - cosh.acosh()).abs() < 1e-7);
    }

    #[test]
    fn arclength_is_hyperbolic_distance(g in geodesic(), s1 in -4.0f64..4.0, s2 in -4.0f64..4.0) {
        let (p, q) = (g.point_at(s1), g.point_at(s2));
        prop_assert!((hyperbolic_distance(p, q) - (s1 - s2).abs()).abs() < 1e-8);
        prop_assert!((g.arclength_param(p) - s1).abs() < 1e-8);
        // increasing parameter runs toward the `to` endpoint
        let ahead = g.point_at(s1 + 1e-3);
        let (tx, ty) = g.unit_tangent(p);
        prop_assert!((ahead.x - p.x) * tx + (ahead.y - p.y) * ty > 0.0);
    }

    #[test]
    fn fixed_points_are_fixed_and_ordered(m in hyperbolic()) {
        let t = tol();
        let (rep, att) = m.fixed_points(&t).unwrap();
        for p in [rep, att] {
            prop_assert!(m.apply_boundary(p).approx_eq(&p, 1e-8), "{p} ↦ {}", m.apply_boundary(p));
        }
        // iterating from a generic interior point approaches the attracting end
        let mut z = HPoint::new(0.123, 0.877);
        let mut w = HPoint::new(0.123, 0.877);
        let inv = m.inverse();
        for _ in 0..60 {
            z = m.apply(z);
            w = inv.apply(w);
        }
        let near = |z: HPoint, p: BoundaryPoint| match p {
            BoundaryPoint::Infinity => z.x.hypot(z.y) > 1e6,
            BoundaryPoint::Finite(x) => (z.x - x).hypot(z.y) < 1e-4 * (1.0 + x.abs()),
        };
        prop_assert!(near(z, att), "{z:?} not near {att}");
        prop_assert!(near(w, rep), "{w:?} not near {rep}");
        let axis = m.axis(&t).unwrap();
        prop_assert!(axis.from().approx_eq(&rep, 1e-9) && axis.to().approx_eq(&att, 1e-9));
    }

    #[test]
    fn conjugation_transports_the_axis(m in hyperbolic(), g in sl2()) {
        let t = tol();
        let direct = m.conjugate_by(&g).axis(&t).unwrap();
        let moved = g.transform_geodesic(&m.axis(&t).unwrap());
        let scale = 1.0 + direct.from().finite().map_or(0.0, f64::abs) + direct.to().finite().map_or(0.0, f64::abs);
        prop_assert!(direct.from().approx_eq(&moved.from(), 1e-7 * scale), "{direct} vs {moved}");
        prop_assert!(direct.to().approx_eq(&moved.to(), 1e-7 * scale), "{direct} vs {moved}");
        let (l1, l2) = (m.translation_length(&t).unwrap(), m.conjugate_by(&g).translation_length(&t).unwrap());
        prop_assert!((l1 - l2).abs() < 1e-8);
    }

    #[test]
    fn class_is_a_conjugacy_invariant(m in sl2(), g in sl2()) {
        let t = tol();
        let tr = m.trace().abs();
        prop_assume!((tr - 2.0).abs() > 1e-6);
        prop_assert_eq!(m.classify(&t), m.conjugate_by(&g).classify(&t));
        prop_assert_eq!(m.classify(&t), m.inverse().classify(&t));
        let expected = if tr > 2.0 { ElementClass::Hyperbolic } else { ElementClass::Elliptic };
        prop_assert_eq!(m.classify(&t), expected);
    }

    #[test]
    fn mirror_is_a_reflection(m in sl2(), n in sl2()) {
        let [a, b, c, d] = m.entries();
        let r = m.mirror();
        prop_assert_eq!(r.entries(), MoebiusElement::new(a, -b, -c, d).unwrap().entries());
        let lhs = m.compose(&n).mirror();
        let rhs = m.mirror().compose(&n.mirror());
        prop_assert!(lhs.projective_distance(&rhs) < 1e-9);
        prop_assert!(r.mirror().projective_distance(&m) == 0.0);
        // z ↦ −z̄ conjugates the action
        let z = HPoint::new(0.3, 1.7);
        let w = m.apply(HPoint::new(-z.x, z.y));
        let v = r.apply(z);
        prop_assert!((v.x + w.x).abs() < 1e-9 * (1.0 + w.x.abs()) && (v.y - w.y).abs() < 1e-9 * (1.0 + w.y));
    }

    #[test]
    fn sign_normalisation_is_projective(m in sl2()) {
        let [a, b, c, d] = m.entries();
        let neg = MoebiusElement::new(-a, -b, -c, -d).unwrap();
        prop_assert_eq!(neg.entries().map(f64::to_bits), m.entries().map(f64::to_bits));
        prop_assert!(m.trace() >= 0.0);
    }
}
