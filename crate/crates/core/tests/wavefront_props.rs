use proptest::prelude::*;

use sdg_core::wavefront::{
    collinearity_check, external_touch_constant, external_touch_point, offset_front, Orientation, OrientedFront, Point2, Sphere,
};

const TOL: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn offsets_compose(a in 1.0f64..4.0, ratio in 0.3f64..1.0, f1 in 0.05f64..0.45, f2 in 0.05f64..0.45) {
        let b = a * ratio;
        let threshold = b * b / a;
        let (s1, s2) = (f1 * threshold, f2 * threshold);
        let front = OrientedFront::ellipse(a, b, 256).unwrap();
        for orientation in [Orientation::Inner, Orientation::Outer] {
            let once = offset_front(&front, s1 + s2, orientation, TOL).unwrap();
            let first = offset_front(&front, s1, orientation, TOL).unwrap();
            let twice = offset_front(&first.front, s2, orientation, TOL).unwrap();
            for (p, q) in once.front.vertices().iter().zip(twice.front.vertices()) {
                prop_assert!(p.dist(*q) <= 1e-9);
            }
            prop_assert!(!once.has_cusps());
        }
    }

    #[test]
    fn spheres_are_recovered(cx in -5.0f64..5.0, cy in -5.0f64..5.0, r in 0.1f64..10.0, phase in 0.0f64..6.28, k in 3usize..12) {
        let sphere = Sphere::new(Point2::new(cx, cy), r).unwrap();
        let points: Vec<Point2> = (0..k).map(|i| sphere.point_at(phase + i as f64 * 2.0 / k as f64)).collect();
        for fitted in [Sphere::circumcircle(points[0], points[1], points[2]).unwrap(), Sphere::fit(&points).unwrap()] {
            prop_assert!(fitted.center().dist(sphere.center()) <= 1e-9);
            prop_assert!((fitted.radius() - r).abs() <= 1e-9);
        }
    }

    #[test]
    fn touching_spheres(cx in -3.0f64..3.0, theta in 0.0f64..6.28, r in 0.2f64..3.0, s in 0.2f64..3.0, eps in -0.05f64..0.05) {
        let a = Sphere::new(Point2::new(cx, 1.0), r).unwrap();
        let dir = Point2::new(theta.cos(), theta.sin());
        let c = Sphere::new(a.center() + dir * (r + s), s).unwrap();
        let b = external_touch_point(&a, &c, TOL).unwrap();
        prop_assert!((a.center().dist(b) + b.dist(c.center()) - a.center().dist(c.center())).abs() <= 1e-9);
        prop_assert!(collinearity_check(a.center(), b, c.center(), 1e-9).unwrap());
        prop_assert_eq!(external_touch_point(&c, &a, TOL).unwrap(), b);
        // b' on S(a, r) near b: |b'c - bc| <= C |b' - b|^2
        let nearby = a.point_at(theta + eps);
        let bound = external_touch_constant(&a, &c) * nearby.dist(b).powi(2);
        prop_assert!((nearby.dist(c.center()) - b.dist(c.center())).abs() <= bound + 1e-12);
    }
}

#[test]
fn cusps_appear_past_the_smallest_curvature_radius() {
    for (a, b) in [(2.0, 1.0), (3.0, 2.0), (1.5, 0.5), (5.0, 4.0)] {
        let n = 720;
        let front = OrientedFront::ellipse(a, b, n).unwrap();
        let has_cusp = |s: f64| offset_front(&front, s, Orientation::Inner, 0.0).unwrap().has_cusps();
        let (mut lo, mut hi) = (1e-3, 2.0 * a);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if has_cusp(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let spacing = front.vertices()[0].dist(front.vertices()[1]);
        let rho = b * b / a;
        assert!((hi - rho).abs() <= spacing, "{a}x{b}: threshold {hi} vs {rho}");
        assert!(!offset_front(&front, 0.99 * rho, Orientation::Outer, 0.0).unwrap().has_cusps());
    }
}

#[test]
fn circles_grow_and_shrink() {
    let c = Sphere::new(Point2::new(1.0, -2.0), 2.0).unwrap();
    let front = OrientedFront::circle(&c, 256).unwrap();
    for (orientation, s, r) in [(Orientation::Outer, 0.5, 2.5), (Orientation::Inner, 0.5, 1.5), (Orientation::Outer, 3.0, 5.0)] {
        let out = offset_front(&front, s, orientation, TOL).unwrap();
        assert!(out.front.vertices().iter().all(|v| (v.dist(c.center()) - r).abs() <= 1e-9));
        let again = Sphere::fit(out.front.vertices()).unwrap();
        assert!((again.radius() - r).abs() <= 1e-9 && again.center().dist(c.center()) <= 1e-9);
    }
}
