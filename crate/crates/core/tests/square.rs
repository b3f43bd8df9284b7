use peglab::gen::{random_lipschitz_pair, random_trace, seeded_rng};
use peglab::geom::Point;
use peglab::pinch::{phi_n, phi_n_inv};
use peglab::square::{conserved_residual, find_inscribed_square, shaped_residual, Shape, SquareQuad};
use peglab::{int, rat, Rational};
use proptest::prelude::*;

fn quad() -> impl Strategy<Value = SquareQuad<Rational>> {
    (-50i64..50, -50i64..50, -50i64..50, -50i64..50).prop_map(|(x, y, a, b)| SquareQuad::new(rat(x, 4), rat(y, 4), rat(a, 4), rat(b, 4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cycling_vertices_is_a_quarter_turn(q in quad()) {
        let v = q.vertices();
        let next = q.next_vertex_first();
        let w = next.vertices();
        for k in 0..4 {
            prop_assert_eq!(&w[k], &v[(k + 1) % 4]);
        }
        prop_assert_eq!(next.next_vertex_first().next_vertex_first().next_vertex_first(), q);
    }

    #[test]
    fn square_sides_are_equal_and_perpendicular(q in quad()) {
        let v = q.vertices();
        let side = |k: usize| (&v[(k + 1) % 4].x - &v[k].x, &v[(k + 1) % 4].y - &v[k].y);
        for k in 0..4 {
            let (ax, ay) = side(k);
            let (bx, by) = side((k + 1) % 4);
            prop_assert_eq!(&ax * &bx + &ay * &by, int(0));
            prop_assert_eq!(&ax * &ax + &ay * &ay, &bx * &bx + &by * &by);
        }
    }

    #[test]
    fn conserved_identity_is_exact(seed in any::<u64>(), points in 2usize..40) {
        let trace = random_trace(&mut seeded_rng(seed), points, 5);
        prop_assert_eq!(conserved_residual(&trace), int(0));
    }

    #[test]
    fn shaped_identity_is_exact(seed in any::<u64>(), s in 0i64..20, r in 1i64..20) {
        let trace = random_trace(&mut seeded_rng(seed), 12, 5);
        let shape = Shape::trapezoid(rat(s, 7), rat(r, 7)).unwrap();
        prop_assert_eq!(shaped_residual(&trace, &shape), int(0));
    }

    #[test]
    fn phi_round_trips_and_keeps_order(u in -8.0f64..8.0, y in -5.0f64..5.0, du in 0.01f64..1.0, n in 1u32..32) {
        let n = f64::from(n);
        let p = Point::new(u * n, y);
        let image = phi_n(&p, n);
        prop_assert!(image.x.abs() < n);
        let back = phi_n_inv(&image, n).unwrap();
        prop_assert!((back.x - p.x).abs() < 1e-6 * n && (back.y - y).abs() < 1e-6 * (1.0 + y.abs()));
        let right = phi_n(&Point::new((u + du) * n, y), n);
        prop_assert!(right.x > image.x);
        prop_assert!(image.y * y >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_lipschitz_pairs_have_inscribed_squares(seed in any::<u64>(), pieces in 1usize..8) {
        let (f, g) = random_lipschitz_pair(&mut seeded_rng(seed), pieces, 0.9);
        let found = find_inscribed_square(&f, &g, 1024, 1e-12).unwrap();
        prop_assert!(found.max_residual() < 1e-9, "{:?}", found.residuals);
        prop_assert!(found.square.a.hypot(found.square.b) > 0.0);
    }
}
