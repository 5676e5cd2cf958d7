use heron_rhombus::exact::Rational;
use heron_rhombus::shapes::Triangle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Heron's product form, independent of the symmetric quartic used by `area`.
fn heron_product(t: &Triangle) -> Rational {
    let [a, b, c] = t.sides();
    (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
}

#[test]
fn area_squared_matches_side_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let rational = |rng: &mut ChaCha8Rng| {
        Rational::new(rng.gen_range(1..=40i64), rng.gen_range(1..=6i64)).unwrap()
    };
    let mut with_area = 0;
    let mut checked = 0;
    while checked < 1000 {
        let (a, b, c) = (rational(&mut rng), rational(&mut rng), rational(&mut rng));
        let Ok(t) = Triangle::new(a, b, c) else {
            continue;
        };
        checked += 1;
        assert_eq!(t.sixteen_area_squared(), heron_product(&t));
        if let Some(area) = t.area() {
            with_area += 1;
            assert_eq!(Rational::from(16) * area.square(), heron_product(&t));
        }
    }
    // scaled Pythagorean and Heron triples show up often enough with this range
    assert!(with_area > 0);
}

#[test]
fn known_heron_triangles() {
    for (a, b, c, area) in [
        (3, 4, 5, 6),
        (5, 5, 6, 12),
        (13, 14, 15, 84),
        (7, 15, 20, 42),
        (9, 10, 17, 36),
    ] {
        let t = Triangle::from_integers(a, b, c).unwrap();
        assert_eq!(t.area(), Some(Rational::from(area)));
        assert!(t.is_heron());
    }
}
