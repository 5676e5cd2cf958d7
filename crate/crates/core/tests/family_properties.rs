use heron_rhombus::exact::{rational_sqrt, Rational};
use heron_rhombus::family::{
    area_equation_residual, brahmagupta_sides, construct, fermat_tangent_point, g_curve,
    sides_proportional, CurvePoint, FamilyError, FamilyParameter, QuarticCurve,
};
use heron_rhombus::shapes::minimal_integral_scale;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_parameters(count: usize, max_height: i64, seed: u64) -> Vec<FamilyParameter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(1..=max_height);
        let n = rng.gen_range(1..=max_height);
        if let Ok(u) = FamilyParameter::new(Rational::new(m, n).unwrap()) {
            out.push(u);
        }
    }
    out
}

/// t₁ = 2u(u²+2)/(3u²−1), s₁ = −2u(u⁶−4u⁴+14u²+3)/(3u²−1)²
fn published_point(u: &Rational) -> (Rational, Rational) {
    let u2 = u.square();
    let d = Rational::from(3) * &u2 - Rational::one();
    let t = (Rational::from(2) * u * (&u2 + Rational::from(2)))
        .checked_div(&d)
        .unwrap();
    let s = (-(Rational::from(2) * u)
        * (u2.pow(3) - Rational::from(4) * u2.square()
            + Rational::from(14) * &u2
            + Rational::from(3)))
    .checked_div(&d.square())
    .unwrap();
    (t, s)
}

#[test]
fn random_family_members_satisfy_every_check() {
    for u in random_parameters(200, 50, 0x5eed) {
        let w = construct(&u).unwrap_or_else(|e| panic!("u = {}: {e}", u.value()));
        let uv = u.value();
        assert_eq!(w.pair.triangle().perimeter(), w.pair.rhombus().perimeter());
        assert_eq!(w.pair.triangle().area().unwrap(), w.pair.rhombus().area());
        assert!(w.curve.contains(&w.point.t, &w.point.s));
        assert!(w.point.t > 1);
        assert!(w.v.is_positive() && w.v < uv.square());
        assert!(area_equation_residual(uv, &w.v, &w.point.t).is_zero());
        let sin = w.pair.rhombus().sin_theta();
        assert!(sin.is_positive() && sin < 1);

        let (t1, s1) = published_point(uv);
        assert_eq!(w.point.t, t1);
        assert_eq!(w.point.s.abs(), s1.abs());

        // the family's v is u²(u²+2)/(4u²+1)
        let u2 = uv.square();
        let expected_v = (&u2 * (&u2 + Rational::from(2)))
            .checked_div(&(Rational::from(4) * &u2 + Rational::one()))
            .unwrap();
        assert_eq!(w.v, expected_v);

        let rebuilt = brahmagupta_sides(uv, &w.v, &Rational::one()).unwrap();
        assert!(sides_proportional(&rebuilt, w.pair.triangle()));

        let scaled = minimal_integral_scale(&w.pair).unwrap();
        assert_eq!(scaled.doublings, 0, "doubling branch taken at u = {}", uv);
        assert!(scaled.pair.is_integral());
        assert_eq!(minimal_integral_scale(&scaled.pair).unwrap().factor, 1);
    }
}

#[test]
fn random_square_ended_quartics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rand_q = |rng: &mut ChaCha8Rng| {
        let n: i64 = rng.gen_range(-60..=60);
        let d: i64 = rng.gen_range(1..=12);
        Rational::new(n, d).unwrap()
    };
    let mut produced = 0;
    for _ in 0..1000 {
        let r = loop {
            let r = rand_q(&mut rng);
            if !r.is_zero() {
                break r;
            }
        };
        let e = rand_q(&mut rng);
        let curve = QuarticCurve::new([
            r.square(),
            rand_q(&mut rng),
            rand_q(&mut rng),
            rand_q(&mut rng),
            e.square(),
        ])
        .unwrap();
        let base = CurvePoint::on(&curve, Rational::zero(), e).unwrap();
        match fermat_tangent_point(&curve, &base) {
            Ok(p) => {
                produced += 1;
                let value = curve.eval(&p.t);
                assert_eq!(p.s.square(), value);
                assert_eq!(rational_sqrt(&value).map(|s| s.abs()), Some(p.s.abs()));
            }
            Err(FamilyError::DegenerateTangent) => {}
            Err(other) => panic!("unexpected {other}"),
        }
    }
    assert!(produced > 900);
}

#[test]
fn g_is_palindromic_with_square_ends() {
    for u in random_parameters(50, 30, 11) {
        let c = g_curve(u.value()).unwrap().coefficients().clone();
        assert_eq!(c[0], c[4]);
        assert_eq!(c[1], c[3]);
        assert_eq!(rational_sqrt(&c[0]), Some(Rational::from(2) * u.value()));
    }
}
