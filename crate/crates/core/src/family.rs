//! Infinite family of rational triangle / rational-angle rhombus pairs.
//!
//! With Brahmagupta's parametrization at `w = 1`, equal perimeter fixes the
//! rhombus side `p = u²(v+1)/2`, and equal area reduces to a quadratic in `v`
//! whose discriminant is the quartic
//!
//! ```text
//! g(t) = 4u²t⁴ − 4u(u²+2)t³ + u²(u²+8)t² − 4u(u²+2)t + 4u².
//! ```
//!
//! The known point `(0, 2u)` on `s² = g(t)` yields a second point by matching
//! `s = rt² + qt + 2u` against the quartic so that the `t⁴` and `t³` terms
//! cancel; the leftover `A₂t² + A₁t` has the nonzero root `t₁ = −A₁/A₂`.

use thiserror::Error;

use crate::exact::{rational_sqrt, ArithmeticError, Rational};
use crate::shapes::{Pair, Provenance, Rhombus, ShapeError, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameters must be positive")]
    NonPositiveParameter,
    #[error("u² = {u_squared} must exceed vw = {vw}")]
    BrahmaguptaDegenerate { u_squared: Rational, vw: Rational },
    #[error("leading coefficient of a quartic must be nonzero")]
    NotQuartic,
    #[error("coefficient {0} is not the square of a rational")]
    NonSquareCoefficient(Rational),
    #[error("base point must have t = 0 and s² = c0")]
    BadBasePoint,
    #[error("point ({t}, {s}) is not on the curve")]
    NotOnCurve { t: Rational, s: Rational },
    #[error("tangent construction degenerates (A₂ = 0)")]
    DegenerateTangent,
    #[error("g(t) = {0} is not a rational square")]
    NonSquareDiscriminant(Rational),
    #[error("no root v of the area equation lies in (0, u²)")]
    NoAdmissibleRoot,
    #[error("u² = {0} does not exceed 1/3")]
    OutOfRange(Rational),
    #[error("construction check failed: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// `s² = c4·t⁴ + c3·t³ + c2·t² + c1·t + c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticCurve {
    coefficients: [Rational; 5],
}

impl QuarticCurve {
    /// Coefficients from `c4` down to `c0`.
    pub fn new(coefficients: [Rational; 5]) -> Result<Self, FamilyError> {
        if coefficients[0].is_zero() {
            return Err(FamilyError::NotQuartic);
        }
        Ok(QuarticCurve { coefficients })
    }

    pub fn coefficients(&self) -> &[Rational; 5] {
        &self.coefficients
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients
            .iter()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn contains(&self, t: &Rational, s: &Rational) -> bool {
        s.square() == self.eval(t)
    }
}

/// A rational point on a [`QuarticCurve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub t: Rational,
    pub s: Rational,
}

impl CurvePoint {
    pub fn on(curve: &QuarticCurve, t: Rational, s: Rational) -> Result<Self, FamilyError> {
        if !curve.contains(&t, &s) {
            return Err(FamilyError::NotOnCurve { t, s });
        }
        Ok(CurvePoint { t, s })
    }
}

/// Which square root of `c4` the matching quadratic uses as its leading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeadingSign {
    #[default]
    Negative,
    Positive,
}

/// Family parameter `u` with `u > 0` and `u² > 1/3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParameter(Rational);

impl FamilyParameter {
    pub fn new(u: Rational) -> Result<Self, FamilyError> {
        if !u.is_positive() {
            return Err(FamilyError::NonPositiveParameter);
        }
        let u_squared = u.square();
        if u_squared.clone() * Rational::from(3) <= Rational::one() {
            return Err(FamilyError::OutOfRange(u_squared));
        }
        Ok(FamilyParameter(u))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// `((v+w)(u²−vw), v(u²+w²), w(u²+v²))`.
pub fn brahmagupta_sides(
    u: &Rational,
    v: &Rational,
    w: &Rational,
) -> Result<Triangle, FamilyError> {
    if !(u.is_positive() && v.is_positive() && w.is_positive()) {
        return Err(FamilyError::NonPositiveParameter);
    }
    let u2 = u.square();
    let vw = v * w;
    if u2 <= vw {
        return Err(FamilyError::BrahmaguptaDegenerate { u_squared: u2, vw });
    }
    let a = (v + w) * (&u2 - &vw);
    let b = v * (&u2 + w.square());
    let c = w * (&u2 + v.square());
    Ok(Triangle::new(a, b, c)?)
}

/// The quartic `g` for parameter `u`.
pub fn g_curve(u: &Rational) -> Result<QuarticCurve, FamilyError> {
    if !u.is_positive() {
        return Err(FamilyError::NonPositiveParameter);
    }
    let u2 = u.square();
    let four = Rational::from(4);
    let outer = &four * &u2;
    let odd = -(&four * u * (&u2 + Rational::from(2)));
    let middle = &u2 * (&u2 + Rational::from(8));
    QuarticCurve::new([outer.clone(), odd.clone(), middle, odd, outer])
}

/// New point from `(0, e)` by Fermat's tangent matching, using `r = −√c4`.
pub fn fermat_tangent_point(
    curve: &QuarticCurve,
    base: &CurvePoint,
) -> Result<CurvePoint, FamilyError> {
    fermat_tangent_point_with_sign(curve, base, LeadingSign::Negative)
}

pub fn fermat_tangent_point_with_sign(
    curve: &QuarticCurve,
    base: &CurvePoint,
    sign: LeadingSign,
) -> Result<CurvePoint, FamilyError> {
    let [c4, c3, c2, c1, c0] = curve.coefficients();
    if !base.t.is_zero() || &base.s.square() != c0 {
        return Err(FamilyError::BadBasePoint);
    }
    rational_sqrt(c0).ok_or_else(|| FamilyError::NonSquareCoefficient(c0.clone()))?;
    let root = rational_sqrt(c4).ok_or_else(|| FamilyError::NonSquareCoefficient(c4.clone()))?;
    let r = match sign {
        LeadingSign::Negative => -root,
        LeadingSign::Positive => root,
    };
    let e = &base.s;
    let two = Rational::from(2);
    // A₄ = r² − c4 = 0 and A₃ = 2rq − c3 = 0
    let q = c3.checked_div(&(&two * &r))?;
    let a1 = &two * &q * e - c1;
    let a2 = q.square() + &two * &r * e - c2;
    if a2.is_zero() {
        return Err(FamilyError::DegenerateTangent);
    }
    let t1 = (-a1).checked_div(&a2)?;
    let s1 = &r * t1.square() + &q * &t1 + e;
    CurvePoint::on(curve, t1, s1)
}

/// Left side of the area equation with `w = 1`:
/// `2t²u²v − tu³v − 2t²v² − tu³ + 2u²v − 2v²`.
pub fn area_equation_residual(u: &Rational, v: &Rational, t: &Rational) -> Rational {
    let (u2, t2, v2) = (u.square(), t.square(), v.square());
    let u3 = &u2 * u;
    let two = Rational::from(2);
    &two * &t2 * &u2 * v - t * &u3 * v - &two * &t2 * &v2 - t * &u3 + &two * &u2 * v - &two * &v2
}

/// Solves the area equation for `v`, keeping the root in `(0, u²)`.
///
/// Both roots are frequently admissible and describe the same triangle up to
/// scale; the larger one is returned.
pub fn v_from_t(u: &Rational, t: &Rational) -> Result<Rational, FamilyError> {
    if !u.is_positive() {
        return Err(FamilyError::NonPositiveParameter);
    }
    let g = g_curve(u)?.eval(t);
    let root = rational_sqrt(&g).ok_or(FamilyError::NonSquareDiscriminant(g))?;
    let two = Rational::from(2);
    let t2 = t.square();
    let linear = &two * &t2 * u - t * u.square() + &two * u;
    let denominator = Rational::from(4) * (&t2 + Rational::one());
    let u2 = u.square();
    for numerator in [&linear + &root, &linear - &root] {
        let v = (numerator * u).checked_div(&denominator)?;
        if v.is_positive() && v < u2 {
            if !area_equation_residual(u, &v, t).is_zero() {
                return Err(FamilyError::Inconsistent("area equation residual"));
            }
            return Ok(v);
        }
    }
    Err(FamilyError::NoAdmissibleRoot)
}

/// Every intermediate of the construction at one `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyWitness {
    pub u: Rational,
    pub curve: QuarticCurve,
    pub point: CurvePoint,
    pub v: Rational,
    pub pair: Pair,
}

fn closed_form_angle_param(u: &Rational) -> Result<Rational, ArithmeticError> {
    let u2 = u.square();
    (Rational::from(2) * u * (&u2 + Rational::from(2)))
        .checked_div(&(Rational::from(3) * &u2 - Rational::one()))
}

/// Closed-form sides `(a, b, c)` and rhombus side `p` of the family.
pub fn closed_form_lengths(u: &Rational) -> Result<([Rational; 3], Rational), ArithmeticError> {
    let u2 = u.square();
    let u4 = u2.square();
    let one = Rational::one();
    let d = Rational::from(4) * &u2 + &one;
    let d2 = d.square();
    let common = &u4 + Rational::from(6) * &u2 + &one;
    let a = (&u2 * (Rational::from(3) * &u2 - &one) * &common).checked_div(&d2)?;
    let b = (&u2 * (&u2 + Rational::from(2)) * (&u2 + &one)).checked_div(&d)?;
    let c = (&u2 * (u2.pow(3) + Rational::from(20) * &u4 + Rational::from(12) * &u2 + &one))
        .checked_div(&d2)?;
    let p = (&u2 * &common).checked_div(&(Rational::from(2) * &d))?;
    Ok(([a, b, c], p))
}

/// Runs the full construction for `u` and checks it against the closed forms.
pub fn construct(u: &FamilyParameter) -> Result<FamilyWitness, FamilyError> {
    let u = u.value();
    let curve = g_curve(u)?;
    let base = CurvePoint::on(&curve, Rational::zero(), Rational::from(2) * u)?;
    let point = fermat_tangent_point(&curve, &base)?;
    let t1 = point.t.clone();
    if t1 <= 1 {
        return Err(FamilyError::Inconsistent("t₁ > 1"));
    }
    if t1 != closed_form_angle_param(u)? {
        return Err(FamilyError::Inconsistent("t₁ closed form"));
    }
    let v = v_from_t(u, &t1)?;
    let rebuilt = brahmagupta_sides(u, &v, &Rational::one())?;

    let ([a, b, c], p) = closed_form_lengths(u)?;
    let triangle = Triangle::new(a, b, c)?;
    if !sides_proportional(&rebuilt, &triangle) {
        return Err(FamilyError::Inconsistent(
            "Brahmagupta rebuild proportional to closed form",
        ));
    }
    let half_perimeter_side =
        (u.square() * (&v + Rational::one())).checked_div(&Rational::from(2))?;
    if half_perimeter_side != p {
        return Err(FamilyError::Inconsistent(
            "rhombus side from perimeter equation",
        ));
    }
    let rhombus = Rhombus::new(p, t1)?;
    let sin = rhombus.sin_theta();
    if !(sin.is_positive() && sin < 1) {
        return Err(FamilyError::Inconsistent("0 < sin θ < 1"));
    }
    let pair = Pair::new(triangle, rhombus, Provenance::Family { u: u.clone() })?;
    Ok(FamilyWitness {
        u: u.clone(),
        curve,
        point,
        v,
        pair,
    })
}

/// The rational pair at parameter `u`.
pub fn pair_from_u(u: &FamilyParameter) -> Result<Pair, FamilyError> {
    construct(u).map(|w| w.pair)
}

/// Same sorted side ratios.
pub fn sides_proportional(x: &Triangle, y: &Triangle) -> bool {
    let xs = x.sorted_sides();
    let ys = y.sorted_sides();
    // a_x / a_y == b_x / b_y == c_x / c_y, cross-multiplied
    (&xs[0] * &ys[1] == &xs[1] * &ys[0]) && (&xs[0] * &ys[2] == &xs[2] * &ys[0])
}
