//! Isosceles triangles against rational-angle rhombi: the matching condition,
//! its discriminant sextic, and a bounded search for rational points on
//! `W² = U⁶ − 4U⁴ + 8U² − 4`.
//!
//! The isosceles triangle with legs `u²+v²`, base `2(u²−v²)` and altitude
//! `2uv` has perimeter `4u²`, so the rhombus side is `p = u²`. Equal area then
//! reads `k t² − u³ t + k = 0` with `k = v(u−v)(u+v)`, whose discriminant is
//! `u⁶ − 4u⁴v² + 8u²v⁴ − 4v⁶ = v⁶ · sextic(u/v)`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{integer_sqrt, rational_sqrt, ArithmeticError, Rational};
use crate::shapes::{Pair, Provenance, Rhombus, ShapeError, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoscelesError {
    #[error("need u > v > 0, got u = {u}, v = {v}")]
    Degenerate { u: Rational, v: Rational },
    #[error("({u}, {w}) is not on the sextic")]
    NotOnSextic { u: Rational, w: Rational },
    #[error("height bound must be at least 1")]
    EmptyRange,
    #[error("discriminant {0} is not a rational square, no rational angle parameter")]
    NoRationalAngle(Rational),
    #[error("internal check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Rational isosceles triangle parametrized by `u > v > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoscelesTriangle {
    u: Rational,
    v: Rational,
}

impl IsoscelesTriangle {
    pub fn new(u: Rational, v: Rational) -> Result<Self, IsoscelesError> {
        if !v.is_positive() || u <= v {
            return Err(IsoscelesError::Degenerate { u, v });
        }
        Ok(IsoscelesTriangle { u, v })
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn leg(&self) -> Rational {
        self.u.square() + self.v.square()
    }

    pub fn base(&self) -> Rational {
        Rational::from(2) * (self.u.square() - self.v.square())
    }

    pub fn altitude(&self) -> Rational {
        Rational::from(2) * &self.u * &self.v
    }

    pub fn area(&self) -> Rational {
        Rational::from(2) * &self.u * &self.v * (self.u.square() - self.v.square())
    }

    pub fn perimeter(&self) -> Rational {
        Rational::from(4) * self.u.square()
    }

    pub fn to_triangle(&self) -> Result<Triangle, ShapeError> {
        Triangle::new(self.leg(), self.leg(), self.base())
    }
}

pub fn isosceles_shape(u: &Rational, v: &Rational) -> Result<IsoscelesTriangle, IsoscelesError> {
    IsoscelesTriangle::new(u.clone(), v.clone())
}

/// `U⁶ − 4U⁴ + 8U² − 4`.
pub fn sextic_value(x: &Rational) -> Rational {
    let x2 = x.square();
    // Horner in U²
    ((&x2 - Rational::from(4)) * &x2 + Rational::from(8)) * &x2 - Rational::from(4)
}

/// `u⁶ − 4u⁴v² + 8u²v⁴ − 4v⁶`, the discriminant of the matching quadratic.
pub fn matching_discriminant(u: &Rational, v: &Rational) -> Rational {
    let (u2, v2) = (u.square(), v.square());
    u2.pow(3) - Rational::from(4) * u2.square() * &v2 + Rational::from(8) * &u2 * v2.square()
        - Rational::from(4) * v2.pow(3)
}

/// Rational roots `t` of `k t² − u³ t + k = 0`, `k = v(u−v)(u+v)`, larger first.
pub fn match_quadratic(
    u: &Rational,
    v: &Rational,
) -> Result<Option<(Rational, Rational)>, IsoscelesError> {
    IsoscelesTriangle::new(u.clone(), v.clone())?;
    let k = v * (u - v) * (u + v);
    let u3 = u.pow(3);
    let disc = matching_discriminant(u, v);
    let Some(root) = rational_sqrt(&disc) else {
        return Ok(None);
    };
    let two_k = Rational::from(2) * &k;
    let t_plus = (&u3 + &root).checked_div(&two_k)?;
    let t_minus = (&u3 - &root).checked_div(&two_k)?;
    for t in [&t_plus, &t_minus] {
        let residual = &k * t.square() - &u3 * t + &k;
        if !residual.is_zero() {
            return Err(IsoscelesError::Inconsistent(format!(
                "quadratic residual {residual} at t = {t}"
            )));
        }
    }
    Ok(Some((t_plus, t_minus)))
}

/// Builds the isosceles pair at `(u, v)` if one exists.
///
/// Every call is expected to fail: the only rational points on the sextic
/// force `u = v`, which is excluded.
pub fn isosceles_pair(u: &Rational, v: &Rational) -> Result<Pair, IsoscelesError> {
    let shape = isosceles_shape(u, v)?;
    let (t_plus, t_minus) = match_quadratic(u, v)?
        .ok_or_else(|| IsoscelesError::NoRationalAngle(matching_discriminant(u, v)))?;
    // roots have product 1; keep the one at least 1
    let t = if t_plus >= 1 { t_plus } else { t_minus };
    let rhombus = Rhombus::new(u.square(), t)?;
    Ok(Pair::new(
        shape.to_triangle()?,
        rhombus,
        Provenance::Record,
    )?)
}

/// Rational point on `W² = U⁶ − 4U⁴ + 8U² − 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SexticPoint {
    u: Rational,
    w: Rational,
}

impl SexticPoint {
    pub fn new(u: Rational, w: Rational) -> Result<Self, IsoscelesError> {
        if w.square() != sextic_value(&u) {
            return Err(IsoscelesError::NotOnSextic { u, w });
        }
        Ok(SexticPoint { u, w })
    }

    /// The `U` coordinate.
    pub fn x(&self) -> &Rational {
        &self.u
    }

    /// The `W` coordinate.
    pub fn y(&self) -> &Rational {
        &self.w
    }
}

#[derive(Debug, Clone)]
pub struct SexticScan {
    pub height: u64,
    pub candidates_tested: u64,
    /// Sorted ascending by `(U, W)`.
    pub points: Vec<SexticPoint>,
    pub elapsed: Duration,
}

/// Integer numerator of `sextic(m/n)·n⁶`; coprime to `n` when `gcd(m, n) = 1`.
fn sextic_numerator(m: &BigInt, n: &BigInt) -> BigInt {
    let (m2, n2) = (m * m, n * n);
    let (m4, n4) = (&m2 * &m2, &n2 * &n2);
    &m4 * &m2 - 4 * &m4 * &n2 + 8 * &m2 * &n4 - 4 * &n4 * &n2
}

/// `(m, n, √numerator)` for a square sextic numerator.
type Hit = (u64, u64, BigInt);

/// All `U = ±m/n` in lowest terms with `0 ≤ m ≤ H`, `1 ≤ n ≤ H` making the
/// sextic a rational square, reported with both signs of `W`.
pub fn sextic_scan(height: u64) -> Result<SexticScan, IsoscelesError> {
    if height < 1 {
        return Err(IsoscelesError::EmptyRange);
    }
    let start = Instant::now();
    // the sextic is even, so only m ≥ 0 is searched and U → −U restores the rest
    let per_denominator: Vec<(u64, Vec<Hit>)> = (1..=height)
        .into_par_iter()
        .map(|n| {
            let big_n = BigInt::from(n);
            let mut tested = 0u64;
            let mut hits = Vec::new();
            for m in 0..=height {
                if m.gcd(&n) != 1 {
                    continue;
                }
                tested += 1;
                let numerator = sextic_numerator(&BigInt::from(m), &big_n);
                if let Ok((root, true)) = integer_sqrt(&numerator) {
                    hits.push((m, n, root));
                }
            }
            (tested, hits)
        })
        .collect();

    let mut candidates_tested = 0;
    let mut points = BTreeSet::new();
    for (tested, hits) in per_denominator {
        candidates_tested += tested;
        for (m, n, root) in hits {
            let n3 = BigInt::from(n).pow(3);
            let w = Rational::new(root, n3)?;
            let x = Rational::new(m, n)?;
            for ux in [x.clone(), -x.clone()] {
                for wy in [w.clone(), -w.clone()] {
                    points.insert(SexticPoint::new(ux.clone(), wy)?);
                }
            }
        }
    }
    Ok(SexticScan {
        height,
        candidates_tested,
        points: points.into_iter().collect(),
        elapsed: start.elapsed(),
    })
}

/// Polynomial in `u, v` with rational coefficients, keyed by `(deg_u, deg_v)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn monomial(coefficient: i64, deg_u: u32, deg_v: u32) -> Self {
        let mut p = BivariatePoly::default();
        p.add_term((deg_u, deg_v), Rational::from(coefficient));
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn sum(terms: &[BivariatePoly]) -> Self {
        let mut out = BivariatePoly::default();
        for p in terms {
            for (k, c) in &p.terms {
                out.add_term(*k, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &BivariatePoly) -> Self {
        let mut out = BivariatePoly::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    /// Substitutes `u := v`.
    pub fn set_u_equal_v(&self) -> Self {
        let mut out = BivariatePoly::default();
        for ((a, b), c) in &self.terms {
            out.add_term((0, a + b), c.clone());
        }
        out
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, ((a, b), c)| {
                acc + c * u.pow(*a) * v.pow(*b)
            })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `(coefficient, deg_u, deg_v)`, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Rational, u32, u32)> {
        match self.terms.iter().collect::<Vec<_>>().as_slice() {
            [((a, b), c)] => Some(((*c).clone(), *a, *b)),
            _ => None,
        }
    }
}

/// Coefficients `(k, −u³, k)` of the matching quadratic in `t`, and its
/// discriminant, as polynomials in `u, v`.
pub fn matching_polynomials() -> ([BivariatePoly; 3], BivariatePoly) {
    let m = BivariatePoly::monomial;
    // k = v(u − v)(u + v) = u²v − v³
    let k = m(1, 0, 1).mul(&BivariatePoly::sum(&[m(1, 2, 0), m(-1, 0, 2)]));
    let linear = m(-1, 3, 0);
    let disc = BivariatePoly::sum(&[m(1, 6, 0), m(-4, 4, 2), m(8, 2, 4), m(-4, 0, 6)]);
    ([k.clone(), linear, k], disc)
}

/// Symbolic check that `u = v` collapses the matching system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyReport {
    /// Quadratic coefficients after substituting `u = v`, as `(coeff, deg_v)` monomials.
    pub quadratic_after_substitution: [BivariatePoly; 3],
    pub discriminant_after_substitution: BivariatePoly,
    /// `t²` and constant coefficients vanish identically.
    pub outer_coefficients_vanish: bool,
    /// The linear coefficient is `−v³`, so the equation reads `v³ t = 0`.
    pub linear_is_minus_cube: bool,
    /// The discriminant is `v⁶`, so `w = ±v³`.
    pub discriminant_is_sixth_power: bool,
    /// Base `2(u²−v²)` and area `2uv(u²−v²)` vanish identically at `u = v`.
    pub triangle_flat: bool,
    /// The constructor rejects `u = v` at these sampled values.
    pub sampled_rejections: Vec<(Rational, bool)>,
}

impl DegeneracyReport {
    pub fn holds(&self) -> bool {
        self.outer_coefficients_vanish
            && self.linear_is_minus_cube
            && self.discriminant_is_sixth_power
            && self.triangle_flat
            && self
                .sampled_rejections
                .iter()
                .all(|(_, rejected)| *rejected)
    }
}

pub fn degenerate_witness() -> DegeneracyReport {
    let (quadratic, disc) = matching_polynomials();
    let substituted = quadratic.clone().map(|p| p.set_u_equal_v());
    let disc_sub = disc.set_u_equal_v();
    let outer_coefficients_vanish = substituted[0].is_zero() && substituted[2].is_zero();
    let linear_is_minus_cube = substituted[1].as_monomial() == Some((Rational::from(-1), 0, 3));
    let discriminant_is_sixth_power = disc_sub.as_monomial() == Some((Rational::one(), 0, 6));
    let m = BivariatePoly::monomial;
    let base = BivariatePoly::sum(&[m(2, 2, 0), m(-2, 0, 2)]);
    let area = BivariatePoly::sum(&[m(2, 3, 1), m(-2, 1, 3)]);
    let triangle_flat = base.set_u_equal_v().is_zero() && area.set_u_equal_v().is_zero();
    let sampled_rejections = ["1", "2", "1/3", "7/5"]
        .iter()
        .map(|s| {
            let v: Rational = s.parse().expect("literal");
            let rejected = matches!(
                IsoscelesTriangle::new(v.clone(), v.clone()),
                Err(IsoscelesError::Degenerate { .. })
            );
            (v, rejected)
        })
        .collect();
    DegeneracyReport {
        quadratic_after_substitution: substituted,
        discriminant_after_substitution: disc_sub,
        outer_coefficients_vanish,
        linear_is_minus_cube,
        discriminant_is_sixth_power,
        triangle_flat,
        sampled_rejections,
    }
}
