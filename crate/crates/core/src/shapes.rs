//! Triangles, rational-angle rhombi, and pairs of them sharing perimeter and area.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{lcm_denominators, rational_sqrt, ArithmeticError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("triangle side {0} is not positive")]
    NonPositiveSide(Rational),
    #[error("sides {} violate the strict triangle inequality", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    TriangleInequality(Box<[Rational; 3]>),
    #[error("rhombus side {0} is not positive")]
    NonPositiveRhombusSide(Rational),
    #[error("angle parameter {0} is below 1")]
    AngleParameterBelowOne(Rational),
    #[error("triangle has irrational area")]
    IrrationalArea,
    #[error("perimeters differ: triangle {triangle}, rhombus {rhombus}")]
    PerimeterMismatch {
        triangle: Rational,
        rhombus: Rational,
    },
    #[error("areas differ: triangle {triangle}, rhombus {rhombus}")]
    AreaMismatch {
        triangle: Rational,
        rhombus: Rational,
    },
    #[error("scale factor {0} is not positive")]
    NonPositiveScale(Rational),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Triangle with positive rational sides, kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    sides: [Rational; 3],
}

impl Triangle {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, ShapeError> {
        for side in [&a, &b, &c] {
            if !side.is_positive() {
                return Err(ShapeError::NonPositiveSide(side.clone()));
            }
        }
        if &a + &b <= c || &b + &c <= a || &c + &a <= b {
            return Err(ShapeError::TriangleInequality(Box::new([a, b, c])));
        }
        Ok(Triangle { sides: [a, b, c] })
    }

    pub fn from_integers(a: i64, b: i64, c: i64) -> Result<Self, ShapeError> {
        Triangle::new(a.into(), b.into(), c.into())
    }

    pub fn sides(&self) -> &[Rational; 3] {
        &self.sides
    }

    /// Side multiset in ascending order, the identity used for dedup.
    pub fn sorted_sides(&self) -> [Rational; 3] {
        let mut s = self.sides.clone();
        s.sort();
        s
    }

    pub fn same_shape(&self, other: &Triangle) -> bool {
        self.sorted_sides() == other.sorted_sides()
    }

    pub fn perimeter(&self) -> Rational {
        let [a, b, c] = &self.sides;
        a + b + c
    }

    /// `16·Area² = 2a²b² + 2b²c² + 2c²a² − a⁴ − b⁴ − c⁴`.
    pub fn sixteen_area_squared(&self) -> Rational {
        let [a, b, c] = &self.sides;
        let (a2, b2, c2) = (a.square(), b.square(), c.square());
        let two = Rational::from(2);
        &two * (&a2 * &b2 + &b2 * &c2 + &c2 * &a2) - a2.square() - b2.square() - c2.square()
    }

    /// Exact area, or `None` when it is irrational.
    pub fn area(&self) -> Option<Rational> {
        let sixteen = Rational::from(16);
        let area_squared = self.sixteen_area_squared().checked_div(&sixteen).ok()?;
        rational_sqrt(&area_squared)
    }

    pub fn has_integer_sides(&self) -> bool {
        self.sides.iter().all(Rational::is_integer)
    }

    /// Integer sides and integer area.
    pub fn is_heron(&self) -> bool {
        self.has_integer_sides() && self.area().is_some_and(|a| a.is_integer())
    }

    pub fn is_isosceles(&self) -> bool {
        let [a, b, c] = &self.sides;
        a == b || b == c || a == c
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Triangle, ShapeError> {
        let [a, b, c] = &self.sides;
        Triangle::new(a * factor, b * factor, c * factor)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.sides;
        write!(f, "({a}, {b}, {c})")
    }
}

/// Rhombus with side `p` and smaller angle θ given through `t ≥ 1` by
/// `sin θ = 2t/(t²+1)`, `cos θ = (t²−1)/(t²+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rhombus {
    side: Rational,
    angle_param: Rational,
}

impl Rhombus {
    pub fn new(side: Rational, angle_param: Rational) -> Result<Self, ShapeError> {
        if !side.is_positive() {
            return Err(ShapeError::NonPositiveRhombusSide(side));
        }
        if angle_param < 1 {
            return Err(ShapeError::AngleParameterBelowOne(angle_param));
        }
        Ok(Rhombus { side, angle_param })
    }

    pub fn side(&self) -> &Rational {
        &self.side
    }

    pub fn angle_param(&self) -> &Rational {
        &self.angle_param
    }

    fn t_squared_plus_one(&self) -> Rational {
        self.angle_param.square() + Rational::one()
    }

    pub fn sin_theta(&self) -> Rational {
        let num = Rational::from(2) * &self.angle_param;
        // t ≥ 1 so the denominator is at least 2
        num.checked_div(&self.t_squared_plus_one())
            .expect("t² + 1 > 0")
    }

    pub fn cos_theta(&self) -> Rational {
        let num = self.angle_param.square() - Rational::one();
        num.checked_div(&self.t_squared_plus_one())
            .expect("t² + 1 > 0")
    }

    pub fn perimeter(&self) -> Rational {
        Rational::from(4) * &self.side
    }

    pub fn area(&self) -> Rational {
        self.side.square() * self.sin_theta()
    }

    pub fn is_integral(&self) -> bool {
        self.side.is_integer()
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Rhombus, ShapeError> {
        Rhombus::new(&self.side * factor, self.angle_param.clone())
    }
}

/// Where a pair came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Closed-form family at parameter `u`.
    Family { u: Rational },
    /// Exhaustive search hit at the given perimeter.
    Search { perimeter: BigInt },
    /// Read back from a serialized record.
    Record,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Family { u } => write!(f, "family u={u}"),
            Provenance::Search { perimeter } => write!(f, "search perimeter={perimeter}"),
            Provenance::Record => write!(f, "record"),
        }
    }
}

/// A triangle and a rhombus with exactly equal perimeter and area.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    triangle: Triangle,
    rhombus: Rhombus,
    provenance: Provenance,
}

impl Pair {
    pub fn new(
        triangle: Triangle,
        rhombus: Rhombus,
        provenance: Provenance,
    ) -> Result<Self, ShapeError> {
        let (tp, rp) = (triangle.perimeter(), rhombus.perimeter());
        if tp != rp {
            return Err(ShapeError::PerimeterMismatch {
                triangle: tp,
                rhombus: rp,
            });
        }
        let rhombus_area = rhombus.area();
        match triangle.area() {
            None => return Err(ShapeError::IrrationalArea),
            Some(ta) if ta != rhombus_area => {
                return Err(ShapeError::AreaMismatch {
                    triangle: ta,
                    rhombus: rhombus_area,
                })
            }
            Some(_) => {}
        }
        Ok(Pair {
            triangle,
            rhombus,
            provenance,
        })
    }

    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn rhombus(&self) -> &Rhombus {
        &self.rhombus
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn perimeter(&self) -> Rational {
        self.rhombus.perimeter()
    }

    pub fn area(&self) -> Rational {
        self.rhombus.area()
    }

    /// Both shapes have integer sides and the triangle is Heron.
    pub fn is_integral(&self) -> bool {
        self.rhombus.is_integral() && self.triangle.is_heron()
    }

    /// Same geometry regardless of provenance; triangle compared as a multiset.
    pub fn same_shapes(&self, other: &Pair) -> bool {
        self.triangle.same_shape(&other.triangle) && self.rhombus == other.rhombus
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Pair {
        self.provenance = provenance;
        self
    }
}

/// Multiplies all four lengths by `factor`; `t` is unchanged.
pub fn scale_pair(pair: &Pair, factor: &Rational) -> Result<Pair, ShapeError> {
    if !factor.is_positive() {
        return Err(ShapeError::NonPositiveScale(factor.clone()));
    }
    Pair::new(
        pair.triangle.scaled(factor)?,
        pair.rhombus.scaled(factor)?,
        pair.provenance.clone(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralScaling {
    pub factor: Rational,
    pub pair: Pair,
    /// Times the factor was doubled to make the area integral.
    pub doublings: u32,
}

const MAX_AREA_DOUBLINGS: u32 = 2;

/// Smallest positive factor making all four side lengths integers.
pub fn minimal_integral_scale(pair: &Pair) -> Result<IntegralScaling, ShapeError> {
    let lengths: Vec<&Rational> = pair
        .triangle
        .sides()
        .iter()
        .chain(std::iter::once(pair.rhombus.side()))
        .collect();
    let common_denominator = lcm_denominators(lengths.iter().copied());
    let content = lengths
        .iter()
        .map(|q| q.numer() * (&common_denominator / q.denom()))
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    let mut factor = Rational::new(common_denominator, content)?;
    let mut scaled = scale_pair(pair, &factor)?;
    let mut doublings = 0;
    while !scaled.area().is_integer() && doublings < MAX_AREA_DOUBLINGS {
        factor = factor * Rational::from(2);
        scaled = scale_pair(pair, &factor)?;
        doublings += 1;
    }
    Ok(IntegralScaling {
        factor,
        pair: scaled,
        doublings,
    })
}
