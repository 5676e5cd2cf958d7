//! Brute-force enumeration of integer triangle / rational-angle rhombus pairs
//! sharing perimeter and area, used as ground truth for the family and for the
//! isosceles nonexistence result.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{integer_sqrt, rational_sqrt, ArithmeticError, Rational};
use crate::family::{pair_from_u, FamilyError, FamilyParameter};
use crate::shapes::{minimal_integral_scale, Pair, Provenance, Rhombus, ShapeError, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sin θ = {0} is outside (0, 1]")]
    SineOutOfRange(Rational),
    #[error("unknown filter {0:?} (expected all, heron-only or isosceles-only)")]
    UnknownFilter(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangleFilter {
    /// Every integer triangle. Integer sides with rational area force an
    /// integer area, so this finds the same pairs as `HeronOnly`.
    All,
    #[default]
    HeronOnly,
    IsoscelesOnly,
}

impl TriangleFilter {
    pub fn as_str(self) -> &'static str {
        match self {
            TriangleFilter::All => "all",
            TriangleFilter::HeronOnly => "heron-only",
            TriangleFilter::IsoscelesOnly => "isosceles-only",
        }
    }
}

impl fmt::Display for TriangleFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TriangleFilter {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(TriangleFilter::All),
            "heron-only" => Ok(TriangleFilter::HeronOnly),
            "isosceles-only" => Ok(TriangleFilter::IsoscelesOnly),
            other => Err(OracleError::UnknownFilter(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub filter: TriangleFilter,
    /// Also try perimeters not divisible by 4, with rhombus side `P/4`.
    pub rational_side: bool,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub perimeter_bound: u64,
    pub options: SearchOptions,
    /// Ordered by perimeter, then by sorted triangle sides.
    pub pairs_found: Vec<Pair>,
    pub triangles_tested: u64,
    pub elapsed: Duration,
}

/// `t ≥ 1` with `2t/(t²+1) = sin`, when one is rational.
pub fn recover_t(sin: &Rational) -> Result<Option<Rational>, OracleError> {
    if !sin.is_positive() || *sin > 1 {
        return Err(OracleError::SineOutOfRange(sin.clone()));
    }
    let Some(cos) = rational_sqrt(&(Rational::one() - sin.square())) else {
        return Ok(None);
    };
    // larger root of t² − (2/sin)t + 1 = 0
    let t = (Rational::one() + cos).checked_div(sin)?;
    debug_assert_eq!(
        (Rational::from(2) * &t)
            .checked_div(&(t.square() + Rational::one()))
            .ok()
            .as_ref(),
        Some(sin)
    );
    Ok(Some(t))
}

struct PerimeterResult {
    perimeter: u64,
    tested: u64,
    pairs: Vec<Pair>,
}

fn search_perimeter(
    perimeter: u64,
    filter: TriangleFilter,
) -> Result<PerimeterResult, OracleError> {
    let mut tested = 0;
    let mut pairs = Vec::new();
    let side = Rational::new(perimeter, 4)?;
    let p_sq = side.square();
    let big_p = BigInt::from(perimeter);
    // a ≤ b ≤ c, a + b + c = P, c < a + b  ⇔  c < P/2
    for a in 1..=perimeter / 3 {
        for b in a..=(perimeter - a) / 2 {
            let c = perimeter - a - b;
            if c < b || 2 * c >= perimeter {
                continue;
            }
            if filter == TriangleFilter::IsoscelesOnly && !(a == b || b == c) {
                continue;
            }
            tested += 1;
            // 16A² = P(P − 2a)(P − 2b)(P − 2c)
            let sixteen_area_sq = &big_p
                * BigInt::from(perimeter - 2 * a)
                * BigInt::from(perimeter - 2 * b)
                * BigInt::from(perimeter - 2 * c);
            let (four_area, exact) = integer_sqrt(&sixteen_area_sq)?;
            if !exact {
                continue;
            }
            let area = Rational::new(four_area, 4)?;
            if filter == TriangleFilter::HeronOnly && !area.is_integer() {
                continue;
            }
            let sin = area.checked_div(&p_sq)?;
            if !sin.is_positive() || sin > 1 {
                continue;
            }
            let Some(t) = recover_t(&sin)? else {
                continue;
            };
            let triangle = Triangle::from_integers(a as i64, b as i64, c as i64)?;
            let rhombus = Rhombus::new(side.clone(), t)?;
            let pair = Pair::new(
                triangle,
                rhombus,
                Provenance::Search {
                    perimeter: big_p.clone(),
                },
            )?;
            pairs.push(pair);
        }
    }
    Ok(PerimeterResult {
        perimeter,
        tested,
        pairs,
    })
}

/// Every pair with integer triangle and perimeter at most `bound`.
///
/// Perimeters are processed in parallel on the current rayon pool; the merged
/// result does not depend on scheduling.
pub fn search_pairs(bound: u64, options: SearchOptions) -> Result<SearchReport, OracleError> {
    let start = Instant::now();
    let step = if options.rational_side { 1 } else { 4 };
    let first = if options.rational_side { 3 } else { 4 };
    let perimeters: Vec<u64> = (first..=bound).step_by(step).collect();
    let mut results = perimeters
        .into_par_iter()
        .map(|p| search_perimeter(p, options.filter))
        .collect::<Result<Vec<_>, _>>()?;
    results.sort_by_key(|r| r.perimeter);

    let mut triangles_tested = 0;
    let mut pairs_found = Vec::new();
    for mut r in results {
        triangles_tested += r.tested;
        r.pairs.sort_by_key(|p| p.triangle().sorted_sides());
        pairs_found.append(&mut r.pairs);
    }
    Ok(SearchReport {
        perimeter_bound: bound,
        options,
        pairs_found,
        triangles_tested,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, Default)]
pub struct CrossValidation {
    pub perimeter_bound: u64,
    /// Family witnesses found by the search.
    pub confirmed: Vec<(Rational, Pair)>,
    /// Family witnesses with perimeter above the bound, with that perimeter.
    pub skipped: Vec<(Rational, Rational)>,
    /// Family witnesses within the bound that the search did not produce.
    pub missed: Vec<(Rational, Pair)>,
    /// Search hits not produced by any supplied parameter. Informational.
    pub oracle_only: Vec<Pair>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.missed.is_empty()
    }
}

/// Checks that the minimal integral witness of each `u` appears in the search.
pub fn cross_validate(
    parameters: &[FamilyParameter],
    bound: u64,
) -> Result<CrossValidation, OracleError> {
    let mut out = CrossValidation {
        perimeter_bound: bound,
        ..Default::default()
    };
    let bound_q = Rational::from(BigInt::from(bound));
    let mut in_range = Vec::new();
    for u in parameters {
        let witness = minimal_integral_scale(&pair_from_u(u)?)?.pair;
        if witness.perimeter() > bound_q {
            out.skipped.push((u.value().clone(), witness.perimeter()));
        } else {
            in_range.push((u.value().clone(), witness));
        }
    }
    if in_range.is_empty() {
        return Ok(out);
    }
    let report = search_pairs(
        bound,
        SearchOptions {
            filter: TriangleFilter::HeronOnly,
            rational_side: false,
        },
    )?;
    for (u, witness) in in_range {
        if report
            .pairs_found
            .iter()
            .any(|hit| hit.same_shapes(&witness))
        {
            out.confirmed.push((u, witness));
        } else {
            out.missed.push((u, witness));
        }
    }
    out.oracle_only = report
        .pairs_found
        .into_iter()
        .filter(|hit| !out.confirmed.iter().any(|(_, w)| w.same_shapes(hit)))
        .collect();
    Ok(out)
}
