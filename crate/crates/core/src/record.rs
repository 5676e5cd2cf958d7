//! Flat serialized form of a [`Pair`] and its independent re-verification.

use serde::{Deserialize, Serialize};

use crate::exact::Rational;
use crate::shapes::{Pair, Provenance, Rhombus, Triangle};

/// One pair as a flat record; every number in `"num/den"` text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub triangle: [Rational; 3],
    pub rhombus_side: Rational,
    pub angle_param: Rational,
    pub sin_theta: Rational,
    pub cos_theta: Rational,
    pub perimeter: Rational,
    pub area: Rational,
    /// Claims the triangle is Heron; checked only when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heron: Option<bool>,
}

impl PairRecord {
    pub fn from_pair(pair: &Pair) -> Self {
        let rhombus = pair.rhombus();
        PairRecord {
            triangle: pair.triangle().sides().clone(),
            rhombus_side: rhombus.side().clone(),
            angle_param: rhombus.angle_param().clone(),
            sin_theta: rhombus.sin_theta(),
            cos_theta: rhombus.cos_theta(),
            perimeter: pair.perimeter(),
            area: pair.area(),
            heron: None,
        }
    }

    pub fn with_heron_claim(mut self, pair: &Pair) -> Self {
        self.heron = Some(pair.triangle().is_heron());
        self
    }
}

/// Which invariant a record broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.invariant, self.detail)
    }
}

fn violation(invariant: &'static str, detail: impl Into<String>) -> Violation {
    Violation {
        invariant,
        detail: detail.into(),
    }
}

/// Rebuilds the pair from scratch, naming the first invariant that fails.
pub fn verify_record(record: &PairRecord) -> Result<Pair, Violation> {
    let [a, b, c] = record.triangle.clone();
    let triangle =
        Triangle::new(a, b, c).map_err(|e| violation("triangle validity", e.to_string()))?;
    let rhombus = Rhombus::new(record.rhombus_side.clone(), record.angle_param.clone())
        .map_err(|e| violation("rhombus validity", e.to_string()))?;

    let (sin, cos) = (rhombus.sin_theta(), rhombus.cos_theta());
    if record.sin_theta != sin || record.cos_theta != cos {
        return Err(violation(
            "angle identity",
            format!(
                "t = {} gives sin θ = {sin}, cos θ = {cos}; record has {}, {}",
                record.angle_param, record.sin_theta, record.cos_theta
            ),
        ));
    }
    if record.sin_theta.square() + record.cos_theta.square() != Rational::one() {
        return Err(violation("angle identity", "sin² θ + cos² θ ≠ 1"));
    }

    let (tp, rp) = (triangle.perimeter(), rhombus.perimeter());
    if tp != rp || record.perimeter != tp {
        return Err(violation(
            "perimeter equality",
            format!("triangle {tp}, rhombus {rp}, record {}", record.perimeter),
        ));
    }

    let rhombus_area = rhombus.area();
    let Some(triangle_area) = triangle.area() else {
        return Err(violation("area equality", "triangle area is irrational"));
    };
    if triangle_area != rhombus_area || record.area != triangle_area {
        return Err(violation(
            "area equality",
            format!(
                "triangle {triangle_area}, rhombus {rhombus_area}, record {}",
                record.area
            ),
        ));
    }

    if let Some(claim) = record.heron {
        let actual = triangle.is_heron() && rhombus.is_integral();
        if claim != actual {
            return Err(violation(
                "heron claim",
                format!("record claims {claim}, integral Heron pair is {actual}"),
            ));
        }
    }

    Pair::new(triangle, rhombus, Provenance::Record)
        .map_err(|e| violation("pair construction", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PairRecord {
        let pair = Pair::new(
            Triangle::from_integers(8, 15, 17).unwrap(),
            Rhombus::new(10.into(), 3.into()).unwrap(),
            Provenance::Record,
        )
        .unwrap();
        PairRecord::from_pair(&pair).with_heron_claim(&pair)
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_value(sample()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "triangle": ["8", "15", "17"],
                "rhombus_side": "10",
                "angle_param": "3",
                "sin_theta": "3/5",
                "cos_theta": "4/5",
                "perimeter": "40",
                "area": "60",
                "heron": true
            })
        );
    }

    #[test]
    fn verify_accepts_valid() {
        assert!(verify_record(&sample()).is_ok());
    }

    #[test]
    fn verify_names_failures() {
        let mut r = sample();
        r.area = 61.into();
        assert_eq!(verify_record(&r).unwrap_err().invariant, "area equality");

        let mut r = sample();
        r.perimeter = 41.into();
        assert_eq!(
            verify_record(&r).unwrap_err().invariant,
            "perimeter equality"
        );

        let mut r = sample();
        r.sin_theta = "4/5".parse().unwrap();
        assert_eq!(verify_record(&r).unwrap_err().invariant, "angle identity");

        let mut r = sample();
        r.triangle[2] = 30.into();
        assert_eq!(
            verify_record(&r).unwrap_err().invariant,
            "triangle validity"
        );

        let mut r = sample();
        r.heron = Some(false);
        assert_eq!(verify_record(&r).unwrap_err().invariant, "heron claim");
    }
}
