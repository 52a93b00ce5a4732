use serde::{Deserialize, Serialize};

use super::curve::{CurvePoint, Divisor, GluedCurve, P1Point};
use super::CurveError;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SpecialPointJson {
    pub point: String,
    pub multiplicity: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub special: Vec<SpecialPointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DivisorTermJson {
    pub point: String,
    #[serde(default)]
    pub copy: u32,
    pub coeff: i64,
}

impl CurveJson {
    pub fn to_curve(&self) -> Result<GluedCurve, CurveError> {
        let special = self
            .special
            .iter()
            .map(|s| Ok((s.point.parse::<P1Point>()?, s.multiplicity)))
            .collect::<Result<Vec<_>, CurveError>>()?;
        let curve = GluedCurve::new(special)?;
        match &self.anchor {
            Some(a) => curve.with_anchor(&a.parse()?),
            None => Ok(curve),
        }
    }

    pub fn from_curve(curve: &GluedCurve) -> Self {
        CurveJson {
            special: curve
                .special()
                .iter()
                .map(|(p, m)| SpecialPointJson { point: p.to_string(), multiplicity: *m })
                .collect(),
            anchor: (curve.anchor_index() != 0).then(|| curve.anchor().to_string()),
        }
    }
}

pub fn parse_curve(text: &str) -> Result<GluedCurve, CurveError> {
    let json: CurveJson = serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
    json.to_curve()
}

pub fn curve_to_json(curve: &GluedCurve) -> String {
    serde_json::to_string_pretty(&CurveJson::from_curve(curve)).expect("serializable")
}

pub fn parse_divisor(text: &str, curve: &GluedCurve) -> Result<Divisor, CurveError> {
    let terms: Vec<DivisorTermJson> = serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
    let d = Divisor::from_terms(
        terms
            .iter()
            .map(|t| Ok((CurvePoint::new(t.point.parse()?, t.copy), t.coeff)))
            .collect::<Result<Vec<_>, CurveError>>()?,
    );
    d.validate(curve)?;
    Ok(d)
}

pub fn divisor_to_json(d: &Divisor) -> Vec<DivisorTermJson> {
    d.terms().map(|(p, c)| DivisorTermJson { point: p.base.to_string(), copy: p.copy, coeff: *c }).collect()
}
