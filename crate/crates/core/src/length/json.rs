use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{format_rational, parse_rational, Polynomial};
use crate::error::{Error, Result};

use super::{LengthFunction, QuasiPolynomial, Side, Tail};

/// Wire form of a [`LengthFunction`].
///
/// Reading is lenient about the core window: it is widened with tail values
/// as needed, and whatever the file does state is checked against the tails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthFunctionJson {
    pub d: usize,
    #[serde(default)]
    pub core: CoreJson,
    pub pos_tail: TailJson,
    pub neg_tail: TailJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreJson {
    pub start: i64,
    pub values: Vec<IntValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TailJson {
    Vanishing,
    Quasipoly {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        valid_from: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        valid_to: Option<i64>,
        polys: Vec<Vec<String>>,
    },
}

/// Integer written either as a JSON number or, when large, a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntValue(pub BigInt);

impl Serialize for IntValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IntValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(IntValue(BigInt::from(v))),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(IntValue)
                .map_err(|_| serde::de::Error::custom(format!("invalid integer {s:?}"))),
        }
    }
}

fn polys_to_json(qp: &QuasiPolynomial) -> Vec<Vec<String>> {
    qp.polys()
        .iter()
        .map(|g| g.coeffs().iter().map(format_rational).collect())
        .collect()
}

fn polys_from_json(polys: &[Vec<String>]) -> Result<QuasiPolynomial> {
    let polys = polys
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|c| parse_rational(c).ok_or_else(|| Error::Input(format!("invalid rational {c:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Polynomial::from_coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiPolynomial::new(polys)
}

impl TailJson {
    fn from_tail(tail: &Tail, side: Side) -> Self {
        match tail {
            Tail::Vanishing => TailJson::Vanishing,
            Tail::QuasiPoly { qp, bound } => TailJson::Quasipoly {
                valid_from: (side == Side::Positive).then_some(*bound),
                valid_to: (side == Side::Negative).then_some(*bound),
                polys: polys_to_json(qp),
            },
        }
    }

    fn to_tail(&self, side: Side) -> Result<Tail> {
        match self {
            TailJson::Vanishing => Ok(Tail::Vanishing),
            TailJson::Quasipoly {
                valid_from,
                valid_to,
                polys,
            } => {
                let bound = match (side, valid_from, valid_to) {
                    (Side::Positive, Some(b), None) | (Side::Negative, None, Some(b)) => *b,
                    (Side::Positive, ..) => {
                        return Err(Error::Input("pos_tail needs `valid_from` (and no `valid_to`)".into()))
                    }
                    (Side::Negative, ..) => {
                        return Err(Error::Input("neg_tail needs `valid_to` (and no `valid_from`)".into()))
                    }
                };
                Ok(Tail::QuasiPoly {
                    qp: polys_from_json(polys)?,
                    bound,
                })
            }
        }
    }
}

impl From<&LengthFunction> for LengthFunctionJson {
    fn from(lf: &LengthFunction) -> Self {
        LengthFunctionJson {
            d: lf.d,
            core: CoreJson {
                start: lf.start,
                values: lf.core.iter().cloned().map(IntValue).collect(),
            },
            pos_tail: TailJson::from_tail(&lf.pos, Side::Positive),
            neg_tail: TailJson::from_tail(&lf.neg, Side::Negative),
        }
    }
}

impl TryFrom<&LengthFunctionJson> for LengthFunction {
    type Error = Error;

    fn try_from(j: &LengthFunctionJson) -> Result<Self> {
        let explicit: BTreeMap<i64, BigInt> = j
            .core
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| (j.core.start + k as i64, v.0.clone()))
            .collect();
        let pos = j.pos_tail.to_tail(Side::Positive)?;
        let neg = j.neg_tail.to_tail(Side::Negative)?;
        LengthFunction::assemble(j.d, &explicit, pos, neg)
    }
}

impl Serialize for LengthFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LengthFunctionJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LengthFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LengthFunctionJson::deserialize(d)?;
        LengthFunction::try_from(&j).map_err(serde::de::Error::custom)
    }
}

impl LengthFunction {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: LengthFunctionJson = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        LengthFunction::try_from(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("length functions always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_padding() {
        let text = r#"{"d":2,"core":{"start":0,"values":[0]},
            "pos_tail":{"kind":"quasipoly","valid_from":1,"polys":[["1"],["1/1"]]},
            "neg_tail":{"kind":"vanishing"}}"#;
        let lf = LengthFunction::from_json_str(text).unwrap();
        assert_eq!(lf.evaluate(0), BigInt::from(0));
        assert_eq!(lf.evaluate(9), BigInt::from(1));
        assert!(lf.end() >= 5);
        let again = LengthFunction::from_json_str(&lf.to_json_string()).unwrap();
        assert_eq!(again, lf);
    }

    #[test]
    fn unknown_fields_and_bad_bounds_rejected() {
        let extra = r#"{"d":2,"core":{"start":0,"values":[1]},"pos_tail":{"kind":"vanishing"},
            "neg_tail":{"kind":"vanishing"},"colour":1}"#;
        assert!(LengthFunction::from_json_str(extra).is_err());
        let wrong_side = r#"{"d":2,"pos_tail":{"kind":"quasipoly","valid_to":0,"polys":[["1"],["1"]]},
            "neg_tail":{"kind":"vanishing"}}"#;
        assert!(LengthFunction::from_json_str(wrong_side).is_err());
        let big = r#"{"d":2,"core":{"start":0,"values":["123456789012345678901234567890"]},
            "pos_tail":{"kind":"vanishing"},"neg_tail":{"kind":"vanishing"}}"#;
        let lf = LengthFunction::from_json_str(big).unwrap();
        assert!(lf.to_json_string().contains("\"123456789012345678901234567890\""));
    }
}
