//! The JSON sequence-spec document accepted by every subcommand.
//!
//! Three shapes, tagged by `type`:
//!
//! ```json
//! {"type":"linear","coeffs":[1,1],"initial":[0,1]}
//! {"type":"nonlinear","k":1,"sign":1,"poly":[{"exps":[2],"c":1}],"initial":[1,1]}
//! {"type":"polynomial","poly":[1,0,1]}
//! ```
//!
//! Integers may be given as JSON numbers of any size (the parser keeps
//! full precision) or as decimal strings. Unknown fields are rejected.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use recurseq_core::algebra::IntPoly;
use recurseq_core::recurrence::{
    LinearRecurrence, MultiPoly, NonlinearRecurrence, SequenceSource, Sign,
};

/// Arbitrary-precision integer that serializes as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl fmt::Display for JsonInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let number = serde_json::Number::from_str(&self.0.to_string())
            .map_err(|e| serde::ser::Error::custom(e))?;
        number.serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(serde_json::Number),
    Str(String),
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = IntRepr::deserialize(deserializer)?;
        let text = match &repr {
            IntRepr::Num(n) => n.to_string(),
            IntRepr::Str(s) => s.trim().to_string(),
        };
        BigInt::from_str(&text)
            .map(JsonInt)
            .map_err(|_| D::Error::custom(format!("expected an integer, got `{text}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub exps: Vec<u32>,
    pub c: JsonInt,
}

/// Parsed sequence-spec document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceSpec {
    Linear {
        coeffs: Vec<JsonInt>,
        initial: Vec<JsonInt>,
    },
    Nonlinear {
        k: usize,
        sign: i8,
        poly: Vec<MonomialSpec>,
        initial: Vec<JsonInt>,
    },
    Polynomial {
        poly: Vec<JsonInt>,
    },
}

fn ints(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|j| j.0.clone()).collect()
}

impl SequenceSpec {
    /// Parses a document, reporting `line:column` on malformed input.
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text)
            .map_err(|e| format!("invalid sequence spec at line {}, column {}: {e}", e.line(), e.column()))
    }

    pub fn to_source(&self) -> Result<SequenceSource, String> {
        match self {
            SequenceSpec::Linear { coeffs, initial } => {
                let rec = LinearRecurrence::new(ints(coeffs), ints(initial))
                    .map_err(|e| e.to_string())?;
                Ok(SequenceSource::Linear(rec))
            }
            SequenceSpec::Nonlinear {
                k,
                sign,
                poly,
                initial,
            } => {
                let sign = Sign::from_i8(*sign).map_err(|e| e.to_string())?;
                let terms = poly
                    .iter()
                    .map(|m| {
                        if m.exps.len() != *k {
                            return Err(format!(
                                "monomial has {} exponents but k = {k}",
                                m.exps.len()
                            ));
                        }
                        Ok((m.exps.clone(), m.c.0.clone()))
                    })
                    .collect::<Result<Vec<_>, String>>()?;
                let f = MultiPoly::new(*k, terms).map_err(|e| e.to_string())?;
                let rec = NonlinearRecurrence::new(sign, f, ints(initial))
                    .map_err(|e| e.to_string())?;
                Ok(SequenceSource::Nonlinear(rec))
            }
            SequenceSpec::Polynomial { poly } => {
                Ok(SequenceSource::Polynomial(IntPoly::new(ints(poly))))
            }
        }
    }

    /// Linear recurrences only; several subcommands require them.
    pub fn to_linear(&self) -> Result<LinearRecurrence, String> {
        match self.to_source()? {
            SequenceSource::Linear(rec) => Ok(rec),
            _ => Err("this operation requires a linear recurrence spec".into()),
        }
    }

    pub fn from_linear(rec: &LinearRecurrence) -> Self {
        SequenceSpec::Linear {
            coeffs: rec.coeffs().iter().cloned().map(JsonInt).collect(),
            initial: rec.initial().iter().cloned().map(JsonInt).collect(),
        }
    }
}

/// Comma-separated ascending coefficient list, the CLI's polynomial
/// syntax: `1,-1,-1` is `1 - x - x^2`.
pub fn parse_coeff_list(text: &str) -> Result<IntPoly, String> {
    let coeffs = text
        .split(',')
        .map(|part| {
            BigInt::from_str(part.trim())
                .map_err(|_| format!("`{}` is not an integer", part.trim()))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Renders a polynomial in the same comma-separated syntax.
pub fn coeff_list(poly: &IntPoly) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    poly.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
