//! `{"ram": R, "lo": lo, "trunc": trunc, "coeffs": [["num", "den"], ...]}` with
//! integers written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PuiseuxSeries;

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    ram: u32,
    lo: i64,
    trunc: i64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            ram: self.ram(),
            lo: self.lo(),
            trunc: self.trunc(),
            coeffs: self.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, den]| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let den: BigInt = den.parse().map_err(D::Error::custom)?;
                if den <= BigInt::from(0) {
                    return Err(D::Error::custom("denominator must be positive"));
                }
                Ok(BigRational::new(n, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PuiseuxSeries::from_parts(raw.ram, raw.lo, raw.trunc, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use num_rational::Rational64;

    #[test]
    fn schema_shape() {
        let s = PuiseuxSeries::from_terms(
            &[(Rational64::new(1, 5), int(1)), (Rational64::new(2, 5), rat(-3, 7))],
            Rational64::new(3, 5),
        );
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"ram": 5, "lo": 1, "trunc": 3, "coeffs": [["1", "1"], ["-3", "7"]]}));
        let back: PuiseuxSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_length() {
        let v = serde_json::json!({"ram": 1, "lo": 0, "trunc": 3, "coeffs": [["1", "1"]]});
        assert!(serde_json::from_value::<PuiseuxSeries>(v).is_err());
    }

    #[test]
    fn big_integers_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = PuiseuxSeries::from_parts(1, 0, 1, vec![BigRational::from_integer(big)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("123456789012345678901234567890"));
        assert_eq!(serde_json::from_str::<PuiseuxSeries>(&text).unwrap(), s);
    }
}
