//! Serde encodings with exact rationals written as decimal strings `"p/q"`.
//!
//! * scalars: `["re", "im"]`
//! * Laurent functions: `{"terms": [[m, n, "re", "im"], ...]}` for `Σ c z^m z̄^n`
//! * circle functions: `{"terms": [[k, "re", "im"], ...]}` for `Σ c e^{ikφ}`

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::circle::CircleFn;
use crate::laurent::LaurentFn;
use crate::scalar::{parse_rational, ComplexScalar};

fn parse_pair<E: serde::de::Error>(re: &str, im: &str) -> Result<ComplexScalar, E> {
    let re = parse_rational(re).map_err(E::custom)?;
    let im = parse_rational(im).map_err(E::custom)?;
    Ok(ComplexScalar::new(re, im))
}

impl Serialize for ComplexScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.re.to_string(), self.im.to_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (re, im) = <(String, String)>::deserialize(d)?;
        parse_pair(&re, &im)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaurentJson {
    terms: Vec<(i64, i64, String, String)>,
}

impl Serialize for LaurentFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(&(m, n), c)| (m, n, c.re.to_string(), c.im.to_string()))
            .collect();
        LaurentJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (m, n, re, im) in raw.terms {
            terms.push(((m, n), parse_pair::<D::Error>(&re, &im)?));
        }
        Ok(LaurentFn::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleJson {
    terms: Vec<(i64, String, String)>,
}

impl Serialize for CircleFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(&k, c)| (k, c.re.to_string(), c.im.to_string()))
            .collect();
        CircleJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CircleJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (k, re, im) in raw.terms {
            terms.push((k, parse_pair::<D::Error>(&re, &im)?));
        }
        Ok(CircleFn::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn laurent_wire_format() {
        let u = LaurentFn::from_terms([
            ((1, 0), ComplexScalar::new(ratio(1, 3), ratio(-2, 1))),
            ((-2, 1), ComplexScalar::from_ints(0, 1)),
        ]);
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"{"terms":[[-2,1,"0","1"],[1,0,"1/3","-2"]]}"#);
        assert_eq!(serde_json::from_str::<LaurentFn>(&text).unwrap(), u);
    }

    #[test]
    fn circle_wire_format() {
        let u = CircleFn::sin(2);
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"{"terms":[[-2,"0","1/2"],[2,"0","-1/2"]]}"#);
        assert_eq!(serde_json::from_str::<CircleFn>(&text).unwrap(), u);
    }

    #[test]
    fn malformed_rationals_are_rejected() {
        assert!(serde_json::from_str::<LaurentFn>(r#"{"terms":[[0,0,"1/0","0"]]}"#).is_err());
        assert!(serde_json::from_str::<LaurentFn>(r#"{"terms":[[0,0,"x","0"]]}"#).is_err());
        assert!(serde_json::from_str::<ComplexScalar>(r#"["1","2","3"]"#).is_err());
    }
}
