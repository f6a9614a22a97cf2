use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"` (optional leading sign, surrounding whitespace ignored).
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod qser {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_q, Q};
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| parse_q(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod opt_vec {
        use super::super::{parse_q, Q};
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::vec::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
            Option::<Vec<String>>::deserialize(d)?
                .map(|v| {
                    v.iter()
                        .map(|s| parse_q(s).map_err(serde::de::Error::custom))
                        .collect()
                })
                .transpose()
        }
    }

    pub mod opt_vec_opt {
        //! For per-variable optional bounds: `[ "0", null, "1/2" ]`.
        use super::super::{parse_q, Q};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Option<Q>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Option<String>> = v.iter().map(|x| x.as_ref().map(|x| x.to_string())).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Option<Q>>, D::Error> {
            Vec::<Option<String>>::deserialize(d)?
                .into_iter()
                .map(|x| x.map(|s| parse_q(&s).map_err(serde::de::Error::custom)).transpose())
                .collect()
        }
    }

    pub mod mat {
        use super::super::{parse_q, Q};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            let strs: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            strs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|r| r.iter().map(|s| parse_q(s).map_err(serde::de::Error::custom)).collect())
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_q("3").unwrap(), q(3));
        assert_eq!(parse_q(" -6/4 ").unwrap(), Q::new(BigInt::from(-3), BigInt::from(2)));
        assert_eq!(parse_q("1/-2").unwrap().to_string(), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(parse_q("10/4").unwrap().to_string(), "5/2");
        assert_eq!(parse_q("4/2").unwrap().to_string(), "2");
    }
}
