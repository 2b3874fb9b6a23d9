//! Exact rational helpers shared by every solver path.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The `k`-th harmonic number `1 + 1/2 + ... + 1/k`; `H(0) = 0`.
pub fn harmonic(k: usize) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, i| acc + frac(1, i as i64))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Exact form, `"p"` for integers and `"p/q"` otherwise.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact form followed by a decimal approximation, for human output.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        format(r)
    } else {
        format!("{} (~{:.6})", format(r), to_f64(r))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter: rationals travel as `"p/q"` strings; integers are accepted
/// on input.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(int(v)),
            Raw::Str(s) => parse(&s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`"))),
        }
    }
}

pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse(s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(3), frac(11, 6));
        assert_eq!(harmonic(4), frac(25, 12));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4"), Some(frac(3, 2)));
        assert_eq!(parse(" -7 "), Some(int(-7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("0.5"), None);
        assert_eq!(format(&frac(601, 100)), "601/100");
        assert_eq!(format(&int(11)), "11");
        assert!(display(&frac(1, 3)).starts_with("1/3 (~0.333333"));
    }
}
