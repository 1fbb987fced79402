//! Exact rational helpers and their `"a/b"` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `a` or `a/b` with positive denominator.
pub fn to_text(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn from_text(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn floor_i64(v: &Q) -> i64 {
    v.floor().to_integer().to_i64().expect("fits in i64")
}

pub fn ceil_i64(v: &Q) -> i64 {
    v.ceil().to_integer().to_i64().expect("fits in i64")
}

/// The integer value if `v` is integral.
pub fn as_integer(v: &Q) -> Option<i64> {
    if v.is_integer() {
        v.to_integer().to_i64()
    } else {
        None
    }
}

/// Binomial coefficient `C(n, k)` in arbitrary precision; zero outside
/// `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

pub fn is_negative(v: &Q) -> bool {
    v.is_negative()
}

/// Serde adapter storing a rational as its text form.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_text(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        from_text(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

/// Serde adapter for `Option<Q>`.
pub mod serde_opt_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&to_text(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| from_text(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for v in [frac(-5, 2), q(7), frac(10, 4), q(0)] {
            assert_eq!(from_text(&to_text(&v)), Some(v));
        }
        assert_eq!(to_text(&frac(10, -4)), "-5/2");
        assert_eq!(from_text("1/0"), None);
    }

    #[test]
    fn rounding() {
        assert_eq!(floor_i64(&frac(-5, 2)), -3);
        assert_eq!(ceil_i64(&frac(-5, 2)), -2);
        assert_eq!(ceil_i64(&frac(28, 3)), 10);
        assert_eq!(as_integer(&frac(10, 2)), Some(5));
        assert_eq!(as_integer(&frac(5, 2)), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 2), BigInt::from(36));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
