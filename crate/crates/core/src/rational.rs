//! Arbitrary-precision rationals and the few integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// True iff `v` is 0 or of the form (m-1)/m for an integer m ≥ 2.
pub fn is_standard_coefficient(v: &Q) -> bool {
    if v.is_zero() {
        return true;
    }
    if !v.is_positive() || *v >= Q::one() {
        return false;
    }
    let one_minus = Q::one() - v;
    one_minus.numer().is_one()
}

pub fn gcd_slice(xs: &[u64]) -> u64 {
    xs.iter().fold(0u64, |g, &x| g.gcd(&x))
}

/// gcd of all entries except the one at `skip`.
pub fn gcd_without(xs: &[u64], skip: &[usize]) -> u64 {
    xs.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .fold(0u64, |g, (_, &x)| g.gcd(&x))
}

pub fn q_u(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn floor_i64(v: &Q) -> i64 {
    i64::try_from(v.floor().to_integer()).expect("value fits in i64")
}

pub fn ceil_i64(v: &Q) -> i64 {
    i64::try_from(v.ceil().to_integer()).expect("value fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_coefficients() {
        assert!(is_standard_coefficient(&q(0)));
        assert!(is_standard_coefficient(&frac(1, 2)));
        assert!(is_standard_coefficient(&frac(10, 11)));
        assert!(!is_standard_coefficient(&frac(3, 5)));
        assert!(!is_standard_coefficient(&q(1)));
        assert!(!is_standard_coefficient(&frac(-1, 2)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("6/7"), Some(frac(6, 7)));
        assert_eq!(parse_q("4"), Some(q(4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&frac(-2, 33)), "-2/33");
        assert_eq!(fmt_q(&q(0)), "0");
    }

    #[test]
    fn gcd_helpers() {
        assert_eq!(gcd_slice(&[84, 56, 24, 21]), 1);
        assert_eq!(gcd_without(&[231, 154, 66, 42], &[0]), 2);
        assert_eq!(gcd_without(&[1, 1, 2, 2], &[0, 1]), 2);
    }
}
