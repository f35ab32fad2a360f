//! Exact rational numbers and their text forms.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// Shorthand for `numer / denom` as a [`Rational`].
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or a decimal literal (`0.89`, `-1.5e3`) exactly.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let err = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(err)?;
        let den = parse_integer(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (negative, unsigned) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let mut numer = BigInt::from_str(&digits).ok()?;
    if negative {
        numer = -numer;
    }
    let mut scale: i64 = -(frac.len() as i64);
    if let Some(exp) = exponent {
        let exp = exp.strip_prefix('+').unwrap_or(exp);
        scale = scale.checked_add(i64::from_str(exp).ok()?)?;
    }
    // keep exponents sane; 10^100000 is not a payoff anyone means
    if scale.unsigned_abs() > 100_000 {
        return None;
    }
    let ten = BigInt::from(10u8);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Some(if scale >= 0 {
        Rational::from_integer(numer * pow)
    } else {
        Rational::new(numer, pow)
    })
}

/// Canonical exact form: an integer, or `p/q` in lowest terms.
pub fn format_exact(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering rounded half away from zero to `digits` places.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u8), digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut n = q;
    // |rem| / denom >= 1/2  <=>  2|rem| >= denom
    if (rem.abs() * 2u8) >= *scaled.denom() {
        if r.is_negative() {
            n -= BigInt::one();
        } else {
            n += BigInt::one();
        }
    }
    let negative = n.is_negative();
    let mut body = n.abs().to_string();
    if digits > 0 {
        if body.len() <= digits {
            let pad = digits + 1 - body.len();
            body.insert_str(0, &"0".repeat(pad));
        }
        body.insert(body.len() - digits, '.');
    }
    if negative {
        body.insert(0, '-');
    }
    body
}
