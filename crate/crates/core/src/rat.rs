//! Rational scalars and small integer helpers.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational")]
pub struct ParseRatError {
    pub input: String,
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q`; panics on a zero denominator.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`, ignoring surrounding whitespace.
pub fn parse(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    Rat::from_str(t).map_err(|_| ParseRatError { input: s.to_string() })
}

/// `"p/q"`, or `"p"` when the value is an integer.
pub fn show(x: &Rat) -> String {
    x.to_string()
}

pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The value as `i64` if it is an integer that fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if is_int(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Lossy conversion used only for pruning heuristics and display.
pub fn to_f64(x: &Rat) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            // Shift both to a common magnitude first.
            let shift = n.bits().max(d.bits()).saturating_sub(900);
            let a = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

pub fn floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(x: &Rat, e: i32) -> Rat {
    num_traits::pow::Pow::pow(x, e)
}

/// Least common multiple of the denominators.
pub fn lcm_denoms<'a, I: IntoIterator<Item = &'a Rat>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Largest integer whose square is at most `n` (`n >= 0`).
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    if n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Exact square root of a non-negative rational, if it exists.
pub fn sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let (p, q) = (isqrt(x.numer()), isqrt(x.denom()));
    (&p * &p == *x.numer() && &q * &q == *x.denom()).then(|| Rat::new(p, q))
}
