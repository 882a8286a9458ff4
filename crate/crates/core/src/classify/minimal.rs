//! `(s, t) = (s(Λ), s(Λ*))` for dual strongly perfect lattices of minimal
//! type (`r = 6`) in dimension 16.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::poly::polynomial_method;
use super::rs::{self, N, S_MAX, S_MIN};

/// Each filter constrains one side given the other; all are applied to both
/// `(s, t)` and `(t, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MinimalTypeFilter {
    /// `3s/8 ∈ Z`.
    EightDividesS,
    /// `s = 2^a·A` with `A` odd squarefree forces `a ≥ 7`.
    SquarefreeTwoPower,
    /// `s = 2³·b²·A` (`A` odd squarefree, `b` odd) forces `2⁹ | t` and `b ≥ 7`.
    OddSquareCofactor,
    /// `9 ∤ s` forces `9 | t`.
    NineDivides,
    /// `32 ∤ s` forces `32 | t`.
    ThirtyTwoDivides,
    /// `s = 2^a·A`, `A` odd squarefree, `a ≤ 8` forces `36 | t`.
    EvenAtMinimumFour,
    /// `s ≠ 648`.
    Excluded648,
    /// The polynomial test at `r = 6`.
    PolynomialMethod,
}

impl MinimalTypeFilter {
    pub const ALL: [MinimalTypeFilter; 8] = [
        MinimalTypeFilter::EightDividesS,
        MinimalTypeFilter::SquarefreeTwoPower,
        MinimalTypeFilter::OddSquareCofactor,
        MinimalTypeFilter::NineDivides,
        MinimalTypeFilter::ThirtyTwoDivides,
        MinimalTypeFilter::EvenAtMinimumFour,
        MinimalTypeFilter::Excluded648,
        MinimalTypeFilter::PolynomialMethod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MinimalTypeFilter::EightDividesS => "eight-divides-s",
            MinimalTypeFilter::SquarefreeTwoPower => "squarefree-two-power",
            MinimalTypeFilter::OddSquareCofactor => "odd-square-cofactor",
            MinimalTypeFilter::NineDivides => "nine-divides",
            MinimalTypeFilter::ThirtyTwoDivides => "thirty-two-divides",
            MinimalTypeFilter::EvenAtMinimumFour => "even-at-minimum-four",
            MinimalTypeFilter::Excluded648 => "s-not-648",
            MinimalTypeFilter::PolynomialMethod => "polynomial-method",
        }
    }
}

impl fmt::Display for MinimalTypeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(v, A)` with `x = 2^v·A`, `A` odd.
fn two_adic(mut x: u64) -> (u32, u64) {
    let v = x.trailing_zeros();
    x >>= v;
    (v, x)
}

/// `(b, A)` with odd `x = b²·A`, `A` squarefree.
fn square_split(mut x: u64) -> (u64, u64) {
    let mut b = 1;
    let mut d = 3;
    while d * d <= x {
        while x.is_multiple_of(d * d) {
            x /= d * d;
            b *= d;
        }
        d += 2;
    }
    (b, x)
}

fn squarefree(x: u64) -> bool {
    square_split(x).0 == 1
}

fn one_sided(s: u64, t: u64) -> Option<MinimalTypeFilter> {
    use MinimalTypeFilter::*;
    if !s.is_multiple_of(8) {
        return Some(EightDividesS);
    }
    let (a, odd) = two_adic(s);
    let sqf = squarefree(odd);
    if sqf && a < 7 {
        return Some(SquarefreeTwoPower);
    }
    if a == 3 {
        let (b, _) = square_split(odd);
        if !t.is_multiple_of(512) || b < 7 {
            return Some(OddSquareCofactor);
        }
    }
    if !s.is_multiple_of(9) && !t.is_multiple_of(9) {
        return Some(NineDivides);
    }
    if !s.is_multiple_of(32) && !t.is_multiple_of(32) {
        return Some(ThirtyTwoDivides);
    }
    if sqf && a <= 8 && !t.is_multiple_of(36) {
        return Some(EvenAtMinimumFour);
    }
    if s == 648 {
        return Some(Excluded648);
    }
    None
}

/// The first filter that rules out `(s, t)`, or `None` if it survives.
pub fn check_minimal_type(s: u64, t: u64) -> Option<MinimalTypeFilter> {
    if let Some(f) = one_sided(s, t).or_else(|| one_sided(t, s)) {
        return Some(f);
    }
    polynomial_method(&rs::minimal_type_r(), s, t, N)
        .is_excluded()
        .then_some(MinimalTypeFilter::PolynomialMethod)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalTypeScan {
    /// Surviving pairs with `s ≤ t`, sorted.
    pub pairs: Vec<(u64, u64)>,
    pub rejected: BTreeMap<MinimalTypeFilter, u64>,
}

impl MinimalTypeScan {
    /// Pairs grouped by `s`.
    pub fn by_s(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut m: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &(s, t) in &self.pairs {
            m.entry(s).or_default().push(t);
        }
        m
    }
}

impl fmt::Display for MinimalTypeScan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, ts) in self.by_s() {
            write!(f, "s={s:<5} t ∈ {{")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            writeln!(f, "}}")?;
        }
        write!(f, "{} pairs", self.pairs.len())
    }
}

/// All `s ≤ t` in `[136, 3677]` surviving [`check_minimal_type`].
pub fn minimal_type_scan() -> MinimalTypeScan {
    let first = S_MIN.next_multiple_of(8);
    let mut pairs = Vec::new();
    let mut rejected = BTreeMap::new();
    for s in (first..=S_MAX).step_by(8) {
        for t in (s..=S_MAX).step_by(8) {
            match check_minimal_type(s, t) {
                None => pairs.push((s, t)),
                Some(f) => *rejected.entry(f).or_default() += 1,
            }
        }
    }
    MinimalTypeScan { pairs, rejected }
}

pub fn minimal_type_pairs() -> Vec<(u64, u64)> {
    minimal_type_scan().pairs
}
