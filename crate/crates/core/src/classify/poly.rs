//! The quadratic-polynomial exclusion test for dual pairs `(Λ, Λ*)` whose
//! minimal vectors pair only to `0, ±1, ±2`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rat::{self, Rat};

/// `c2·b² + c1·b + c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadratic {
    pub c2: Rat,
    pub c1: Rat,
    pub c0: Rat,
}

impl Quadratic {
    pub fn new(c2: Rat, c1: Rat, c0: Rat) -> Self {
        Self { c2, c1, c0 }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(Rat::zero(), Rat::zero(), c)
    }

    /// `(u + b)²`.
    pub fn shifted_square(u: &Rat) -> Self {
        Self::new(Rat::one(), rat::int(2) * u, u * u)
    }

    pub fn eval(&self, b: &Rat) -> Rat {
        (&self.c2 * b + &self.c1) * b + &self.c0
    }

    pub fn discriminant(&self) -> Rat {
        &self.c1 * &self.c1 - rat::int(4) * &self.c2 * &self.c0
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(&self.c2 * k, &self.c1 * k, &self.c0 * k)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.c2 + &o.c2, &self.c1 + &o.c1, &self.c0 + &o.c0)
    }

    /// Both roots when they are rational (`c2 ≠ 0`), smaller first.
    pub fn rational_roots(&self) -> Option<(Rat, Rat)> {
        if self.c2.is_zero() {
            return None;
        }
        let sq = rat::sqrt_exact(&self.discriminant())?;
        let two_a = rat::int(2) * &self.c2;
        let x = (-&self.c1 - &sq) / &two_a;
        let y = (-&self.c1 + &sq) / &two_a;
        Some(if x <= y { (x, y) } else { (y, x) })
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((x, y)) = self.rational_roots() {
            return write!(f, "{}·(b - ({}))·(b - ({}))", self.c2, x, y);
        }
        write!(f, "{}·b² + {}·b + {}", self.c2, self.c1, self.c0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountDefect {
    Negative,
    NotDivisibleByS,
    NotDivisibleByT,
}

/// `n_index` fails a requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountViolation {
    pub index: u8,
    pub defect: CountDefect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exclusion {
    /// Some `n_i` is negative or not divisible by `s` or `t`.
    Counts,
    /// `P` has positive leading coefficient.
    PositiveLeading,
    /// `P` has negative leading coefficient but two distinct real roots.
    PositiveBetweenRoots,
    /// `P` is linear and non-constant, or a positive constant.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyReport {
    pub r: Rat,
    pub s: u64,
    pub t: u64,
    pub n: usize,
    pub n0: Rat,
    pub n1: Rat,
    pub n2: Rat,
    pub poly: Quadratic,
    pub violations: Vec<CountViolation>,
    /// Leading coefficient vanished; decided by the linear part.
    pub degenerate: bool,
    pub excluded: Option<Exclusion>,
    /// A point with `P(b) > 0` when `P` itself excludes the triple.
    pub witness_b: Option<Rat>,
}

impl PolyReport {
    pub fn is_excluded(&self) -> bool {
        self.excluded.is_some()
    }

    /// Re-checks the witness or the count violations from scratch.
    pub fn verify(&self) -> bool {
        let fresh = polynomial_method(&self.r, self.s, self.t, self.n);
        if fresh != *self {
            return false;
        }
        match (&self.excluded, &self.witness_b) {
            (Some(Exclusion::Counts), _) => !self.violations.is_empty(),
            (Some(_), Some(b)) => self.poly.eval(b).is_positive(),
            (Some(_), None) => false,
            (None, _) => true,
        }
    }
}

/// Builds `n0, n1, n2` and `P(b)` for `(r, s, t)` and decides whether they
/// rule out a dual strongly perfect pair.
pub fn polynomial_method(r: &Rat, s: u64, t: u64, n: usize) -> PolyReport {
    let nr = rat::int(n as i64);
    let sr = rat::int(s as i64);
    let tr = rat::int(t as i64);
    let st = &sr * &tr;
    let quarter = rat::frac(1, 4);
    let n2 = &st * r / (rat::int(12) * &nr) * (rat::int(3) * r / (&nr + rat::int(2)) - Rat::one());
    let n1 = &st * r / &nr - rat::int(4) * &n2;
    let n0 = &st - &n1 - &n2;

    let mut violations = Vec::new();
    for (i, ni) in [&n0, &n1, &n2].into_iter().enumerate() {
        let index = i as u8;
        if ni.is_negative() {
            violations.push(CountViolation { index, defect: CountDefect::Negative });
        }
        if !rat::is_int(&(ni / &sr)) {
            violations.push(CountViolation { index, defect: CountDefect::NotDivisibleByS });
        }
        if !rat::is_int(&(ni / &tr)) {
            violations.push(CountViolation { index, defect: CountDefect::NotDivisibleByT });
        }
    }

    let sum = &sr + &tr;
    let b2 = Quadratic::new(Rat::one(), Rat::zero(), Rat::zero());
    let b1 = Quadratic::new(Rat::zero(), Rat::one(), Rat::zero());
    let one = Quadratic::constant(Rat::one());
    // 15/(n(n+2)(n+4)) + (24b−3)/(4n(n+2)) + (2b²−b)/(2n) − b²/4
    let design = one
        .scale(&(rat::int(15) / (&nr * (&nr + rat::int(2)) * (&nr + rat::int(4)))))
        .add(&b1.scale(&rat::int(24)).add(&one.scale(&rat::int(-3))).scale(&(Rat::one() / (rat::int(4) * &nr * (&nr + rat::int(2))))))
        .add(&b2.scale(&rat::int(2)).add(&b1.scale(&rat::int(-1))).scale(&(Rat::one() / (rat::int(2) * &nr))))
        .add(&b2.scale(&-&quarter));
    let rinv = Rat::one() / r;
    let layers = Quadratic::shifted_square(&rinv)
        .scale(&(&n1 * (&rinv - &quarter)))
        .add(&Quadratic::shifted_square(&(rat::int(4) * &rinv)).scale(&(&n2 * (rat::int(4) * &rinv - &quarter))))
        .add(&b2.scale(&(-&n0 * &quarter)));
    let poly = design
        .scale(&(&sum * &sum))
        .add(&layers.scale(&rat::int(-2)))
        .add(&Quadratic::shifted_square(&Rat::one()).scale(&(rat::frac(-3, 4) * &sum)));

    let degenerate = poly.c2.is_zero();
    let (mut excluded, witness_b) = positive_point(&poly);
    if !violations.is_empty() {
        excluded = Some(Exclusion::Counts);
    }
    PolyReport {
        r: r.clone(),
        s,
        t,
        n,
        n0,
        n1,
        n2,
        poly,
        violations,
        degenerate,
        excluded,
        witness_b,
    }
}

/// A point where `p > 0`, if any.
fn positive_point(p: &Quadratic) -> (Option<Exclusion>, Option<Rat>) {
    if p.c2.is_positive() {
        let v = -&p.c1 / (rat::int(2) * &p.c2);
        let mut d = Rat::one();
        while !p.eval(&(&v + &d)).is_positive() {
            d *= rat::int(2);
        }
        return (Some(Exclusion::PositiveLeading), Some(v + d));
    }
    if p.c2.is_negative() {
        if p.discriminant().is_positive() {
            let v = -&p.c1 / (rat::int(2) * &p.c2);
            return (Some(Exclusion::PositiveBetweenRoots), Some(v));
        }
        return (None, None);
    }
    if !p.c1.is_zero() {
        return (Some(Exclusion::Degenerate), Some((Rat::one() - &p.c0) / &p.c1));
    }
    if p.c0.is_positive() {
        return (Some(Exclusion::Degenerate), Some(Rat::zero()));
    }
    (None, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn twenty_thirds() {
        let rep = polynomial_method(&frac(20, 3), 1296, 1296, 16);
        assert_eq!(rep.poly.c2, int(-631800));
        assert_eq!(rep.poly.rational_roots(), Some((frac(-1, 25), frac(-7, 325))));
        assert!(rep.poly.eval(&frac(-8, 325)).is_positive());
        assert_eq!(rep.excluded, Some(Exclusion::PositiveBetweenRoots));
        assert!(rep.verify());
    }

    #[test]
    fn realized_pair_survives() {
        let rep = polynomial_method(&frac(36, 5), 1200, 1200, 16);
        assert_eq!(rep.excluded, None, "{rep:?}");
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn degenerate_cases() {
        let (e, w) = positive_point(&Quadratic::new(int(0), int(-2), int(3)));
        assert_eq!(e, Some(Exclusion::Degenerate));
        assert!(Quadratic::new(int(0), int(-2), int(3)).eval(&w.unwrap()).is_positive());
        assert_eq!(positive_point(&Quadratic::constant(int(-1))), (None, None));
        let q = Quadratic::new(int(1), int(0), int(-100));
        let (_, w) = positive_point(&q);
        assert!(q.eval(&w.unwrap()).is_positive());
    }
}
