//! Spherical code and `|N_2(α)|` bounds.

use num_traits::{One, Signed};

use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("a = {a} must satisfy 0 <= a and n·a² < 1 (n = {n})")]
    OutOfRange { n: usize, a: Rat },
}

/// Upper bound `n(1−a)(2+(n+1)a)/(1−na²)` on a spherical code in `R^n` with
/// all inner products at most `a`.
pub fn dgs_code_bound(n: usize, a: &Rat) -> Result<Rat, BoundError> {
    let nr = rat::int(n as i64);
    let denom = Rat::one() - &nr * a * a;
    if a.is_negative() || !denom.is_positive() {
        return Err(BoundError::OutOfRange { n, a: a.clone() });
    }
    Ok(&nr * (Rat::one() - a) * (rat::int(2) + (&nr + Rat::one()) * a) / denom)
}

/// `|N_2(α)|` forced by the design equations for `α ∈ Min(Λ*)` when no
/// minimal vector pairs to 3 or more: `s·r/(12n)·(3r/(n+2) − 1)`.
pub fn n2_size(r: &Rat, s: u64, n: usize) -> Rat {
    let nr = rat::int(n as i64);
    rat::int(s as i64) * r / (rat::int(12) * &nr) * (rat::int(3) * r / (nr + rat::int(2)) - Rat::one())
}

/// Inner-product cap `(r−8)/(2r−8)` of the projected `N_2(α)` code.
pub fn projected_code_angle(r: &Rat) -> Rat {
    (r - rat::int(8)) / (rat::int(2) * r - rat::int(8))
}

/// Upper bound on `|N_2(α)|`, `α ∈ Min(Λ*)`:
/// `min(r/(8−r), n)` below 8, `2(n−1)` at 8, and the spherical code bound in
/// `R^{n−1}` above 8. `None` when the code bound does not apply.
pub fn n2_upper_bound(r: &Rat, n: usize) -> Option<Rat> {
    let eight = rat::int(8);
    let nr = rat::int(n as i64);
    if r < &eight {
        let b = r / (&eight - r);
        Some(if b < nr { b } else { nr })
    } else if r == &eight {
        Some(rat::int(2 * (n as i64 - 1)))
    } else {
        dgs_code_bound(n - 1, &projected_code_angle(r)).ok()
    }
}

/// Whether `x` is a non-negative integer.
pub(crate) fn is_count(x: &Rat) -> bool {
    rat::is_int(x) && !x.is_negative()
}
