//! Rescaling claims derived from design integrality.
//!
//! With `min(Λ) = m`, every `α ∈ Λ*` has `A·x`, `B·x²` and `(B·x² − A·x)/12`
//! integral, where `x = (α, α)`, `A = sm/n` and `B = 3sm²/(n(n+2))`. Writing
//! `x = p/q` in lowest terms, `q² | numerator(B)`, and for each such `q` the
//! conditions depend only on `p` modulo a computable modulus. That finite
//! list decides claims of the form "`c·x` is always even (or integral)".

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rat::{self, Rat};

use super::rs::N;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// `c·(α, α) ∈ 2Z` for all `α ∈ Λ*`.
    Even,
    /// `c·(α, α) ∈ Z` for all `α ∈ Λ*`.
    Integral,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Even => "even",
            Claim::Integral => "integral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalingError {
    #[error("r, s, m and c must be positive")]
    NonPositive,
    #[error("integrality conditions do not bound the denominator of dual norms")]
    UnboundedDenominator,
    #[error("residue modulus {0} is too large to scan")]
    ModulusTooLarge(BigInt),
}

/// Admissible numerators `p mod modulus` of norms `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClass {
    pub q: u64,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingVerdict {
    pub claim: Claim,
    pub c: Rat,
    pub dual_min: Rat,
    /// Whether `r/m` itself passes the integrality conditions.
    pub dual_min_admissible: bool,
    pub classes: Vec<ResidueClass>,
    /// An admissible norm `x` with `c·x` violating the claim.
    pub witness: Option<Rat>,
}

impl ScalingVerdict {
    pub fn is_verified(&self) -> bool {
        self.witness.is_none()
    }
}

const MAX_MODULUS: u64 = 1 << 24;

struct Conditions {
    a: Rat,
    b: Rat,
}

impl Conditions {
    fn admissible(&self, x: &Rat) -> bool {
        let ax = &self.a * x;
        let bx = &self.b * x * x;
        rat::is_int(&ax) && rat::is_int(&bx) && rat::is_int(&((bx - ax) / rat::int(12)))
    }
}

fn den(x: &Rat) -> BigInt {
    x.denom().clone()
}

/// Checks the claim for `min(Λ) = m`, `s(Λ) = s`, `r(Λ) = r` in dimension 16.
pub fn even_scaling_check(r: &Rat, s: u64, m: &Rat, c: &Rat, claim: Claim) -> Result<ScalingVerdict, ScalingError> {
    if !r.is_positive() || s == 0 || !m.is_positive() || !c.is_positive() {
        return Err(ScalingError::NonPositive);
    }
    let nr = rat::int(N as i64);
    let sr = rat::int(s as i64);
    let cond = Conditions {
        a: &sr * m / &nr,
        b: rat::int(3) * &sr * m * m / (&nr * (&nr + rat::int(2))),
    };
    let bnum = cond.b.numer().abs();
    if bnum.is_zero() {
        return Err(ScalingError::UnboundedDenominator);
    }
    let target = match claim {
        Claim::Even => rat::int(2),
        Claim::Integral => rat::int(1),
    };
    let holds = |x: &Rat| rat::is_int(&(c * x / &target));

    let mut classes = Vec::new();
    let mut witness = None;
    let mut q = BigInt::from(1);
    while &q * &q <= bnum {
        if (&bnum % (&q * &q)).is_zero() {
            let qr = rat::big(&q);
            let parts = [
                qr.clone(),
                rat::big(&den(&(&cond.a / &qr))),
                rat::big(&den(&(&cond.b / (&qr * &qr)))),
                rat::big(&den(&(&cond.b / (rat::int(12) * &qr * &qr)))),
                rat::big(&den(&(&cond.a / (rat::int(12) * &qr)))),
                rat::big(&den(&(c / (&target * &qr)))),
            ];
            let modulus = parts.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.numer()));
            let mu = modulus.to_u64().filter(|&m| m <= MAX_MODULUS).ok_or(ScalingError::ModulusTooLarge(modulus))?;
            let qu = q.to_u64().expect("q² divides a small numerator");
            let mut residues = Vec::new();
            for p in 1..=mu {
                if p.gcd(&qu) != 1 {
                    continue;
                }
                let x = rat::frac(p as i64, qu as i64);
                if cond.admissible(&x) {
                    residues.push(p % mu);
                    if witness.is_none() && !holds(&x) {
                        witness = Some(x);
                    }
                }
            }
            residues.sort_unstable();
            if !residues.is_empty() {
                classes.push(ResidueClass { q: qu, modulus: mu, residues });
            }
        }
        q += 1;
    }
    let dual_min = r / m;
    Ok(ScalingVerdict {
        claim,
        c: c.clone(),
        dual_min_admissible: cond.admissible(&dual_min),
        dual_min,
        classes,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn r7_is_even_at_half() {
        let v = even_scaling_check(&int(7), 1152, &frac(1, 2), &int(1), Claim::Even).unwrap();
        assert!(v.is_verified(), "{v:?}");
        assert!(v.dual_min_admissible);
        assert_eq!(v.classes.len(), 1);
        assert_eq!(v.classes[0].q, 1);
        assert!(v.classes[0].residues.iter().all(|p| p % 2 == 0));
    }

    #[test]
    fn refutation_has_witness() {
        // norms are integral but not all even
        let v = even_scaling_check(&int(8), 144, &int(2), &int(1), Claim::Even).unwrap();
        let w = v.witness.clone().expect("odd norms are admissible");
        assert!(rat::is_int(&w) && !rat::is_int(&(w / int(2))));
        let v = even_scaling_check(&int(8), 144, &int(2), &int(1), Claim::Integral).unwrap();
        assert!(v.is_verified());
    }

    #[test]
    fn bad_input() {
        assert_eq!(
            even_scaling_check(&int(7), 1152, &int(0), &int(1), Claim::Even),
            Err(ScalingError::NonPositive)
        );
    }
}
