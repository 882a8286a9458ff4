//! Lattices as Gram matrices and their exact invariants.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{self, LinalgError, RatMatrix};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("lattice is not integral")]
    NotIntegral,
    #[error("lattice is not even")]
    NotEven,
    #[error("even level exceeds the cap {cap}")]
    LevelCapExceeded { cap: u64 },
}

/// Default cap for [`Lattice::even_level`].
pub const EVEN_LEVEL_CAP: u64 = 1000;

/// Upper bound for the Hermite constant in dimension 16.
pub fn gamma16_upper() -> Rat {
    rat::frac(3027, 1000)
}

/// Upper bound for its square, used for the Bergé–Martinet invariant.
pub fn gamma16_sq_upper() -> Rat {
    rat::frac(9_162_729, 1_000_000)
}

/// A lattice given by a symmetric positive definite Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    gram: RatMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReport {
    pub integral: bool,
    pub even: bool,
    /// Least `l` with `sqrt(l)·L*` even; only reported for even lattices.
    pub even_level: Option<u64>,
}

/// Elementary divisors of `L*/L`, with the 1's dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub divisors: Vec<BigInt>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.divisors.len() {
            let d = &self.divisors[i];
            let k = self.divisors[i..].iter().take_while(|x| *x == d).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

impl Lattice {
    pub fn new(gram: RatMatrix) -> Result<Self, LatticeError> {
        if !linalg::ldlt(&gram)?.is_positive_definite() {
            return Err(LatticeError::NotPositiveDefinite);
        }
        Ok(Self { name: String::new(), gram })
    }

    pub fn named(name: &str, gram: RatMatrix) -> Result<Self, LatticeError> {
        Ok(Self::new(gram)?.with_name(name))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn det(&self) -> Rat {
        self.gram.det().expect("square by construction")
    }

    /// The dual lattice in the dual basis: Gram matrix `G⁻¹`.
    pub fn dual(&self) -> Lattice {
        let gram = self.gram.inverse().expect("positive definite is invertible");
        let name = if self.name.is_empty() { String::new() } else { alloc::format!("{}*", self.name) };
        Lattice { name, gram }
    }

    /// Multiplies every inner product by `c`, i.e. the lattice `sqrt(c)·L`.
    pub fn rescale(&self, c: &Rat) -> Result<Lattice, LatticeError> {
        if !c.is_positive() {
            return Err(LatticeError::NonPositiveScale);
        }
        Ok(Lattice { name: self.name.clone(), gram: self.gram.scale(c) })
    }

    /// Orthogonal sum in block-diagonal form.
    pub fn orthogonal_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.dim(), other.dim());
        let mut g = RatMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)].clone();
            }
        }
        Lattice { name: String::new(), gram: g }
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.dim()).all(|i| self.gram[(i, i)].numer().is_even())
    }

    pub fn parity(&self) -> ParityReport {
        let integral = self.is_integral();
        let even = self.is_even();
        let even_level = if even { self.even_level(EVEN_LEVEL_CAP).ok() } else { None };
        ParityReport { integral, even, even_level }
    }

    /// Least `l >= 1` such that `sqrt(l)·L*` is even.
    ///
    /// `l·H` is even exactly when `l` is a multiple of every off-diagonal
    /// denominator of `H = G⁻¹` and of every denominator of `H_ii / 2`, so
    /// the least such `l` is their lcm. Values above `cap` are an error.
    pub fn even_level(&self, cap: u64) -> Result<u64, LatticeError> {
        if !self.is_even() {
            return Err(LatticeError::NotEven);
        }
        let h = self.dual().gram;
        let n = self.dim();
        let two = rat::int(2);
        let mut l = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                let x = if i == j { &h[(i, i)] / &two } else { h[(i, j)].clone() };
                l = l.lcm(x.denom());
            }
        }
        match l.to_u64() {
            Some(v) if v <= cap => Ok(v),
            _ => Err(LatticeError::LevelCapExceeded { cap }),
        }
    }

    pub fn smith_invariant(&self) -> Result<DiscriminantGroup, LatticeError> {
        if !self.is_integral() {
            return Err(LatticeError::NotIntegral);
        }
        let divisors = linalg::smith_invariants(&self.gram)?
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(DiscriminantGroup { divisors })
    }

    /// Norm of the vector with lattice coordinates `z`.
    pub fn norm(&self, z: &[Rat]) -> Rat {
        self.gram.bilinear(z, z)
    }
}

/// `[(min/γ)^n, (γ/min*)^n]`, the determinant interval forced by the Hermite
/// bound applied to `L` and to `L*`.
pub fn det_bounds(min_primal: &Rat, min_dual: &Rat, n: usize, gamma: &Rat) -> (Rat, Rat) {
    let e = n as i32;
    (rat::pow(&(min_primal / gamma), e), rat::pow(&(gamma / min_dual), e))
}

/// Whether `sqrt(c)·L*` and `L` cannot both be integral.
///
/// Their determinants multiply to `c^n`, so a non-integral `c^n` (equivalently
/// a non-integral `c`) rules the pair out; with `det(L)` supplied the cofactor
/// `c^n / det(L)` must be integral as well.
pub fn level_integrality_violation(det_primal: Option<&Rat>, c: &Rat, n: usize) -> bool {
    let cn = rat::pow(c, n as i32);
    if !rat::is_int(c) || !rat::is_int(&cn) {
        return true;
    }
    match det_primal {
        Some(d) if !d.is_zero() => !rat::is_int(&(&cn / d)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use alloc::vec;

    fn a2() -> Lattice {
        Lattice::new(RatMatrix::from_i64(&[[2, -1], [-1, 2]])).unwrap()
    }

    #[test]
    fn dual_and_rescale() {
        let d = a2().dual();
        assert_eq!(d.det(), frac(1, 3));
        assert_eq!(d.gram()[(0, 1)], frac(1, 3));
        assert_eq!(d.dual(), a2());
        let z2 = Lattice::new(RatMatrix::identity(2)).unwrap();
        assert_eq!(z2.dual(), z2);
        assert_eq!(a2().rescale(&frac(1, 2)).unwrap().det(), frac(3, 4));
        assert_eq!(a2().rescale(&int(1)).unwrap(), a2());
        assert_eq!(a2().rescale(&int(0)), Err(LatticeError::NonPositiveScale));
    }

    #[test]
    fn rejects_indefinite() {
        let m = RatMatrix::from_i64(&[[1, 2], [2, 1]]);
        assert_eq!(Lattice::new(m), Err(LatticeError::NotPositiveDefinite));
    }

    #[test]
    fn parity_and_level() {
        let z = Lattice::new(RatMatrix::identity(16)).unwrap();
        let p = z.parity();
        assert!(p.integral && !p.even && p.even_level.is_none());
        let a = a2().parity();
        assert!(a.even);
        assert_eq!(a.even_level, Some(3));
        let a1 = Lattice::new(RatMatrix::from_i64(&[[2]])).unwrap();
        assert_eq!(a1.even_level(1000), Ok(4));
        assert_eq!(a1.even_level(3), Err(LatticeError::LevelCapExceeded { cap: 3 }));
    }

    #[test]
    fn smith_strings() {
        let g = DiscriminantGroup { divisors: vec![2.into(), 2.into(), 4.into(), 4.into()] };
        assert_eq!(g.to_string(), "2^2 4^2");
        assert_eq!(DiscriminantGroup { divisors: vec![] }.to_string(), "1");
        assert_eq!(a2().smith_invariant().unwrap().to_string(), "3");
        assert_eq!(a2().dual().smith_invariant(), Err(LatticeError::NotIntegral));
    }

    #[test]
    fn det_interval() {
        let (lo, hi) = det_bounds(&int(1), &int(1), 2, &int(1));
        assert_eq!((lo, hi), (int(1), int(1)));
        let (lo, _) = det_bounds(&int(4), &int(2), 16, &gamma16_upper());
        assert_eq!(lo, rat::pow(&frac(4000, 3027), 16));
    }

    #[test]
    fn det_interval_at_ratio_96_over_11() {
        // min 6 and dual min 16/11; the admissible 2^a 11^b are listed by hand
        let (lo, hi) = det_bounds(&int(6), &frac(16, 11), 16, &gamma16_upper());
        let mut inside = Vec::new();
        for a in 0..24u32 {
            for b in 0..7u32 {
                let v = int(2i64.pow(a) * 11i64.pow(b));
                if lo <= v && v <= hi {
                    inside.push((a, b));
                }
            }
        }
        inside.sort_by_key(|&(a, _)| a);
        assert_eq!(inside, [(2, 4), (3, 4), (6, 3), (9, 2), (13, 1), (16, 0)]);
    }

    #[test]
    fn level_integrality() {
        assert!(!level_integrality_violation(None, &int(2), 16));
        assert!(level_integrality_violation(None, &frac(40, 3), 16));
        assert!(level_integrality_violation(None, &frac(704, 3), 16));
        assert!(level_integrality_violation(Some(&int(3)), &int(2), 2));
        assert!(!level_integrality_violation(Some(&int(2)), &int(2), 2));
    }
}
