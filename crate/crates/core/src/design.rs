//! Spherical 4-design tests on minimal vectors.
//!
//! Test vectors `alpha`, `beta` are given in dual-basis coordinates, so
//! `(x, alpha)` is the plain dot product with the lattice coordinates of `x`
//! and `(alpha, beta) = alphaᵀ G⁻¹ beta`. All sums run over one
//! representative per `±` pair of minimal vectors; the moments are even in
//! `x` where it matters, so the choice of sign is immaterial.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::enumerate::{self, EnumError, EnumOptions, MinimalVectors};
use crate::lattice::Lattice;
use crate::linalg::{RatMatrix, SymTensor4};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Equation {
    D2,
    D11,
    D22,
    D13,
    D4,
    D4MinusD2Over12,
    D13MinusD11Over6,
}

impl Equation {
    pub const ALL: [Equation; 7] = [
        Equation::D2,
        Equation::D11,
        Equation::D22,
        Equation::D13,
        Equation::D4,
        Equation::D4MinusD2Over12,
        Equation::D13MinusD11Over6,
    ];

    /// Right-hand sides that must be non-negative integers for dual vectors.
    pub fn integral_for_dual_vectors(self) -> bool {
        matches!(self, Equation::D2 | Equation::D22 | Equation::D4 | Equation::D4MinusD2Over12)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::D2 => "D2",
            Equation::D11 => "D11",
            Equation::D22 => "D22",
            Equation::D13 => "D13",
            Equation::D4 => "D4",
            Equation::D4MinusD2Over12 => "(D4-D2)/12",
            Equation::D13MinusD11Over6 => "(D13-D11)/6",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignRow {
    pub equation: Equation,
    pub computed: Rat,
    pub expected: Rat,
    /// For integral `alpha`, `beta` and the equations that must be integral:
    /// whether the expected value is a non-negative integer.
    pub integral: Option<bool>,
}

impl DesignRow {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignReport {
    pub s: u64,
    pub m: Rat,
    pub n: usize,
    pub rows: Vec<DesignRow>,
}

impl DesignReport {
    /// All rows agree for these test vectors.
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(DesignRow::holds)
    }

    pub fn is_4_design(&self) -> bool {
        self.rows.iter().filter(|r| r.equation == Equation::D4).all(DesignRow::holds)
    }

    pub fn row(&self, e: Equation) -> &DesignRow {
        self.rows.iter().find(|r| r.equation == e).expect("every equation is reported")
    }
}

/// Precomputed data for repeated design queries on one lattice.
#[derive(Debug, Clone)]
pub struct Designs<'a> {
    lattice: &'a Lattice,
    mv: MinimalVectors,
    h: RatMatrix,
}

impl<'a> Designs<'a> {
    pub fn new(lattice: &'a Lattice, opts: &EnumOptions) -> Result<Self, EnumError> {
        let mv = enumerate::minimal_vectors(lattice, opts)?;
        Ok(Self::with_minimal_vectors(lattice, mv))
    }

    pub fn with_minimal_vectors(lattice: &'a Lattice, mv: MinimalVectors) -> Self {
        let h = lattice.dual().gram().clone();
        Self { lattice, mv, h }
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice
    }

    pub fn minimal_vectors(&self) -> &MinimalVectors {
        &self.mv
    }

    pub fn s(&self) -> u64 {
        self.mv.s()
    }

    pub fn min(&self) -> &Rat {
        &self.mv.min
    }

    /// `(alpha, beta)` for dual coordinates.
    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        self.h.bilinear(a, b)
    }

    fn pairings(&self, a: &[Rat]) -> Vec<Rat> {
        self.mv.vectors.iter().map(|x| enumerate::pairing(x, a)).collect()
    }

    /// `Σ_{x ∈ S} (x, alpha)^k`.
    pub fn moment_sum(&self, alpha: &[Rat], k: u32) -> Rat {
        self.pairings(alpha).iter().map(|p| num_traits::pow(p.clone(), k as usize)).sum()
    }

    /// The equations for the pair `(alpha, beta)`.
    pub fn check(&self, alpha: &[Rat], beta: &[Rat]) -> DesignReport {
        let n = self.lattice.dim();
        let nr = rat::int(n as i64);
        let s = rat::int(self.s() as i64);
        let m = self.mv.min.clone();
        let pa = self.pairings(alpha);
        let pb = self.pairings(beta);
        let aa = self.inner(alpha, alpha);
        let ab = self.inner(alpha, beta);
        let bb = self.inner(beta, beta);

        let sum = |f: &dyn Fn(&Rat, &Rat) -> Rat| -> Rat { pa.iter().zip(&pb).map(|(x, y)| f(x, y)).sum() };
        let d2 = sum(&|x, _| x * x);
        let d4 = sum(&|x, _| x * x * x * x);
        let d11 = sum(&|x, y| x * y);
        let d22 = sum(&|x, y| x * x * y * y);
        let d13 = sum(&|x, y| x * y * y * y);
        let d31 = sum(&|x, y| x * x * x * y);

        let two_design = &s * &m / &nr;
        let four_design = &s * &m * &m / (&nr * (&nr + rat::int(2)));
        let shift = rat::int(3) * &m / (&nr + rat::int(2));
        let e = |x: &Rat, y: &Rat| -> Rat { x * y };
        let expected = [
            (Equation::D2, d2.clone(), e(&two_design, &aa)),
            (Equation::D11, d11.clone(), e(&two_design, &ab)),
            (
                Equation::D22,
                d22,
                &four_design * (rat::int(2) * &ab * &ab + &aa * &bb),
            ),
            (Equation::D13, d13, rat::int(3) * &four_design * &ab * &bb),
            (Equation::D4, d4.clone(), rat::int(3) * &four_design * &aa * &aa),
            (
                Equation::D4MinusD2Over12,
                (&d4 - &d2) / rat::int(12),
                &two_design / rat::int(12) * &aa * (&shift * &aa - Rat::one()),
            ),
            (
                Equation::D13MinusD11Over6,
                (&d31 - &d11) / rat::int(6),
                &two_design / rat::int(6) * (&shift * &aa - Rat::one()) * &ab,
            ),
        ];
        let integral_inputs = alpha.iter().chain(beta).all(rat::is_int);
        let rows = expected
            .into_iter()
            .map(|(equation, computed, expected)| {
                let integral = (integral_inputs && equation.integral_for_dual_vectors())
                    .then(|| rat::is_int(&expected) && !expected.is_negative());
                DesignRow { equation, computed, expected, integral }
            })
            .collect();
        DesignReport { s: self.s(), m, n, rows }
    }

    /// Exact test of `Σ_{x∈S} x⊗x⊗x⊗x = c·Sym(G⁻¹⊗G⁻¹)`, `c = 3sm²/(n(n+2))`,
    /// in lattice coordinates; equivalent to the degree-4 moment identity
    /// holding for every `alpha`.
    pub fn is_strongly_perfect(&self) -> bool {
        let n = self.lattice.dim();
        let nr = rat::int(n as i64);
        let c = rat::int(3) * rat::int(self.s() as i64) * &self.mv.min * &self.mv.min
            / (&nr * (&nr + rat::int(2)));
        let target = SymTensor4::sym_square(&self.h).scaled(&c);
        let mut acc = SymTensor4::<i128>::zeros(n);
        let mut ok = true;
        for x in &self.mv.vectors {
            if !acc.add_outer4(x) {
                ok = false;
                break;
            }
        }
        let got = if ok {
            acc.to_rat()
        } else {
            let mut t = SymTensor4::<Rat>::zeros(n);
            for x in &self.mv.vectors {
                let v: Vec<Rat> = x.iter().map(|&z| rat::int(z)).collect();
                t.add_outer4(&v);
            }
            t
        };
        got == target
    }

    /// Checks `Σ_i Σ_{x∈N_i} i(i²−1)/6 · x = c·alpha` and
    /// `Σ_i i²(i²−1)/6 |N_i| = c (alpha, alpha)` with
    /// `c = sm/(6n) (3m/(n+2) (alpha,alpha) − 1)`.
    pub fn minvec_combination(&self, alpha: &[Rat]) -> Result<CombinationReport, EnumError> {
        let layers = enumerate::layer_sets(&self.mv, alpha)?;
        let n = self.lattice.dim();
        let nr = rat::int(n as i64);
        let m = &self.mv.min;
        let aa = self.inner(alpha, alpha);
        let c = rat::int(self.s() as i64) * m / (rat::int(6) * &nr)
            * (rat::int(3) * m / (&nr + rat::int(2)) * &aa - Rat::one());
        let mut vec_sum = alloc::vec![Rat::zero(); n];
        let mut scalar = Rat::zero();
        for (&i, xs) in &layers.layers {
            let i = i as i64;
            let w = rat::frac(i * (i * i - 1), 6);
            if w.is_zero() {
                continue;
            }
            scalar += rat::int(i) * &w * rat::int(xs.len() as i64);
            for x in xs {
                for (acc, y) in vec_sum.iter_mut().zip(enumerate::to_dual_coords(self.lattice, x)) {
                    *acc += &w * y;
                }
            }
        }
        let target: Vec<Rat> = alpha.iter().map(|a| &c * a).collect();
        let max_pairing = layers.layers.keys().next_back().copied().unwrap_or(0);
        let n2 = layers.size(2) as u64;
        let n2_check = (max_pairing <= 2).then(|| rat::int(n2 as i64) == &c * &aa / rat::int(2));
        Ok(CombinationReport {
            c: c.clone(),
            layer_sizes: layers.layers.iter().map(|(&i, v)| (i, v.len() as u64)).collect(),
            vector_identity: vec_sum == target,
            scalar_identity: scalar == &c * &aa,
            n2_check,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinationReport {
    pub c: Rat,
    /// `(i, |N_i(alpha)|)` for `i > 0`.
    pub layer_sizes: Vec<(u64, u64)>,
    pub vector_identity: bool,
    pub scalar_identity: bool,
    /// When all pairings lie in `{0, ±1, ±2}`: `|N_2| = c (alpha,alpha) / 2`.
    pub n2_check: Option<bool>,
}

impl CombinationReport {
    pub fn holds(&self) -> bool {
        self.vector_identity && self.scalar_identity && self.n2_check != Some(false)
    }
}

/// `Σ_{x∈S} (x, alpha)^k` for `alpha` in dual coordinates.
pub fn moment_sum(l: &Lattice, alpha: &[Rat], k: u32, opts: &EnumOptions) -> Result<Rat, EnumError> {
    Ok(Designs::new(l, opts)?.moment_sum(alpha, k))
}

pub fn check_design_equations(
    l: &Lattice,
    alpha: &[Rat],
    beta: &[Rat],
    opts: &EnumOptions,
) -> Result<DesignReport, EnumError> {
    Ok(Designs::new(l, opts)?.check(alpha, beta))
}

pub fn is_strongly_perfect(l: &Lattice, opts: &EnumOptions) -> Result<bool, EnumError> {
    Ok(Designs::new(l, opts)?.is_strongly_perfect())
}

pub fn verify_minvec_combination(
    l: &Lattice,
    alpha: &[Rat],
    opts: &EnumOptions,
) -> Result<CombinationReport, EnumError> {
    Designs::new(l, opts)?.minvec_combination(alpha)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMInvariant {
    pub min: Rat,
    pub dual_min: Rat,
    /// `min(L)·min(L*)`.
    pub r: Rat,
    /// `r = (n+2)/3`.
    pub minimal_type: bool,
}

pub fn berge_martinet(l: &Lattice, opts: &EnumOptions) -> Result<BMInvariant, EnumError> {
    let min = enumerate::minimum(l, opts)?;
    let dual_min = enumerate::minimum(&l.dual(), opts)?;
    Ok(bm_from_minima(min, dual_min, l.dim()))
}

pub fn bm_from_minima(min: Rat, dual_min: Rat, n: usize) -> BMInvariant {
    let r = &min * &dual_min;
    let minimal_type = r == rat::frac(n as i64 + 2, 3);
    BMInvariant { min, dual_min, r, minimal_type }
}
