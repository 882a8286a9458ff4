use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{LinalgError, RatMatrix};
use crate::rat::Rat;

/// Outcome of a symmetric-pivoted `LDLᵀ` factorization.
///
/// For the definite and semidefinite cases `P M Pᵀ = L D Lᵀ` where `P` is the
/// permutation sending position `k` to original index `perm[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ldlt {
    PositiveDefinite { perm: Vec<usize>, l: RatMatrix, d: Vec<Rat> },
    PositiveSemidefinite { perm: Vec<usize>, l: RatMatrix, d: Vec<Rat>, rank: usize },
    /// `witnessᵀ M witness < 0`; `index` is the original index whose Schur
    /// complement exposed the failure.
    Indefinite { index: usize, witness: Vec<Rat> },
}

impl Ldlt {
    pub fn is_positive_definite(&self) -> bool {
        matches!(self, Ldlt::PositiveDefinite { .. })
    }

    pub fn is_psd(&self) -> bool {
        !matches!(self, Ldlt::Indefinite { .. })
    }

    /// Rank for the (semi)definite cases.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Ldlt::PositiveDefinite { d, .. } => Some(d.len()),
            Ldlt::PositiveSemidefinite { rank, .. } => Some(*rank),
            Ldlt::Indefinite { .. } => None,
        }
    }

    pub fn pivots(&self) -> Option<&[Rat]> {
        match self {
            Ldlt::PositiveDefinite { d, .. } | Ldlt::PositiveSemidefinite { d, .. } => Some(d),
            Ldlt::Indefinite { .. } => None,
        }
    }
}

/// Factors a symmetric matrix, always pivoting on the largest remaining
/// diagonal entry so that semidefinite inputs never divide by zero.
pub fn ldlt(m: &RatMatrix) -> Result<Ldlt, LinalgError> {
    let n = m.require_symmetric()?;
    let mut s = m.clone();
    // basis[i] is the original-coordinate vector whose Gram entries form row
    // i of the current Schur complement; it yields indefiniteness witnesses.
    let mut basis = RatMatrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    // multipliers[j] collects (step, factor) for original index j
    let mut mult: Vec<Vec<(usize, Rat)>> = (0..n).map(|_| Vec::new()).collect();

    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|a, b| s[(*a.1, *a.1)].cmp(&s[(*b.1, *b.1)]).then(b.0.cmp(&a.0)))
            .expect("nonempty");
        let piv = s[(p, p)].clone();
        if piv.is_negative() {
            return Ok(Ldlt::Indefinite { index: p, witness: basis.row(p).to_vec() });
        }
        if piv.is_zero() {
            // Every remaining diagonal entry is zero: PSD iff the block is zero.
            for (a, &i) in remaining.iter().enumerate() {
                for &j in &remaining[a + 1..] {
                    let x = &s[(i, j)];
                    if !x.is_zero() {
                        let sign = if x.is_positive() { -Rat::one() } else { Rat::one() };
                        let witness =
                            basis.row(i).iter().zip(basis.row(j)).map(|(u, v)| u + &sign * v).collect();
                        return Ok(Ldlt::Indefinite { index: i, witness });
                    }
                }
            }
            let rank = perm.len();
            for &i in &remaining {
                perm.push(i);
                d.push(Rat::zero());
            }
            let l = assemble_l(&perm, &mult);
            return Ok(Ldlt::PositiveSemidefinite { perm, l, d, rank });
        }
        remaining.remove(pos);
        let step = perm.len();
        perm.push(p);
        for &j in &remaining {
            let f = &s[(j, p)] / &piv;
            if f.is_zero() {
                continue;
            }
            for &i in &remaining {
                let t = &f * &s[(p, i)];
                s[(j, i)] -= t;
            }
            for c in 0..n {
                let t = &f * &basis[(p, c)];
                basis[(j, c)] -= t;
            }
            mult[j].push((step, f));
        }
        d.push(piv);
    }
    let l = assemble_l(&perm, &mult);
    Ok(Ldlt::PositiveDefinite { perm, l, d })
}

fn assemble_l(perm: &[usize], mult: &[Vec<(usize, Rat)>]) -> RatMatrix {
    let n = perm.len();
    let mut l = RatMatrix::identity(n);
    for (row, &orig) in perm.iter().enumerate() {
        for (step, f) in &mult[orig] {
            l[(row, *step)] = f.clone();
        }
    }
    l
}

/// `Some(rank)` if the matrix is positive semidefinite.
pub fn psd_rank(m: &RatMatrix) -> Result<Option<usize>, LinalgError> {
    Ok(ldlt(m)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use alloc::vec;

    fn check_factorization(m: &RatMatrix) {
        let f = ldlt(m).unwrap();
        let (perm, l, d) = match &f {
            Ldlt::PositiveDefinite { perm, l, d } => (perm, l, d),
            Ldlt::PositiveSemidefinite { perm, l, d, .. } => (perm, l, d),
            Ldlt::Indefinite { witness, .. } => {
                assert!(m.bilinear(witness, witness).is_negative());
                return;
            }
        };
        let pm = m.principal(perm);
        let ldl = l.mul(&RatMatrix::diagonal(d)).unwrap().mul(&l.transpose()).unwrap();
        assert_eq!(pm, ldl);
    }

    #[test]
    fn definite_cases() {
        let f = ldlt(&RatMatrix::identity(2)).unwrap();
        assert_eq!(f.pivots().unwrap(), &[int(1), int(1)]);
        let a2 = RatMatrix::from_i64(&[[2, -1], [-1, 2]]);
        let f = ldlt(&a2).unwrap();
        assert!(f.is_positive_definite());
        assert_eq!(f.pivots().unwrap(), &[int(2), frac(3, 2)]);
        check_factorization(&a2);
    }

    #[test]
    fn semidefinite_rank() {
        let ones = RatMatrix::from_i64(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        assert_eq!(ldlt(&ones).unwrap().rank(), Some(1));
        check_factorization(&ones);
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(ldlt(&z).unwrap().rank(), Some(0));
    }

    #[test]
    fn indefinite_witnesses() {
        let m = RatMatrix::from_i64(&[[1, 2], [2, 1]]);
        check_factorization(&m);
        assert!(!ldlt(&m).unwrap().is_psd());
        // zero diagonal with a nonzero off-diagonal entry
        let h = RatMatrix::from_i64(&[[0, 1], [1, 0]]);
        check_factorization(&h);
        let lemma = RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 4), int(2), int(2)],
            vec![frac(1, 4), frac(1, 2), int(2), int(2)],
            vec![int(2), int(2), int(14), int(7)],
            vec![int(2), int(2), int(7), int(14)],
        ])
        .unwrap();
        assert!(!ldlt(&lemma).unwrap().is_psd());
        check_factorization(&lemma);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = RatMatrix::from_i64(&[[1, 0], [1, 1]]);
        assert!(matches!(ldlt(&m), Err(LinalgError::NonSymmetric { .. })));
    }
}
