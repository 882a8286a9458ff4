use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{LinalgError, RatMatrix};

/// Elementary divisors `d1 | d2 | ...` of an integer matrix, one per
/// diagonal position (trailing zeros for rank-deficient input).
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, k);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                dirty |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &m[i][t];
                        m[i][j] -= v;
                    }
                }
                dirty |= !m[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot must divide the whole trailing block; otherwise fold the
            // offending row into row t and go again.
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(m, k)
}

fn finish(m: Vec<Vec<BigInt>>, k: usize) -> Vec<BigInt> {
    (0..k).map(|i| m[i][i].abs()).collect()
}

/// Smith invariants of a rational matrix whose entries must be integers.
pub fn smith_invariants(m: &RatMatrix) -> Result<Vec<BigInt>, LinalgError> {
    m.require_square()?;
    Ok(smith_normal_form(&m.to_integer()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(smith_normal_form(&ints(&[&[1, 0], &[0, 1]])), b(&[1, 1]));
        assert_eq!(smith_normal_form(&ints(&[&[4, 0], &[0, 2]])), b(&[2, 4]));
        assert_eq!(smith_normal_form(&ints(&[&[2, 0], &[0, 3]])), b(&[1, 6]));
        assert_eq!(smith_normal_form(&ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), b(&[2, 6, 12]));
        assert_eq!(smith_normal_form(&ints(&[&[1, 2], &[2, 4]])), b(&[1, 0]));
    }

    #[test]
    fn rejects_fractions() {
        let m = RatMatrix::from_rows(vec![vec![crate::rat::frac(1, 2)]]).unwrap();
        assert_eq!(smith_invariants(&m), Err(LinalgError::NonInteger { i: 0, j: 0 }));
    }
}
