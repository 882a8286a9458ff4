use alloc::vec;
use alloc::vec::Vec;
use core::ops::AddAssign;

use num_traits::Zero;

use crate::rat::Rat;

/// Fully symmetric order-4 tensor stored once per multiset `{i,j,k,l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor4<T> {
    dim: usize,
    entries: Vec<T>,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl<T: Clone + Zero> SymTensor4<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![T::zero(); binom(dim + 3, 4)] }
    }

    /// Builds a tensor from a function of sorted index quadruples.
    pub fn from_fn(dim: usize, mut f: impl FnMut([usize; 4]) -> T) -> Self {
        let entries = Self::multisets(dim).map(&mut f).collect();
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Sorted quadruples in storage order (colexicographic).
    pub fn multisets(dim: usize) -> impl Iterator<Item = [usize; 4]> {
        (0..dim).flat_map(move |d| {
            (0..=d).flat_map(move |c| (0..=c).flat_map(move |b| (0..=b).map(move |a| [a, b, c, d])))
        })
    }

    pub fn index(mut q: [usize; 4]) -> usize {
        q.sort_unstable();
        let [a, b, c, d] = q;
        binom(a, 1) + binom(b + 1, 2) + binom(c + 2, 3) + binom(d + 3, 4)
    }

    pub fn get(&self, q: [usize; 4]) -> &T {
        &self.entries[Self::index(q)]
    }
}

impl<T: Clone + Zero + AddAssign> SymTensor4<T> {
    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "tensor dimension");
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b.clone();
        }
    }
}

impl SymTensor4<i128> {
    /// Adds `z⊗z⊗z⊗z`; returns `false` (leaving a partial update) on overflow.
    pub fn add_outer4(&mut self, z: &[i64]) -> bool {
        assert_eq!(z.len(), self.dim, "vector length");
        let mut idx = 0;
        for d in 0..self.dim {
            let zd = z[d] as i128;
            for c in 0..=d {
                let zcd = zd * z[c] as i128;
                for b in 0..=c {
                    let zbcd = zcd * z[b] as i128;
                    for a in 0..=b {
                        let Some(t) = zbcd.checked_mul(z[a] as i128) else { return false };
                        let Some(v) = self.entries[idx].checked_add(t) else { return false };
                        self.entries[idx] = v;
                        idx += 1;
                    }
                }
            }
        }
        true
    }

    pub fn to_rat(&self) -> SymTensor4<Rat> {
        SymTensor4 {
            dim: self.dim,
            entries: self.entries.iter().map(|&x| Rat::from_integer(x.into())).collect(),
        }
    }
}

impl SymTensor4<Rat> {
    pub fn add_outer4(&mut self, v: &[Rat]) {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut idx = 0;
        for d in 0..self.dim {
            for c in 0..=d {
                let vcd = &v[c] * &v[d];
                for b in 0..=c {
                    let vbcd = &vcd * &v[b];
                    for a in 0..=b {
                        self.entries[idx] += &vbcd * &v[a];
                        idx += 1;
                    }
                }
            }
        }
    }

    /// `Sym(H⊗H)` with entries `(H_ij H_kl + H_ik H_jl + H_il H_jk) / 3`.
    pub fn sym_square(h: &crate::linalg::RatMatrix) -> Self {
        let n = h.rows();
        let three = Rat::from_integer(3.into());
        Self::from_fn(n, |[i, j, k, l]| {
            (&h[(i, j)] * &h[(k, l)] + &h[(i, k)] * &h[(j, l)] + &h[(i, l)] * &h[(j, k)]) / &three
        })
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Evaluates the quartic form `Σ T_ijkl a_i a_j a_k a_l` over all ordered
    /// index tuples.
    pub fn quartic(&self, a: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (q, t) in Self::multisets(self.dim).zip(&self.entries) {
            let mult = Rat::from_integer(orderings(q).into());
            total += t * mult * &a[q[0]] * &a[q[1]] * &a[q[2]] * &a[q[3]];
        }
        total
    }
}

/// Number of distinct orderings of a sorted quadruple.
fn orderings(q: [usize; 4]) -> u32 {
    let mut counts = [1u32; 4];
    let mut groups = 0;
    for i in 1..4 {
        if q[i] == q[i - 1] {
            counts[groups] += 1;
        } else {
            groups += 1;
        }
    }
    let fact = |k: u32| (1..=k).product::<u32>();
    24 / counts[..=groups].iter().map(|&c| fact(c)).product::<u32>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn storage_order_matches_index() {
        for dim in 1..6 {
            let qs: Vec<_> = SymTensor4::<i128>::multisets(dim).collect();
            assert_eq!(qs.len(), binom(dim + 3, 4));
            for (k, q) in qs.iter().enumerate() {
                assert_eq!(SymTensor4::<i128>::index(*q), k);
                let mut r = *q;
                r.reverse();
                assert_eq!(SymTensor4::<i128>::index(r), k);
            }
        }
        assert_eq!(SymTensor4::<i128>::zeros(16).entries().len(), 3876);
    }

    #[test]
    fn quartic_matches_direct_power_sum() {
        let vs: [[i64; 3]; 3] = [[1, 0, -2], [3, 1, 1], [0, -1, 2]];
        let mut t = SymTensor4::<i128>::zeros(3);
        for v in &vs {
            assert!(t.add_outer4(v));
        }
        let a = [int(2), int(-1), int(3)];
        let direct: i64 = vs.iter().map(|v| (2 * v[0] - v[1] + 3 * v[2]).pow(4)).sum();
        assert_eq!(t.to_rat().quartic(&a), int(direct));
    }

    #[test]
    fn orderings_counts() {
        assert_eq!(orderings([0, 1, 2, 3]), 24);
        assert_eq!(orderings([0, 0, 1, 2]), 12);
        assert_eq!(orderings([0, 0, 1, 1]), 6);
        assert_eq!(orderings([0, 0, 0, 1]), 4);
        assert_eq!(orderings([2, 2, 2, 2]), 1);
    }
}
