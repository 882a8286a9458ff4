//! Fincke–Pohst enumeration against brute force over a coefficient cube.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sperf_core::enumerate::{short_vectors, EnumOptions, Pruning};
use sperf_core::rat::int;
use sperf_core::{Lattice, Rat, RatMatrix};

/// Symmetric, entries in `[−5, 5]`, made definite by diagonal dominance.
fn random_gram(rng: &mut StdRng, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-5..=5);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    for i in 0..n {
        let off: i64 = (0..n).filter(|&j| j != i).map(|j| g[i][j].abs()).sum();
        g[i][i] = off + rng.gen_range(1..=5);
    }
    g
}

/// Every vector in `[−r, r]^n` of norm at most `bound`, counted by norm.
fn brute(g: &[Vec<i64>], bound: i64, r: i64) -> BTreeMap<Rat, u64> {
    let n = g.len();
    let mut out = BTreeMap::new();
    let mut x = vec![-r; n];
    loop {
        let q: i64 = (0..n).map(|i| x[i] * (0..n).map(|j| g[i][j] * x[j]).sum::<i64>()).sum();
        if q != 0 && q <= bound {
            *out.entry(int(q)).or_insert(0) += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            x[k] += 1;
            if x[k] <= r {
                break;
            }
            x[k] = -r;
            k += 1;
        }
    }
}

#[test]
fn agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..50 {
        let n = 1 + case % 5;
        let g = random_gram(&mut rng, n);
        let l = Lattice::new(RatMatrix::from_i64(&g)).unwrap();
        // Dominance by at least 1 gives x·Gx ≥ |x|², so a bound below 121
        // keeps every short vector inside the cube [−10, 10]^n.
        let b = 2 * (0..n).map(|i| g[i][i]).min().unwrap();
        assert!(b < 121);
        let expected = brute(&g, b, 10);
        let bound = int(b);
        for pruning in [Pruning::Float, Pruning::Exact] {
            let t = short_vectors(&l, &bound, &EnumOptions { pruning, ..Default::default() }).unwrap();
            let got: BTreeMap<Rat, u64> = t.shells.iter().map(|s| (s.norm.clone(), s.count)).collect();
            assert_eq!(got, expected, "case {case}, dim {n}, {pruning:?}");
        }
    }
}
