//! Builds the catalogue fixtures from explicit constructions.
//!
//! Run with `cargo run --release -p sperf --example build_catalogue -- <out-dir>`.
//! Each Gram matrix is LLL-reduced before it is written; the catalogue tests
//! then certify every invariant independently, so nothing here is trusted.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sperf_core::design::is_strongly_perfect;
use sperf_core::enumerate::{minimal_vectors, minimum, EnumOptions};
use sperf_core::linalg::LinalgError;
use sperf_core::rat::{self, Rat};
use sperf_core::{Lattice, RatMatrix};

/// LLL-reduces the basis behind a positive definite Gram matrix.
///
/// Returns the reduced Gram `T G Tᵀ` and the unimodular `T` (rows are the
/// new basis vectors in old coordinates). `delta` is the Lovász constant.
pub fn lll(g: &RatMatrix, delta: &Rat) -> Result<(RatMatrix, Vec<Vec<i64>>), LinalgError> {
    let n = g.require_symmetric()?;
    let mut g = g.clone();
    let mut t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n <= 1 {
        return Ok((g, t));
    }
    let mut mu = RatMatrix::zeros(n, n);
    let mut b = vec![Rat::zero(); n];
    b[0] = g[(0, 0)].clone();
    if !b[0].is_positive() {
        return Err(LinalgError::Singular);
    }
    let half = rat::frac(1, 2);
    let mut k = 1;
    let mut kmax = 0;
    let red = |g: &mut RatMatrix, t: &mut Vec<Vec<i64>>, mu: &mut RatMatrix, k: usize, l: usize| {
        if mu[(k, l)].abs() <= half {
            return;
        }
        let q = rat::floor(&(&mu[(k, l)] + &half));
        let qi: i64 = rat::to_i64(&rat::big(&q)).expect("reduction multiplier fits i64");
        let qr = rat::int(qi);
        for j in 0..n {
            let v = &g[(l, j)] * &qr;
            g[(k, j)] -= v;
            t[k][j] -= qi * t[l][j];
        }
        for j in 0..n {
            let v = &g[(j, l)] * &qr;
            g[(j, k)] -= v;
        }
        mu[(k, l)] -= &qr;
        for i in 0..l {
            let v = &mu[(l, i)] * &qr;
            mu[(k, i)] -= v;
        }
    };
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..k {
                let s: Rat = (0..j).map(|i| &mu[(j, i)] * &mu[(k, i)] * &b[i]).sum();
                mu[(k, j)] = (&g[(k, j)] - s) / &b[j];
            }
            let s: Rat = (0..k).map(|j| &mu[(k, j)] * &mu[(k, j)] * &b[j]).sum();
            b[k] = &g[(k, k)] - s;
            if !b[k].is_positive() {
                return Err(LinalgError::Singular);
            }
        }
        red(&mut g, &mut t, &mut mu, k, k - 1);
        let m = mu[(k, k - 1)].clone();
        if b[k] < (delta - &m * &m) * &b[k - 1] {
            // swap k and k−1
            t.swap(k, k - 1);
            for j in 0..n {
                let (x, y) = (g[(k, j)].clone(), g[(k - 1, j)].clone());
                g[(k, j)] = y;
                g[(k - 1, j)] = x;
            }
            for j in 0..n {
                let (x, y) = (g[(j, k)].clone(), g[(j, k - 1)].clone());
                g[(j, k)] = y;
                g[(j, k - 1)] = x;
            }
            for j in 0..k - 1 {
                let (x, y) = (mu[(k, j)].clone(), mu[(k - 1, j)].clone());
                mu[(k, j)] = y;
                mu[(k - 1, j)] = x;
            }
            let bb = &b[k] + &m * &m * &b[k - 1];
            mu[(k, k - 1)] = &m * &b[k - 1] / &bb;
            b[k] = &b[k - 1] * &b[k] / &bb;
            b[k - 1] = bb;
            for i in k + 1..=kmax {
                let x = mu[(i, k)].clone();
                mu[(i, k)] = &mu[(i, k - 1)] - &m * &x;
                mu[(i, k - 1)] = x + &mu[(k, k - 1)] * &mu[(i, k)];
            }
            k = k.max(2) - 1;
        } else {
            for l in (0..k - 1).rev() {
                red(&mut g, &mut t, &mut mu, k, l);
            }
            k += 1;
        }
    }
    Ok((g, t))
}

/// A basis (rows, echelon form) of the integer span of `gens`.
pub fn span_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        loop {
            let pivot = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                r += 1;
                break;
            }
        }
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Gram of the rows of `b` under `x·y / scale`.
fn gram_of(b: &[Vec<BigInt>], scale: i64) -> RatMatrix {
    let n = b.len();
    let mut g = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let s: BigInt = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
            g[(i, j)] = rat::big(&s) / rat::int(scale);
        }
    }
    g
}

fn reduced(g: &RatMatrix) -> (RatMatrix, Vec<Vec<i64>>) {
    lll(g, &rat::frac(99, 100)).expect("positive definite")
}

/// Applies integer `t` (rows) to row vectors `b`.
fn combine(t: &[Vec<i64>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    t.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); b[0].len()];
            for (c, v) in row.iter().zip(b) {
                if *c != 0 {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += x * c;
                    }
                }
            }
            out
        })
        .collect()
}

/// `{x ∈ ℤ¹⁶ : x mod 2 ∈ RM(1,4), Σx ≡ 0 mod 4}` under `x·y/2`, as rows.
fn barnes_wall_rows() -> Vec<Vec<BigInt>> {
    let mut gens: Vec<Vec<i64>> = Vec::new();
    gens.push(vec![1; 16]);
    for bit in 0..4 {
        gens.push((0..16).map(|p| ((p >> bit) & 1) as i64).collect());
    }
    for i in 0..16 {
        for j in i + 1..16 {
            let mut a = vec![0i64; 16];
            a[i] = 2;
            a[j] = 2;
            gens.push(a.clone());
            a[j] = -2;
            gens.push(a);
        }
    }
    span_basis(&big_rows(&gens))
}

fn opts() -> EnumOptions {
    EnumOptions::default()
}

fn describe(name: &str, l: &Lattice) {
    let mv = minimal_vectors(l, &opts()).unwrap();
    let dual = l.dual();
    let dmv = minimal_vectors(&dual, &opts()).unwrap();
    println!(
        "{name}: det {} min {} s {} dual min {} t {} smith {:?}",
        l.det(),
        mv.min,
        mv.s(),
        dmv.min,
        dmv.s(),
        l.smith_invariant().map(|s| s.to_string())
    );
}

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/cli/fixtures".into()));
    std::fs::create_dir_all(&out).unwrap();

    let bw = barnes_wall_rows();
    assert_eq!(bw.len(), 16);
    let (g, t) = reduced(&gram_of(&bw, 2));
    let _bw = combine(&t, &bw);
    let lambda = Lattice::named("Lambda16", g.clone()).unwrap();
    describe("Lambda16", &lambda);
    let odd = odd_barnes_wall(&lambda);
    describe("O16", &odd);
    let gamma = index_four_sublattice(&lambda);
    describe("Gamma16", &gamma);
    let n16 = five_modular();
    describe("N16", &n16);
    for (file, l) in [("lambda16", &lambda), ("o16", &odd), ("gamma16", &gamma), ("n16", &n16)] {
        let path = out.join(format!("{file}.json"));
        std::fs::write(&path, sperf::format::lattice_json(l)).unwrap();
        println!("wrote {}", path.display());
    }
}

/// Coordinates (in the basis of `l`, doubled) of a dual vector given in dual coordinates.
fn doubled_primal(l: &Lattice, a: &[i64]) -> Vec<BigInt> {
    let h = l.gram().inverse().unwrap();
    let a: Vec<Rat> = a.iter().map(|&x| rat::int(x)).collect();
    h.mul_vec(&a)
        .iter()
        .map(|x| {
            let y = x * rat::int(2);
            assert!(rat::is_int(&y));
            y.to_integer()
        })
        .collect()
}

/// Basis of `l` in doubled coordinates, plus `extra`; returns the reduced lattice.
fn extend(l: &Lattice, name: &str, extra: &[Vec<BigInt>], scale: i64) -> Lattice {
    let n = l.dim();
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(if i == j { scale } else { 0 })).collect())
        .collect();
    gens.extend(extra.iter().cloned());
    sublattice(l, name, &gens, scale)
}

/// The lattice spanned by `gens` (coordinates in the basis of `l`, multiplied by `scale`).
fn sublattice(l: &Lattice, name: &str, gens: &[Vec<BigInt>], scale: i64) -> Lattice {
    let c = span_basis(gens);
    assert_eq!(c.len(), l.dim());
    let cm = RatMatrix::new(
        c.len(),
        l.dim(),
        c.iter().flatten().map(|x| rat::big(x) / rat::int(scale)).collect(),
    )
    .unwrap();
    let g = cm.mul(l.gram()).unwrap().mul(&cm.transpose()).unwrap();
    let (g, _) = reduced(&g);
    Lattice::named(name, g).unwrap()
}

/// `Λ ∪ (v + Λ)` for a norm-3 vector `v` of the dual.
fn odd_barnes_wall(l: &Lattice) -> Lattice {
    let dual = l.dual();
    let mut v = None;
    sperf_core::enumerate::for_each_vector(&dual, &rat::int(3), &opts(), |x, norm| {
        if v.is_none() && *norm == rat::int(3) {
            v = Some(x.to_vec());
        }
    })
    .unwrap();
    let v = doubled_primal(l, &v.expect("norm-3 dual vector"));
    extend(l, "O16", &[v], 2)
}

fn parity(mask: u32, y: u32) -> i64 {
    if (mask & y).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Kernel of `x ↦ (x·y1, x·y2) mod 2` in the basis of `l`.
fn kernel(l: &Lattice, y1: u32, y2: u32) -> Lattice {
    let n = l.dim();
    let img = |i: usize| ((y1 >> i) & 1, (y2 >> i) & 1);
    let unit = |idx: &[usize], c: i64| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for &i in idx {
            v[i] += c;
        }
        v
    };
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(unit(&[i], 2));
        if img(i) == (0, 0) {
            gens.push(unit(&[i], 1));
        }
        for j in i + 1..n {
            if img(i) == img(j) {
                gens.push(unit(&[i, j], 1));
            }
            for k in j + 1..n {
                let (a, b, c) = (img(i), img(j), img(k));
                if a != (0, 0) && b != (0, 0) && c != (0, 0) && a != b && b != c && a != c {
                    gens.push(unit(&[i, j, k], 1));
                }
            }
        }
    }
    sublattice(l, "Gamma16", &gens, 1)
}

/// An index-4 sublattice keeping 864 minimal vectors whose dual has minimum 3/2
/// and which is strongly perfect together with its dual.
fn index_four_sublattice(l: &Lattice) -> Lattice {
    let mv = minimal_vectors(l, &opts()).unwrap();
    let masks: Vec<u32> = mv
        .vectors
        .iter()
        .map(|x| x.iter().enumerate().fold(0u32, |m, (i, c)| m | (((c.rem_euclid(2)) as u32) << i)))
        .collect();
    let s: Vec<i64> = (0..1u32 << 16).map(|y| masks.iter().map(|&m| parity(m, y)).sum()).collect();
    let mut hist = std::collections::BTreeMap::new();
    for v in &s[1..] {
        *hist.entry(*v).or_insert(0u64) += 1;
    }
    println!("character sums: {hist:?}");
    let target = 4 * 432 - 2160;
    let mut tried = 0;
    for y1 in 1..1u32 << 16 {
        for y2 in y1 + 1..1u32 << 16 {
            let y3 = y1 ^ y2;
            if y3 < y2 || s[y1 as usize] + s[y2 as usize] + s[y3 as usize] != target {
                continue;
            }
            let k = kernel(l, y1, y2);
            let d = k.dual();
            let dmin = minimum(&d, &opts()).unwrap();
            tried += 1;
            if dmin != rat::frac(3, 2) {
                continue;
            }
            let sp = is_strongly_perfect(&k, &opts()).unwrap() && is_strongly_perfect(&d, &opts()).unwrap();
            println!("pair {y1:#x} {y2:#x}: dual min {dmin}, strongly perfect {sp} after {tried}");
            if sp {
                return k;
            }
        }
    }
    panic!("no index-4 sublattice found");
}

fn int_gram(l: &Lattice) -> Vec<Vec<i64>> {
    l.gram().to_rows().iter().map(|r| r.iter().map(|x| rat::to_i64(x).unwrap()).collect()).collect()
}

fn mask_of(x: &[i64]) -> u32 {
    x.iter().enumerate().fold(0u32, |m, (i, c)| m | ((c.rem_euclid(2) as u32) << i))
}

/// The 2-neighbour `L_v + ℤ v/2` for `v` of norm divisible by 8.
fn neighbour(l: &Lattice, v: &[i64]) -> Lattice {
    let g = int_gram(l);
    let n = g.len();
    let w: Vec<i64> = (0..n).map(|i| (0..n).map(|j| g[i][j] * v[j]).sum::<i64>().rem_euclid(2)).collect();
    let k = w.iter().position(|&x| x == 1).expect("v not in 2L");
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        if i == k {
            e[k] = BigInt::from(4);
        } else {
            e[i] = BigInt::from(2);
            if w[i] == 1 {
                e[k] = BigInt::from(-2);
            }
        }
        gens.push(e);
    }
    gens.push(v.iter().map(|&x| BigInt::from(x)).collect());
    sublattice(l, "N16", &gens, 2)
}

fn norm_i(g: &[Vec<i64>], v: &[i64]) -> i64 {
    (0..v.len()).map(|i| v[i] * (0..v.len()).map(|j| g[i][j] * v[j]).sum::<i64>()).sum()
}

/// Solves `G v ≡ w (mod 2)` for odd-determinant `G` by brute elimination over F2.
fn solve_mod2(g: &[Vec<i64>], w: u32) -> Vec<i64> {
    let n = g.len();
    let mut rows: Vec<(u32, u32)> = (0..n)
        .map(|i| ((0..n).fold(0u32, |m, j| m | ((g[i][j].rem_euclid(2) as u32) << j)), (w >> i) & 1))
        .collect();
    let mut piv = vec![usize::MAX; n];
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| (rows[i].0 >> c) & 1 == 1) else { continue };
        rows.swap(r, p);
        for i in 0..n {
            if i != r && (rows[i].0 >> c) & 1 == 1 {
                rows[i] = (rows[i].0 ^ rows[r].0, rows[i].1 ^ rows[r].1);
            }
        }
        piv[c] = r;
        r += 1;
    }
    (0..n).map(|c| rows[piv[c]].1 as i64).collect()
}

fn direct_sum(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m) = (a.rows(), b.rows());
    let mut g = RatMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            g[(n + i, n + j)] = b[(i, j)].clone();
        }
    }
    g
}

/// Walks 2-neighbours from `(A4 ⊥ √5 A4*)²`, which is even and 5-modular
/// with discriminant group `(ℤ/5)⁸`, until the minimum reaches 6.
/// 2-neighbours stay in the genus.
fn five_modular() -> Lattice {
    let a4 = sperf_core::standard::a(4);
    let a4d = a4.gram().inverse().unwrap().scale(&rat::int(5));
    let eight = direct_sum(a4.gram(), &a4d);
    let mut cur = Lattice::named("N16", direct_sum(&eight, &eight)).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    for step in 0..40 {
        let mv = minimal_vectors(&cur, &opts()).unwrap();
        println!("step {step}: min {} s {}", mv.min, mv.s());
        if mv.min == rat::int(6) {
            return cur;
        }
        let g = int_gram(&cur);
        let masks: Vec<u32> = mv.vectors.iter().map(|x| mask_of(x)).collect();
        // rank classes of norm 0 mod 4 by how many minimal vectors they kill,
        // then score the best few by the neighbour they actually produce
        let mut cands: Vec<(usize, u32)> = (1..1u32 << 16)
            .map(|w| (masks.iter().filter(|&&m| (m & w).count_ones() % 2 == 1).count(), w))
            .filter(|&(k, w)| k > 0 && norm_i(&g, &solve_mod2(&g, w)) % 4 == 0)
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0));
        cands.truncate(60);
        let mut scored = Vec::new();
        for &(_, w) in &cands {
            let mut v = solve_mod2(&g, w);
            if norm_i(&g, &v) % 8 != 0 {
                let y = mv.vectors.iter().find(|x| (mask_of(x) & w).count_ones() % 2 == 1).unwrap();
                for (a, b) in v.iter_mut().zip(y) {
                    *a += 2 * b;
                }
            }
            let nb = neighbour(&cur, &v);
            let nmv = minimal_vectors(&nb, &opts()).unwrap();
            scored.push(((nmv.min.clone(), std::cmp::Reverse(nmv.s())), nb));
        }
        let top = scored.iter().map(|(k, _)| k.clone()).max().unwrap();
        let best: Vec<Lattice> = scored.into_iter().filter(|(k, _)| *k == top).map(|(_, l)| l).collect();
        println!("  best neighbour: min {} s {} ({} ties)", top.0, top.1 .0, best.len());
        cur = best[rng.gen_range(0..best.len())].clone();
    }
    cur
}
