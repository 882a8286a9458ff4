//! Fincke–Pohst enumeration of short lattice vectors.
//!
//! The Gram matrix is factored exactly as `G = L D Lᵀ` and vectors are
//! enumerated from the last coordinate down. Pruning runs on `f64` copies of
//! the factors with widened intervals, so it can only ever keep too many
//! nodes; every vector that reaches a leaf is accepted or rejected by an
//! exact integer norm computation. [`Pruning::Exact`] replaces the float
//! intervals by rational ones for cross-checking.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::Lattice;
use crate::linalg::RatMatrix;
use crate::rat::{self, Rat};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("enumeration exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },
    #[error("norm bound must be positive")]
    NonPositiveBound,
    #[error("lattice is not even")]
    NotEven,
    #[error("pairing of minimal vector {witness:?} with alpha is not an integer")]
    NonIntegralPairing { witness: Vec<i64> },
    #[error("alpha has {got} coordinates, lattice has dimension {dim}")]
    DimensionMismatch { dim: usize, got: usize },
    #[error("coordinate range exceeds 64-bit integers")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// Widened `f64` intervals; leaves are still decided exactly.
    Float,
    /// Rational intervals throughout; slow, used as a cross-check.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub node_budget: u64,
    pub keep_vectors: bool,
    pub pruning: Pruning,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self { node_budget: DEFAULT_NODE_BUDGET, keep_vectors: false, pruning: Pruning::Float }
    }
}

impl EnumOptions {
    pub fn with_vectors() -> Self {
        Self { keep_vectors: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shell {
    pub norm: Rat,
    /// Number of vectors of this norm, counting both signs.
    pub count: u64,
    /// One representative per `±` pair, if requested.
    pub representatives: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellTable {
    pub bound: Rat,
    pub shells: Vec<Shell>,
}

impl ShellTable {
    pub fn total(&self) -> u64 {
        self.shells.iter().map(|s| s.count).sum()
    }

    pub fn count_of(&self, norm: &Rat) -> u64 {
        self.shells.iter().find(|s| &s.norm == norm).map_or(0, |s| s.count)
    }
}

/// The minimum together with one vector per `±` pair of minimal vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalVectors {
    pub min: Rat,
    pub vectors: Vec<Vec<i64>>,
}

impl MinimalVectors {
    /// Half the kissing number.
    pub fn s(&self) -> u64 {
        self.vectors.len() as u64
    }
}

/// Exact and float copies of `G = L D Lᵀ` plus an integral multiple of `G`.
struct Prepared {
    n: usize,
    /// `gi = scale · G` has integer entries.
    scale: BigInt,
    gi: Vec<BigInt>,
    gi_small: Option<Vec<i128>>,
    d: Vec<Rat>,
    /// `l[j * n + k]` for `j > k`.
    l: Vec<Rat>,
    df: Vec<f64>,
    lf: Vec<f64>,
}

impl Prepared {
    fn new(g: &RatMatrix) -> Self {
        let n = g.rows();
        let mut l = vec![Rat::zero(); n * n];
        let mut d = vec![Rat::zero(); n];
        // Unpivoted LDLᵀ; the Gram matrix is positive definite.
        for k in 0..n {
            let mut dk = g[(k, k)].clone();
            for p in 0..k {
                dk -= &l[k * n + p] * &l[k * n + p] * &d[p];
            }
            for j in k + 1..n {
                let mut v = g[(j, k)].clone();
                for p in 0..k {
                    v -= &l[j * n + p] * &l[k * n + p] * &d[p];
                }
                l[j * n + k] = v / &dk;
            }
            d[k] = dk;
        }
        let scale = rat::lcm_denoms(g.entries());
        let gi: Vec<BigInt> =
            g.entries().iter().map(|x| (x * rat::big(&scale)).to_integer()).collect();
        let gi_small = gi.iter().map(|x| x.to_i128().filter(|v| v.abs() < (1 << 60))).collect();
        let df = d.iter().map(rat::to_f64).collect();
        let lf = l.iter().map(rat::to_f64).collect();
        Self { n, scale, gi, gi_small, d, l, df, lf }
    }

    /// `scale · xᵀGx`, exactly.
    fn norm_scaled(&self, x: &[i64]) -> BigInt {
        if let Some(g) = &self.gi_small {
            if let Some(v) = quad_i128(g, x) {
                return BigInt::from(v);
            }
        }
        let n = self.n;
        let mut acc = BigInt::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                row += &self.gi[i * n + j] * x[j];
            }
            acc += row * x[i];
        }
        acc
    }
}

fn quad_i128(g: &[i128], x: &[i64]) -> Option<i128> {
    let n = x.len();
    let mut acc: i128 = 0;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let mut row: i128 = 0;
        for j in 0..n {
            row = row.checked_add(g[i * n + j].checked_mul(x[j] as i128)?)?;
        }
        acc = acc.checked_add(row.checked_mul(x[i] as i128)?)?;
    }
    Some(acc)
}

/// What a visitor wants after seeing a vector.
enum Visit {
    Continue,
    /// Lower the norm bound to the given value (inclusive).
    Shrink(Rat),
}

/// Calls `visit(x, norm)` for every nonzero `x` with `xᵀGx <= bound`, one per
/// `±` pair (last nonzero coordinate positive), in lexicographic order of the
/// reversed coordinates.
fn walk(
    p: &Prepared,
    bound: &Rat,
    opts: &EnumOptions,
    visit: &mut dyn FnMut(&[i64], Rat) -> Visit,
) -> Result<(), EnumError> {
    if !bound.is_positive() {
        return Err(EnumError::NonPositiveBound);
    }
    match opts.pruning {
        Pruning::Float => walk_float(p, bound, opts.node_budget, visit),
        Pruning::Exact => walk_exact(p, bound, opts.node_budget, visit),
    }
}

fn accept(p: &Prepared, x: &[i64], bound_scaled: &Rat) -> Option<Rat> {
    let ns = p.norm_scaled(x);
    let nsr = rat::big(&ns);
    (nsr <= *bound_scaled).then(|| Rat::new(ns, p.scale.clone()))
}

fn to_i64(v: f64) -> Result<i64, EnumError> {
    if v.is_finite() && v.abs() < 9.0e15 {
        Ok(v as i64)
    } else {
        Err(EnumError::Overflow)
    }
}

fn walk_float(
    p: &Prepared,
    bound: &Rat,
    budget: u64,
    visit: &mut dyn FnMut(&[i64], Rat) -> Visit,
) -> Result<(), EnumError> {
    const REL: f64 = 1e-9;
    let n = p.n;
    if n == 0 {
        return Ok(());
    }
    let mut bound = bound.clone();
    let mut bound_scaled = &bound * rat::big(&p.scale);
    let mut bf = rat::to_f64(&bound);
    let mut tol = REL * (1.0 + bf);
    let mut x = vec![0i64; n];
    let mut hi = vec![0i64; n];
    let mut center = vec![0.0f64; n];
    // rem[k] = budget left for levels < k, rem[n] = bound
    let mut rem = vec![0.0f64; n + 1];
    let mut zero_above = vec![true; n + 1];
    let mut nodes: u64 = 0;

    let range = |k: usize, r: f64, c: f64, spread: f64, zero_above: bool| -> Result<(i64, i64), EnumError> {
        let rad = (r.max(0.0) / p.df[k]).max(0.0);
        let rad = libm::sqrt(rad);
        let delta = REL * (1.0 + spread + rad);
        let mut lo = to_i64(libm::ceil(-c - rad - delta))?;
        let hi = to_i64(libm::floor(-c + rad + delta))?;
        if zero_above {
            lo = lo.max(0);
        }
        Ok((lo, hi))
    };

    rem[n] = bf;
    let mut k = n - 1;
    let (lo, h) = range(k, bf, 0.0, 0.0, true)?;
    x[k] = lo;
    hi[k] = h;
    loop {
        if x[k] > hi[k] {
            k += 1;
            if k == n {
                return Ok(());
            }
            x[k] += 1;
            continue;
        }
        nodes += 1;
        if nodes > budget {
            return Err(EnumError::BudgetExceeded { budget });
        }
        let t = x[k] as f64 + center[k];
        let r = rem[k + 1] - p.df[k] * t * t;
        if r < -tol {
            x[k] += 1;
            continue;
        }
        let za = zero_above[k + 1] && x[k] == 0;
        if k == 0 {
            if !za {
                if let Some(norm) = accept(p, &x, &bound_scaled) {
                    if let Visit::Shrink(b) = visit(&x, norm) {
                        if b < bound {
                            let drop = bf - rat::to_f64(&b);
                            bound = b;
                            bound_scaled = &bound * rat::big(&p.scale);
                            bf = rat::to_f64(&bound);
                            tol = REL * (1.0 + bf);
                            for v in rem.iter_mut() {
                                *v -= drop;
                            }
                        }
                    }
                }
            }
            x[0] += 1;
            continue;
        }
        rem[k] = r;
        zero_above[k] = za;
        k -= 1;
        let mut c = 0.0;
        let mut spread = 0.0;
        for j in k + 1..n {
            let v = p.lf[j * n + k] * x[j] as f64;
            c += v;
            spread += v.abs();
        }
        center[k] = c;
        let (lo, h) = range(k, r, c, spread, za)?;
        x[k] = lo;
        hi[k] = h;
    }
}

/// Integer interval `{x : (x + c)² <= t}`, computed exactly.
fn exact_range(c: &Rat, t: &Rat) -> Option<(BigInt, BigInt)> {
    if t.is_negative() {
        return None;
    }
    let inside = |x: &BigInt| {
        let y = rat::big(x) + c;
        &y * &y <= *t
    };
    let centre = -c;
    let rad = libm::sqrt(rat::to_f64(t).max(0.0));
    let guess = |v: f64| BigInt::from(libm::floor(v) as i64);
    let mut lo = guess(rat::to_f64(&centre) - rad);
    let mut hi = guess(rat::to_f64(&centre) + rad);
    // Walk the float guesses to the exact endpoints.
    let start = rat::floor(&centre);
    let anchor = if inside(&start) { start } else { &start + 1 };
    if !inside(&anchor) {
        return None;
    }
    if lo > anchor {
        lo = anchor.clone();
    }
    if hi < anchor {
        hi = anchor.clone();
    }
    while !inside(&lo) {
        lo += 1;
    }
    while inside(&(&lo - 1)) {
        lo -= 1;
    }
    while !inside(&hi) {
        hi -= 1;
    }
    while inside(&(&hi + 1)) {
        hi += 1;
    }
    Some((lo, hi))
}

fn walk_exact(
    p: &Prepared,
    bound: &Rat,
    budget: u64,
    visit: &mut dyn FnMut(&[i64], Rat) -> Visit,
) -> Result<(), EnumError> {
    let n = p.n;
    let mut x = vec![0i64; n];
    let mut nodes = 0u64;
    let mut bound = bound.clone();
    fn rec(
        p: &Prepared,
        k: usize,
        partial: Rat,
        zero_above: bool,
        x: &mut Vec<i64>,
        bound: &mut Rat,
        nodes: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&[i64], Rat) -> Visit,
    ) -> Result<(), EnumError> {
        let n = p.n;
        let mut c = Rat::zero();
        for j in k + 1..n {
            c += &p.l[j * n + k] * rat::int(x[j]);
        }
        let t = (&*bound - &partial) / &p.d[k];
        let Some((lo, hi)) = exact_range(&c, &t) else { return Ok(()) };
        let lo = if zero_above && lo.is_negative() { BigInt::zero() } else { lo };
        let (lo, hi) = (lo.to_i64().ok_or(EnumError::Overflow)?, hi.to_i64().ok_or(EnumError::Overflow)?);
        for v in lo..=hi {
            *nodes += 1;
            if *nodes > budget {
                return Err(EnumError::BudgetExceeded { budget });
            }
            x[k] = v;
            let y = rat::int(v) + &c;
            let s = &partial + &p.d[k] * &y * &y;
            if s > *bound {
                continue;
            }
            let za = zero_above && v == 0;
            if k == 0 {
                if !za {
                    if let Visit::Shrink(b) = visit(x, s.clone()) {
                        if b < *bound {
                            *bound = b;
                        }
                    }
                }
            } else {
                rec(p, k - 1, s, za, x, bound, nodes, budget, visit)?;
            }
        }
        x[k] = 0;
        Ok(())
    }
    if n == 0 {
        return Ok(());
    }
    rec(p, n - 1, Rat::zero(), true, &mut x, &mut bound, &mut nodes, budget, visit)
}

/// Streams every nonzero vector of norm at most `bound`, one per `±` pair.
pub fn for_each_vector(
    l: &Lattice,
    bound: &Rat,
    opts: &EnumOptions,
    mut f: impl FnMut(&[i64], &Rat),
) -> Result<(), EnumError> {
    let p = Prepared::new(l.gram());
    walk(&p, bound, opts, &mut |x, norm| {
        f(x, &norm);
        Visit::Continue
    })
}

/// All vectors of norm at most `bound`, grouped into shells by norm.
pub fn short_vectors(l: &Lattice, bound: &Rat, opts: &EnumOptions) -> Result<ShellTable, EnumError> {
    let mut shells: BTreeMap<Rat, (u64, Vec<Vec<i64>>)> = BTreeMap::new();
    for_each_vector(l, bound, opts, |x, norm| {
        let e = shells.entry(norm.clone()).or_insert_with(|| (0, Vec::new()));
        e.0 += 2;
        if opts.keep_vectors {
            e.1.push(x.to_vec());
        }
    })?;
    let shells = shells
        .into_iter()
        .map(|(norm, (count, reps))| Shell {
            norm,
            count,
            representatives: opts.keep_vectors.then_some(reps),
        })
        .collect();
    Ok(ShellTable { bound: bound.clone(), shells })
}

/// The minimum of the lattice.
pub fn minimum(l: &Lattice, opts: &EnumOptions) -> Result<Rat, EnumError> {
    let g = l.gram();
    let mut best = (0..l.dim()).map(|i| g[(i, i)].clone()).min().ok_or(EnumError::NonPositiveBound)?;
    let p = Prepared::new(g);
    let start = best.clone();
    walk(&p, &start, opts, &mut |_, norm| {
        if norm < best {
            best = norm;
        }
        Visit::Shrink(best.clone())
    })?;
    Ok(best)
}

pub fn minimal_vectors(l: &Lattice, opts: &EnumOptions) -> Result<MinimalVectors, EnumError> {
    let min = minimum(l, opts)?;
    let mut vectors = Vec::new();
    for_each_vector(l, &min, opts, |x, norm| {
        if *norm == min {
            vectors.push(x.to_vec());
        }
    })?;
    Ok(MinimalVectors { min, vectors })
}

/// `(min, s)` with `s` half the number of minimal vectors.
pub fn minimum_and_kissing(l: &Lattice, opts: &EnumOptions) -> Result<(Rat, u64), EnumError> {
    let mv = minimal_vectors(l, opts)?;
    Ok((mv.min.clone(), mv.s()))
}

/// `a(j) = #{x : (x,x) = 2j}` for `j = 0..=precision`.
pub fn theta_coeffs(l: &Lattice, precision: usize, opts: &EnumOptions) -> Result<Vec<u64>, EnumError> {
    if !l.is_even() {
        return Err(EnumError::NotEven);
    }
    let mut a = vec![0u64; precision + 1];
    a[0] = 1;
    if precision == 0 {
        return Ok(a);
    }
    let bound = rat::int(2 * precision as i64);
    for_each_vector(l, &bound, opts, |_, norm| {
        let j = (norm.numer() / BigInt::from(2)).to_usize().expect("norm within bound");
        a[j] += 2;
    })?;
    Ok(a)
}

/// Minimal vectors sorted by their positive pairing with `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSets {
    /// `alpha` in dual-basis coordinates.
    pub alpha: Vec<Rat>,
    /// `i -> {x in Min(L) : (x, alpha) = i}` for `i > 0`.
    pub layers: BTreeMap<u64, Vec<Vec<i64>>>,
}

impl LayerSets {
    pub fn size(&self, i: u64) -> usize {
        self.layers.get(&i).map_or(0, Vec::len)
    }
}

/// `(x, alpha)` for lattice coordinates `x` and dual coordinates `alpha`.
pub fn pairing(x: &[i64], alpha: &[Rat]) -> Rat {
    x.iter().zip(alpha).filter(|(v, _)| **v != 0).map(|(v, a)| a * rat::int(*v)).sum()
}

/// Layers `N_i(alpha)` of the minimal vectors; `alpha` is in dual coordinates.
pub fn layer_sets(mv: &MinimalVectors, alpha: &[Rat]) -> Result<LayerSets, EnumError> {
    let mut layers: BTreeMap<u64, Vec<Vec<i64>>> = BTreeMap::new();
    for x in &mv.vectors {
        if x.len() != alpha.len() {
            return Err(EnumError::DimensionMismatch { dim: x.len(), got: alpha.len() });
        }
        let v = pairing(x, alpha);
        if !rat::is_int(&v) {
            return Err(EnumError::NonIntegralPairing { witness: x.clone() });
        }
        if v.is_zero() {
            continue;
        }
        let (key, vec) = if v.is_positive() {
            (v.numer().clone(), x.clone())
        } else {
            (-v.numer(), x.iter().map(|c| -c).collect())
        };
        layers.entry(key.to_u64().ok_or(EnumError::Overflow)?).or_default().push(vec);
    }
    Ok(LayerSets { alpha: alpha.to_vec(), layers })
}

/// Dual coordinates `G z` of the vector with lattice coordinates `z`.
pub fn to_dual_coords(l: &Lattice, z: &[i64]) -> Vec<Rat> {
    let zr: Vec<Rat> = z.iter().map(|&v| rat::int(v)).collect();
    l.gram().mul_vec(&zr)
}

impl core::fmt::Display for ShellTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for s in &self.shells {
            writeln!(f, "{}\t{}", s.norm, s.count)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn lat(rows: &[&[i64]]) -> Lattice {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Lattice::new(RatMatrix::from_i64(&rows)).unwrap()
    }

    fn e8() -> Lattice {
        lat(&[
            &[2, -1, 0, 0, 0, 0, 0, 0],
            &[-1, 2, -1, 0, 0, 0, 0, 0],
            &[0, -1, 2, -1, 0, 0, 0, -1],
            &[0, 0, -1, 2, -1, 0, 0, 0],
            &[0, 0, 0, -1, 2, -1, 0, 0],
            &[0, 0, 0, 0, -1, 2, -1, 0],
            &[0, 0, 0, 0, 0, -1, 2, 0],
            &[0, 0, -1, 0, 0, 0, 0, 2],
        ])
    }

    #[test]
    fn small_shells() {
        let z2 = Lattice::new(RatMatrix::identity(2)).unwrap();
        let t = short_vectors(&z2, &int(1), &EnumOptions::with_vectors()).unwrap();
        assert_eq!(t.shells.len(), 1);
        assert_eq!(t.shells[0].count, 4);
        assert_eq!(t.shells[0].representatives.as_ref().unwrap(), &vec![vec![1, 0], vec![0, 1]]);
        let a2 = lat(&[&[2, -1], &[-1, 2]]);
        let t = short_vectors(&a2, &int(2), &EnumOptions::default()).unwrap();
        assert_eq!((t.shells[0].norm.clone(), t.shells[0].count), (int(2), 6));
    }

    #[test]
    fn e8_minimum_and_theta() {
        assert_eq!(minimum_and_kissing(&e8(), &EnumOptions::default()).unwrap(), (int(2), 120));
        assert_eq!(theta_coeffs(&e8(), 2, &EnumOptions::default()).unwrap(), vec![1, 240, 2160]);
        let a1 = lat(&[&[2]]);
        assert_eq!(theta_coeffs(&a1, 4, &EnumOptions::default()).unwrap(), vec![1, 2, 0, 0, 2]);
        let z1 = lat(&[&[1]]);
        assert_eq!(theta_coeffs(&z1, 2, &EnumOptions::default()), Err(EnumError::NotEven));
    }

    #[test]
    fn exact_and_float_pruning_agree() {
        let l = lat(&[&[3, 1, -1], &[1, 4, 2], &[-1, 2, 5]]);
        let mut opts = EnumOptions::with_vectors();
        let a = short_vectors(&l, &int(12), &opts).unwrap();
        opts.pruning = Pruning::Exact;
        let b = short_vectors(&l, &int(12), &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = EnumOptions { node_budget: 10, ..EnumOptions::default() };
        assert_eq!(
            short_vectors(&e8(), &int(4), &opts),
            Err(EnumError::BudgetExceeded { budget: 10 })
        );
    }

    #[test]
    fn layers_of_e8_root() {
        let l = e8();
        let mv = minimal_vectors(&l, &EnumOptions::default()).unwrap();
        let alpha = to_dual_coords(&l, &mv.vectors[0]);
        let ls = layer_sets(&mv, &alpha).unwrap();
        assert_eq!(ls.layers[&2], vec![mv.vectors[0].clone()]);
        assert_eq!(ls.size(1), 56);
        let z2 = Lattice::new(RatMatrix::identity(2)).unwrap();
        let mv = minimal_vectors(&z2, &EnumOptions::default()).unwrap();
        let ls = layer_sets(&mv, &[int(1), int(0)]).unwrap();
        assert_eq!(ls.layers[&1], vec![vec![1, 0]]);
        let half = [crate::rat::frac(1, 2), int(0)];
        assert!(matches!(layer_sets(&mv, &half), Err(EnumError::NonIntegralPairing { .. })));
    }
}
