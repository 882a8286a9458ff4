//! Backtracking completion of partially specified Gram matrices.
//!
//! Vectors are added one at a time. The unpivoted `LDLᵀ` of the Gram block of
//! the vectors placed so far is kept; each new entry extends the forward
//! substitution for the next vector, and the partial residual
//! `G_jj − Σ D_k L_jk²` only decreases, so a negative value prunes at once.
//! Linear equalities between entries are pruned by interval reasoning over
//! the candidates still open.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::{self, Ldlt, LinalgError, RatMatrix};
use crate::rat::{self, Rat};

pub const DEFAULT_COEFF_BOUND: u32 = 3;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid partial Gram matrix: {0}")]
    Invalid(String),
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("search exceeded {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
}

/// `Σ coeff·G[i][j] = rhs` over upper-triangle positions `(i, j)`, `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub terms: Vec<((usize, usize), Rat)>,
    pub rhs: Rat,
}

impl LinearConstraint {
    /// `Σ_j G[i][j] = rhs`.
    pub fn row_sum(size: usize, i: usize, rhs: Rat) -> Self {
        let terms = (0..size).map(|j| ((i.min(j), i.max(j)), Rat::from_integer(1.into()))).collect();
        Self { terms, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGram {
    pub size: usize,
    pub fixed: BTreeMap<(usize, usize), Rat>,
    pub unknowns: BTreeMap<(usize, usize), Vec<Rat>>,
    pub rank_bound: usize,
    pub min_bound: Rat,
    pub coeff_bound: u32,
    pub linear: Vec<LinearConstraint>,
    /// Generators of the index permutation group used for deduplication;
    /// `g[i]` is the image of `i`.
    pub generators: Vec<Vec<usize>>,
    /// Order in which vectors are added; defaults to `0..size`.
    pub order: Option<Vec<usize>>,
}

impl PartialGram {
    pub fn new(size: usize, rank_bound: usize, min_bound: Rat) -> Self {
        Self {
            size,
            fixed: BTreeMap::new(),
            unknowns: BTreeMap::new(),
            rank_bound,
            min_bound,
            coeff_bound: DEFAULT_COEFF_BOUND,
            linear: Vec::new(),
            generators: Vec::new(),
            order: None,
        }
    }

    fn key(i: usize, j: usize) -> (usize, usize) {
        (i.min(j), i.max(j))
    }

    /// Fixes an entry, replacing any candidate list.
    pub fn fix(&mut self, i: usize, j: usize, v: Rat) {
        self.unknowns.remove(&Self::key(i, j));
        self.fixed.insert(Self::key(i, j), v);
    }

    /// Makes an entry unknown, replacing any fixed value.
    pub fn unknown(&mut self, i: usize, j: usize, candidates: Vec<Rat>) {
        self.fixed.remove(&Self::key(i, j));
        self.unknowns.insert(Self::key(i, j), candidates);
    }

    pub fn validate(&self) -> Result<(), CompletionError> {
        let bad = |m: String| Err(CompletionError::Invalid(m));
        for &(i, j) in self.fixed.keys().chain(self.unknowns.keys()) {
            if i > j || j >= self.size {
                return bad(format!("entry ({i},{j}) outside the upper triangle of size {}", self.size));
            }
        }
        for i in 0..self.size {
            for j in i..self.size {
                let f = self.fixed.contains_key(&(i, j));
                let u = self.unknowns.contains_key(&(i, j));
                if f == u {
                    return bad(format!("entry ({i},{j}) must be either fixed or unknown, exactly once"));
                }
                if i == j && u {
                    return bad(format!("diagonal entry ({i},{i}) must be fixed"));
                }
            }
        }
        if let Some((k, _)) = self.unknowns.iter().find(|(_, c)| c.is_empty()) {
            return bad(format!("entry {k:?} has no candidates"));
        }
        for c in &self.linear {
            for ((i, j), _) in &c.terms {
                if i > j || *j >= self.size {
                    return bad(format!("linear constraint uses ({i},{j})"));
                }
            }
        }
        for g in &self.generators {
            if !is_permutation(g, self.size) {
                return bad(format!("generator {g:?} is not a permutation of 0..{}", self.size));
            }
        }
        if let Some(o) = &self.order {
            if !is_permutation(o, self.size) {
                return bad(format!("order {o:?} is not a permutation of 0..{}", self.size));
            }
        }
        if self.coeff_bound == 0 {
            return bad("coeff_bound must be positive".into());
        }
        Ok(())
    }

    /// Number of full assignments, saturating.
    pub fn assignments(&self) -> u128 {
        self.unknowns.values().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128))
    }

    /// The matrix with every unknown set by `choice`.
    pub fn assemble(&self, choice: &BTreeMap<(usize, usize), Rat>) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.size, self.size);
        for ((i, j), v) in self.fixed.iter().chain(choice.iter()) {
            m[(*i, *j)] = v.clone();
            m[(*j, *i)] = v.clone();
        }
        m
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !core::mem::replace(&mut seen[x], true))
}

/// Positive semidefinite with rank at most `rank_bound`.
pub fn psd_rank_check(m: &RatMatrix, rank_bound: usize) -> Result<bool, LinalgError> {
    Ok(linalg::psd_rank(m)?.is_some_and(|r| r <= rank_bound))
}

/// A combination `v` with coefficients in `[−bound, bound]` and
/// `0 < vᵀMv < mu`, if one exists.
pub fn short_combination(m: &RatMatrix, mu: &Rat, bound: u32) -> Result<Option<Vec<i64>>, CompletionError> {
    let (perm, l, d) = match linalg::ldlt(m)? {
        Ldlt::PositiveDefinite { perm, l, d } | Ldlt::PositiveSemidefinite { perm, l, d, .. } => (perm, l, d),
        Ldlt::Indefinite { .. } => return Err(CompletionError::NotPsd),
    };
    let n = perm.len();
    if n == 0 {
        return Ok(None);
    }
    let mut w = vec![0i64; n];
    let found = box_search(&l, &d, mu, bound as i64, n, &mut w, &Rat::zero());
    Ok(found.then(|| {
        let mut v = vec![0i64; n];
        for (k, &orig) in perm.iter().enumerate() {
            v[orig] = w[k];
        }
        v
    }))
}

/// Assigns `w[k−1], …, w[0]` given `w[k..]` with partial norm `acc`.
fn box_search(l: &RatMatrix, d: &[Rat], mu: &Rat, bound: i64, k: usize, w: &mut [i64], acc: &Rat) -> bool {
    if k == 0 {
        return acc.is_positive() && acc < mu;
    }
    let k = k - 1;
    let n = w.len();
    let c: Rat = (k + 1..n).filter(|&i| w[i] != 0).map(|i| &l[(i, k)] * rat::int(w[i])).sum();
    let (lo, hi) = if d[k].is_zero() {
        (-bound, bound)
    } else {
        let room = (mu - acc) / &d[k];
        match int_window(&c, &room) {
            Some((a, b)) => (a.max(-bound), b.min(bound)),
            None => return false,
        }
    };
    for x in lo..=hi {
        w[k] = x;
        let t = rat::int(x) + &c;
        let next = acc + &d[k] * &t * &t;
        if &next <= mu && box_search(l, d, mu, bound, k, w, &next) {
            return true;
        }
    }
    w[k] = 0;
    false
}

/// Integers `x` with `(x + c)² ≤ q`, as an inclusive range.
fn int_window(c: &Rat, q: &Rat) -> Option<(i64, i64)> {
    if q.is_negative() {
        return None;
    }
    let cf = rat::to_f64(c);
    let r = libm::sqrt(rat::to_f64(q));
    let inside = |x: i64| {
        let t = rat::int(x) + c;
        &(&t * &t) <= q
    };
    let mut lo = libm::floor(-cf - r).to_i64()? - 1;
    let mut hi = libm::ceil(-cf + r).to_i64()? + 1;
    while lo <= hi && !inside(lo) {
        lo += 1;
    }
    while hi >= lo && !inside(hi) {
        hi -= 1;
    }
    (lo <= hi).then_some((lo, hi))
}

/// No combination with coefficients in `[−coeff_bound, coeff_bound]` has
/// norm strictly between `0` and `mu`.
pub fn lattice_min_check(m: &RatMatrix, mu: &Rat, coeff_bound: u32) -> Result<bool, CompletionError> {
    Ok(short_combination(m, mu, coeff_bound)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Incremental PSD, rank and linear-constraint pruning.
    #[default]
    Pruned,
    /// Generate every assignment, then test.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionOptions {
    pub mode: SearchMode,
    pub node_budget: u64,
    pub dedup: bool,
    /// In pruned mode, also check the minimum of every completed prefix.
    /// Sound: a short combination of a prefix is one of the whole set.
    pub prefix_min: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self { mode: SearchMode::Pruned, node_budget: DEFAULT_NODE_BUDGET, dedup: true, prefix_min: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    /// One canonical representative per class when deduplicating, sorted.
    pub completions: Vec<RatMatrix>,
    /// Completions before deduplication.
    pub raw_count: usize,
    pub nodes: u64,
    pub coeff_bound: u32,
    pub group_order: usize,
}

/// Closure of the generators (identity included).
pub fn permutation_group(size: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..size).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

fn upper(m: &RatMatrix) -> Vec<Rat> {
    let n = m.rows();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect()
}

/// `P M Pᵀ` with `(PMPᵀ)[p[i]][p[j]] = M[i][j]`.
pub fn permute(m: &RatMatrix, p: &[usize]) -> RatMatrix {
    let n = m.rows();
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(p[i], p[j])] = m[(i, j)].clone();
        }
    }
    out
}

/// Lexicographically least upper triangle over the group orbit.
pub fn canonical_form(m: &RatMatrix, group: &[Vec<usize>]) -> RatMatrix {
    group
        .iter()
        .map(|p| permute(m, p))
        .min_by(|a, b| upper(a).cmp(&upper(b)))
        .unwrap_or_else(|| m.clone())
}

pub fn complete(partial: &PartialGram, opts: &CompletionOptions) -> Result<CompletionReport, CompletionError> {
    partial.validate()?;
    let mut nodes = 0u64;
    let raw = match opts.mode {
        SearchMode::Pruned => Search::new(partial, opts).run(&mut nodes)?,
        SearchMode::Exhaustive => exhaustive(partial, opts.node_budget, &mut nodes)?,
    };
    let raw_count = raw.len();
    let group = permutation_group(partial.size, &partial.generators);
    let mut completions: Vec<RatMatrix> = if opts.dedup {
        let mut classes: BTreeMap<Vec<Rat>, RatMatrix> = BTreeMap::new();
        for m in raw {
            let c = canonical_form(&m, &group);
            classes.entry(upper(&c)).or_insert(c);
        }
        classes.into_values().collect()
    } else {
        raw
    };
    completions.sort_by_key(upper);
    Ok(CompletionReport { completions, raw_count, nodes, coeff_bound: partial.coeff_bound, group_order: group.len() })
}

fn final_checks(p: &PartialGram, m: &RatMatrix) -> Result<bool, CompletionError> {
    if !p.linear.iter().all(|c| {
        let lhs: Rat = c.terms.iter().map(|((i, j), k)| k * &m[(*i, *j)]).sum();
        lhs == c.rhs
    }) {
        return Ok(false);
    }
    if !psd_rank_check(m, p.rank_bound)? {
        return Ok(false);
    }
    lattice_min_check(m, &p.min_bound, p.coeff_bound)
}

fn exhaustive(p: &PartialGram, budget: u64, nodes: &mut u64) -> Result<Vec<RatMatrix>, CompletionError> {
    let keys: Vec<(usize, usize)> = p.unknowns.keys().copied().collect();
    let cands: Vec<&Vec<Rat>> = keys.iter().map(|k| &p.unknowns[k]).collect();
    let mut idx = vec![0usize; keys.len()];
    let mut out = Vec::new();
    loop {
        *nodes += 1;
        if *nodes > budget {
            return Err(CompletionError::SearchBudgetExceeded { budget });
        }
        let choice: BTreeMap<_, _> = keys.iter().zip(&idx).zip(&cands).map(|((k, &i), c)| (*k, c[i].clone())).collect();
        let m = p.assemble(&choice);
        if final_checks(p, &m)? {
            out.push(m);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < cands[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// A position in the search: entry `(i, j)` of the Gram matrix in the
/// reordered coordinates, `i < j`, processed column by column.
struct Step {
    /// Original indices.
    orig: (usize, usize),
    /// Reordered indices.
    i: usize,
    j: usize,
    candidates: Option<Vec<Rat>>,
    /// Linear constraints touching this entry, with coefficient.
    linear: Vec<(usize, Rat)>,
}

struct Search<'a> {
    p: &'a PartialGram,
    budget: u64,
    prefix_min: bool,
    order: Vec<usize>,
    steps: Vec<Step>,
    /// `col_end[j]`: index into `steps` after the last entry of column `j`.
    col_end: Vec<usize>,
    // linear constraint state: assigned sum and remaining [min, max]
    lin_sum: Vec<Rat>,
    lin_min: Vec<Rat>,
    lin_max: Vec<Rat>,
}

struct State {
    /// Gram entries in reordered coordinates.
    g: RatMatrix,
    /// Unit lower-triangular factor and pivots of the placed block.
    l: RatMatrix,
    d: Vec<Rat>,
    rank: usize,
    /// Residual of the current column.
    residual: Rat,
}

impl<'a> Search<'a> {
    fn new(p: &'a PartialGram, opts: &CompletionOptions) -> Self {
        let order = p.order.clone().unwrap_or_else(|| (0..p.size).collect());
        let mut steps = Vec::new();
        let mut col_end = Vec::new();
        let entry_of = |a: usize, b: usize| PartialGram::key(order[a], order[b]);
        for j in 0..p.size {
            for i in 0..j {
                let orig = entry_of(i, j);
                let candidates = p.unknowns.get(&orig).cloned();
                let linear = p
                    .linear
                    .iter()
                    .enumerate()
                    .flat_map(|(ci, c)| {
                        c.terms.iter().filter(move |(k, _)| *k == orig).map(move |(_, coef)| (ci, coef.clone()))
                    })
                    .collect();
                steps.push(Step { orig, i, j, candidates, linear });
            }
            col_end.push(steps.len());
        }
        let nlin = p.linear.len();
        let mut lin_sum = vec![Rat::zero(); nlin];
        let mut lin_min = vec![Rat::zero(); nlin];
        let mut lin_max = vec![Rat::zero(); nlin];
        for (ci, c) in p.linear.iter().enumerate() {
            for (k, coef) in &c.terms {
                if let Some(v) = p.fixed.get(k) {
                    lin_sum[ci] += coef * v;
                } else if let Some(cands) = p.unknowns.get(k) {
                    let vals = cands.iter().map(|x| coef * x);
                    lin_min[ci] += vals.clone().min().expect("nonempty");
                    lin_max[ci] += vals.max().expect("nonempty");
                }
            }
        }
        Self { p, budget: opts.node_budget, prefix_min: opts.prefix_min, order, steps, col_end, lin_sum, lin_min, lin_max }
    }

    fn run(mut self, nodes: &mut u64) -> Result<Vec<RatMatrix>, CompletionError> {
        let n = self.p.size;
        let mut st = State {
            g: RatMatrix::zeros(n, n),
            l: RatMatrix::identity(n),
            d: Vec::new(),
            rank: 0,
            residual: Rat::zero(),
        };
        for a in 0..n {
            let o = self.order[a];
            st.g[(a, a)] = self.p.fixed[&(o, o)].clone();
        }
        // the first vector has no off-diagonal entries
        if !self.close_column(&mut st, 0) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        self.descend(&mut st, 0, nodes, &mut out)?;
        Ok(out)
    }

    fn lin_ok(&self, ci: usize) -> bool {
        let lo = &self.lin_sum[ci] + &self.lin_min[ci];
        let hi = &self.lin_sum[ci] + &self.lin_max[ci];
        let rhs = &self.p.linear[ci].rhs;
        &lo <= rhs && rhs <= &hi
    }

    /// Opens column `j` (sets the residual) or closes it (records the pivot
    /// and checks rank). Returns false if the column is infeasible.
    fn close_column(&self, st: &mut State, j: usize) -> bool {
        if j == 0 {
            st.residual = st.g[(0, 0)].clone();
        }
        let piv = st.residual.clone();
        if piv.is_negative() {
            return false;
        }
        if !piv.is_zero() {
            st.rank += 1;
            if st.rank > self.p.rank_bound {
                st.rank -= 1;
                return false;
            }
        }
        st.d.push(piv);
        true
    }

    fn reopen_column(&self, st: &mut State) {
        if let Some(piv) = st.d.pop() {
            if !piv.is_zero() {
                st.rank -= 1;
            }
        }
    }

    fn descend(
        &mut self,
        st: &mut State,
        k: usize,
        nodes: &mut u64,
        out: &mut Vec<RatMatrix>,
    ) -> Result<(), CompletionError> {
        *nodes += 1;
        if *nodes > self.budget {
            return Err(CompletionError::SearchBudgetExceeded { budget: self.budget });
        }
        if k == self.steps.len() {
            let m = self.original_matrix(&st.g);
            if self.p.linear.iter().enumerate().all(|(ci, _)| self.lin_sum[ci] == self.p.linear[ci].rhs)
                && lattice_min_check(&m, &self.p.min_bound, self.p.coeff_bound)?
            {
                out.push(m);
            }
            return Ok(());
        }
        let (i, j) = (self.steps[k].i, self.steps[k].j);
        let values: Vec<Rat> = match &self.steps[k].candidates {
            Some(c) => c.clone(),
            None => vec![self.p.fixed[&self.steps[k].orig].clone()],
        };
        let unknown = self.steps[k].candidates.is_some();
        if i == 0 {
            st.residual = st.g[(j, j)].clone();
        }
        let saved_residual = st.residual.clone();
        for v in values {
            if unknown && !self.assign_linear(k, &v) {
                continue;
            }
            st.g[(i, j)] = v.clone();
            st.g[(j, i)] = v.clone();
            // t = G_ij − Σ_{q<i} L_iq D_q L_jq
            let mut t = v.clone();
            for q in 0..i {
                if !st.d[q].is_zero() && !st.l[(j, q)].is_zero() && !st.l[(i, q)].is_zero() {
                    t -= &st.l[(i, q)] * &st.d[q] * &st.l[(j, q)];
                }
            }
            let feasible = if st.d[i].is_zero() {
                st.l[(j, i)] = Rat::zero();
                t.is_zero()
            } else {
                let lji = &t / &st.d[i];
                st.residual = &saved_residual - &st.d[i] * &lji * &lji;
                st.l[(j, i)] = lji;
                !st.residual.is_negative()
            };
            if feasible {
                if k + 1 == self.col_end[j] {
                    if self.close_column(st, j) {
                        if !self.prefix_min || lattice_min_check(&st.g.leading(j + 1), &self.p.min_bound, self.p.coeff_bound)? {
                            self.descend(st, k + 1, nodes, out)?;
                        }
                        self.reopen_column(st);
                    }
                } else {
                    self.descend(st, k + 1, nodes, out)?;
                }
            }
            st.residual = saved_residual.clone();
            if unknown {
                self.unassign_linear(k, &v);
            }
        }
        st.l[(j, i)] = Rat::zero();
        Ok(())
    }

    fn assign_linear(&mut self, k: usize, v: &Rat) -> bool {
        let cands = self.steps[k].candidates.as_ref().expect("unknown entry");
        let links = self.steps[k].linear.clone();
        for (ci, coef) in &links {
            let vals = cands.iter().map(|x| coef * x);
            self.lin_min[*ci] -= vals.clone().min().expect("nonempty");
            self.lin_max[*ci] -= vals.max().expect("nonempty");
            self.lin_sum[*ci] += coef * v;
        }
        if links.iter().all(|(ci, _)| self.lin_ok(*ci)) {
            true
        } else {
            self.unassign_linear(k, v);
            false
        }
    }

    fn unassign_linear(&mut self, k: usize, v: &Rat) {
        let cands = self.steps[k].candidates.as_ref().expect("unknown entry");
        for (ci, coef) in &self.steps[k].linear {
            let vals = cands.iter().map(|x| coef * x);
            self.lin_min[*ci] += vals.clone().min().expect("nonempty");
            self.lin_max[*ci] += vals.max().expect("nonempty");
            self.lin_sum[*ci] -= coef * v;
        }
    }

    fn original_matrix(&self, g: &RatMatrix) -> RatMatrix {
        permute(g, &self.order)
    }
}

/// Six minimal vectors of norm 3/5 summing to a dual vector they each pair
/// with to 2: every row sums to 2, entries lie in `(1/20)ℤ ∩ [−3/10, 3/10]`.
pub fn six_vector_system() -> PartialGram {
    let cands: Vec<Rat> = (-6..=6).map(|k| rat::frac(k, 20)).collect();
    let mut p = uniform_system(6, rat::frac(3, 5), cands, rat::int(2));
    p.min_bound = rat::frac(3, 5);
    p
}

/// [`six_vector_system`] with the first row fixed to `1/5, (3/10)^4` and the
/// remaining entries drawn from `{1/5, 1/4, 3/10}`.
pub fn six_vector_system_restricted() -> PartialGram {
    let mut p = six_vector_system();
    p.fix(0, 1, rat::frac(1, 5));
    for j in 2..6 {
        p.fix(0, j, rat::frac(3, 10));
    }
    for i in 1..6 {
        for j in i + 1..6 {
            p.unknown(i, j, vec![rat::frac(1, 5), rat::frac(1, 4), rat::frac(3, 10)]);
        }
    }
    // only permutations fixing the first two vectors preserve the fixed row
    p.generators = vec![vec![0, 1, 3, 2, 4, 5], vec![0, 1, 3, 4, 5, 2]];
    p
}

/// Four norm-2 vectors summing to twice a vector they each pair with to 2:
/// rows sum to 4, entries in `{0, ±1/4, ±1/2, ±3/4, −1}`.
pub fn four_vector_block() -> PartialGram {
    let cands: Vec<Rat> = [-4, -3, -2, -1, 0, 1, 2, 3].iter().map(|&k| rat::frac(k, 4)).collect();
    let mut p = uniform_system(4, rat::int(2), cands, rat::int(4));
    p.min_bound = rat::int(2);
    p
}

/// Twenty vectors around a norm-14 dual vector at ratio 7: six minimal
/// vectors `x`, six dual vectors `α`, then `y₃..y₆` and `β₃..β₆` whose mutual
/// inner products are unknown (`a ∈ (1/28)ℤ`, `b, c ∈ ℤ`, bounded by 7, 7, 2).
pub fn ratio_seven_system() -> PartialGram {
    let (x, al, y, be) = (0usize, 6usize, 12usize, 16usize);
    let mut p = PartialGram::new(20, 16, rat::frac(1, 2));
    let q = |a: i64, b: i64| rat::frac(a, b);
    let kron = |i: usize, j: usize| if i == j { rat::int(0) } else { rat::int(1) };
    for i in 0..6 {
        for j in i..6 {
            p.fix(x + i, x + j, if i == j { q(1, 2) } else { q(1, 4) });
            p.fix(al + i, al + j, if i == j { q(14, 1) } else { q(7, 1) });
        }
        for j in 0..6 {
            let v = if i == 0 || j == 0 { q(2, 1) } else { kron(i, j) };
            p.fix(x + i, al + j, v);
        }
    }
    for i in 0..4 {
        for j in i..4 {
            p.fix(y + i, y + j, if i == j { q(1, 2) } else { q(1, 4) });
            p.fix(be + i, be + j, if i == j { q(14, 1) } else { q(7, 1) });
        }
    }
    let a: Vec<Rat> = (-7..=7).map(|k| q(k, 28)).collect();
    let b: Vec<Rat> = (-7..=7).map(rat::int).collect();
    let c: Vec<Rat> = (-2..=2).map(rat::int).collect();
    for j in 0..4 {
        p.fix(x, y + j, q(1, 4));
        p.fix(x + 1, y + j, q(0, 1));
        p.fix(x, be + j, q(1, 1));
        p.fix(x + 1, be + j, q(2, 1));
        p.fix(al, y + j, q(1, 1));
        p.fix(al + 1, y + j, q(2, 1));
        p.fix(al, be + j, q(7, 1));
        p.fix(al + 1, be + j, q(0, 1));
        for i in 0..4 {
            p.unknown(x + 2 + i, y + j, a.clone());
            p.fix(x + 2 + i, be + j, kron(i, j));
            p.fix(al + 2 + i, y + j, kron(i, j));
            p.unknown(al + 2 + i, be + j, b.clone());
            p.unknown(y + i, be + j, c.clone());
        }
    }
    p
}

fn uniform_system(n: usize, diag: Rat, cands: Vec<Rat>, row_sum: Rat) -> PartialGram {
    let mut p = PartialGram::new(n, n, Rat::zero());
    for i in 0..n {
        p.fix(i, i, diag.clone());
        for j in i + 1..n {
            p.unknown(i, j, cands.clone());
        }
        p.linear.push(LinearConstraint::row_sum(n, i, row_sum.clone()));
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    p.generators = vec![swap, cycle];
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn m(rows: &[&[Rat]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn psd_checks() {
        assert!(psd_rank_check(&RatMatrix::identity(4), 4).unwrap());
        assert!(!psd_rank_check(&RatMatrix::identity(4), 3).unwrap());
        let ones = RatMatrix::from_i64(&[[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        assert!(psd_rank_check(&ones, 1).unwrap());
        let q = frac(1, 4);
        let h = frac(1, 2);
        let bordered = m(&[
            &[h.clone(), q.clone(), int(2), int(2)],
            &[q, h, int(2), int(2)],
            &[int(2), int(2), int(14), int(7)],
            &[int(2), int(2), int(7), int(14)],
        ]);
        assert_eq!(bordered.det().unwrap(), frac(-7, 16));
        assert!(!psd_rank_check(&bordered, 16).unwrap());
        assert!(psd_rank_check(&RatMatrix::from_i64(&[[1, 2], [3, 4]]), 2).is_err());
    }

    #[test]
    fn min_checks() {
        let a2 = RatMatrix::from_i64(&[[2, -1], [-1, 2]]);
        assert!(lattice_min_check(&a2, &int(2), 3).unwrap());
        assert!(!lattice_min_check(&a2, &frac(5, 2), 3).unwrap());
        assert!(lattice_min_check(&RatMatrix::identity(3), &int(1), 5).unwrap());
        // rank-deficient: x and −x span a line; x + x' = 0 is not short
        let dep = RatMatrix::from_i64(&[[2, -2], [-2, 2]]);
        assert!(lattice_min_check(&dep, &int(2), 3).unwrap());
        let half = m(&[&[int(2), int(1)], &[int(1), int(2)]]);
        assert!(lattice_min_check(&half, &int(2), 1).unwrap());
        let w = short_combination(&RatMatrix::from_i64(&[[4, 3], [3, 4]]), &int(3), 2).unwrap().unwrap();
        assert_eq!(w.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn window() {
        assert_eq!(int_window(&frac(1, 2), &int(1)), Some((-1, 0)));
        assert_eq!(int_window(&int(0), &int(4)), Some((-2, 2)));
        assert_eq!(int_window(&frac(1, 2), &frac(1, 5)), None);
        assert_eq!(int_window(&int(0), &int(-1)), None);
    }

    #[test]
    fn single_candidate_is_a_check() {
        let mut p = PartialGram::new(2, 2, int(1));
        p.fix(0, 0, int(2));
        p.fix(1, 1, int(2));
        p.unknown(0, 1, vec![int(-1)]);
        let r = complete(&p, &CompletionOptions::default()).unwrap();
        assert_eq!(r.completions, vec![RatMatrix::from_i64(&[[2, -1], [-1, 2]])]);
        p.unknown(0, 1, vec![int(3)]);
        assert!(complete(&p, &CompletionOptions::default()).unwrap().completions.is_empty());
    }

    #[test]
    fn group_closure() {
        assert_eq!(permutation_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).len(), 24);
        assert_eq!(permutation_group(3, &[]).len(), 1);
    }

    #[test]
    fn validation() {
        let mut p = PartialGram::new(2, 2, int(1));
        p.fix(0, 0, int(1));
        assert!(p.validate().is_err());
        p.fix(1, 1, int(1));
        p.fix(0, 1, int(0));
        assert!(p.validate().is_ok());
        p.unknown(0, 1, vec![]);
        assert!(p.validate().is_err());
        p.unknown(0, 1, vec![int(0)]);
        assert!(p.validate().is_ok());
        p.unknown(1, 1, vec![int(1)]);
        assert!(p.validate().is_err());
    }
}
