//! Candidate values of `(r, s)` for strongly perfect lattices in dimension 16
//! and the dual-pair refinement `(r, s, t)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::string::ToString;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::bounds::{self, dgs_code_bound};
use crate::lattice;
use crate::rat::{self, Rat};

pub const N: usize = 16;
/// Half the lower bound on the size of a spherical 5-design in `R^16`.
pub const S_MIN: u64 = 136;
/// Half the kissing number bound 7355 in dimension 16.
pub const S_MAX: u64 = 3677;

pub fn minimal_type_r() -> Rat {
    rat::frac(N as i64 + 2, 3)
}

/// Named filters of the `(r, s)` scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RsFilter {
    /// `s·r/16 ∈ Z`.
    DesignTwoIntegrality,
    /// `3s·r²/288 ∈ Z`.
    DesignFourIntegrality,
    /// `6|N_3(α)| + |N_2(α)| = s·r/192·(r/6 − 1)` has a solution in counts.
    LayerEquation,
    /// `|N_2(α)| ≠ 1`.
    N2NotOne,
    /// `|N_2(α)| ≤ min(r/(8−r), 16)` for `r < 8`.
    RootSystemBound,
    /// `|N_2(α)| ≤ 30` for `r = 8`.
    DnBound,
    /// `|N_2(α)|` bounded by the spherical code bound in `R^15` for `r > 8`.
    SphericalCodeBound,
}

impl RsFilter {
    pub const ALL: [RsFilter; 7] = [
        RsFilter::DesignTwoIntegrality,
        RsFilter::DesignFourIntegrality,
        RsFilter::LayerEquation,
        RsFilter::N2NotOne,
        RsFilter::RootSystemBound,
        RsFilter::DnBound,
        RsFilter::SphericalCodeBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RsFilter::DesignTwoIntegrality => "d2-integrality",
            RsFilter::DesignFourIntegrality => "d4-integrality",
            RsFilter::LayerEquation => "layer-equation",
            RsFilter::N2NotOne => "n2-not-one",
            RsFilter::RootSystemBound => "root-system-bound",
            RsFilter::DnBound => "dn-bound",
            RsFilter::SphericalCodeBound => "spherical-code-bound",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for RsFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of enabled [`RsFilter`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FilterSet(u8);

impl FilterSet {
    pub fn all() -> Self {
        FilterSet(RsFilter::ALL.iter().fold(0, |acc, f| acc | f.bit()))
    }

    pub fn none() -> Self {
        FilterSet(0)
    }

    pub fn contains(self, f: RsFilter) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn with(self, f: RsFilter) -> Self {
        FilterSet(self.0 | f.bit())
    }

    pub fn without(self, f: RsFilter) -> Self {
        FilterSet(self.0 & !f.bit())
    }

    pub fn iter(self) -> impl Iterator<Item = RsFilter> {
        RsFilter::ALL.into_iter().filter(move |f| self.contains(*f))
    }
}

impl Default for FilterSet {
    fn default() -> Self {
        Self::all()
    }
}

/// One row of the `(r, s)` table: `s ∈ {s_base·a : a ∈ a_values}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRow {
    pub r: Rat,
    pub s_base: u64,
    pub a_values: Vec<u64>,
    pub source_bounds: FilterSet,
}

impl CandidateRow {
    pub fn s_values(&self) -> impl Iterator<Item = u64> + '_ {
        self.a_values.iter().map(move |a| a * self.s_base)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsTable {
    /// Rows for `r > 6`, ordered by `r`.
    pub rows: Vec<CandidateRow>,
    /// `r = 6`: minimal type, not constrained by the scan.
    pub minimal_type_marker: Rat,
    /// Number of `(r, s)` pairs killed by each filter (first failing filter
    /// counts).
    pub rejected: BTreeMap<RsFilter, u64>,
}

impl RsTable {
    pub fn row(&self, r: &Rat) -> Option<&CandidateRow> {
        self.rows.iter().find(|row| &row.r == r)
    }
}

/// Shows an `a`-set the way the tables do: `-` for the trivial set, `a..b`
/// for runs of four or more, commas otherwise.
pub fn format_a_set(a: &[u64]) -> alloc::string::String {
    use alloc::format;
    if a == [1] {
        return "-".into();
    }
    let consecutive = a.windows(2).all(|w| w[1] == w[0] + 1);
    if consecutive && a.len() >= 4 {
        return format!("{}..{}", a[0], a[a.len() - 1]);
    }
    let parts: Vec<_> = a.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}

impl fmt::Display for RsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>8}  {:>6}  a", "r", "s")?;
        for row in &self.rows {
            let s = if row.a_values == [1] {
                alloc::format!("{}", row.s_base)
            } else {
                alloc::format!("{}a", row.s_base)
            };
            writeln!(f, "{:>8}  {:>6}  {}", row.r.to_string(), s, format_a_set(&row.a_values))?;
        }
        writeln!(f, "{:>8}  minimal type", self.minimal_type_marker.to_string())
    }
}

/// Why `(r, s)` fails, or `Ok` when every enabled filter passes.
pub fn check_rs(r: &Rat, s: u64, filters: FilterSet) -> Result<(), RsFilter> {
    let sr = rat::int(s as i64);
    let en = |f| filters.contains(f);
    if en(RsFilter::DesignTwoIntegrality) && !rat::is_int(&(&sr * r / rat::int(16))) {
        return Err(RsFilter::DesignTwoIntegrality);
    }
    if en(RsFilter::DesignFourIntegrality) && !rat::is_int(&(rat::int(3) * &sr * r * r / rat::int(288))) {
        return Err(RsFilter::DesignFourIntegrality);
    }
    let v = bounds::n2_size(r, s, N);
    if !bounds::is_count(&v) {
        if en(RsFilter::LayerEquation) {
            return Err(RsFilter::LayerEquation);
        }
        // Nothing more can be said about |N_2| without the equation.
        return Ok(());
    }
    // With r < 9 no minimal vector pairs to 3 with a minimal dual vector, so
    // |N_2| = v; otherwise |N_2| = v − 6|N_3|.
    let v = rat::to_i64(&v).expect("layer value fits");
    let ks = if r < &rat::int(9) { 0..=0 } else { 0..=v / 6 };
    let mut first_failure = None;
    for k in ks {
        match check_n2(r, v - 6 * k, filters) {
            Ok(()) => return Ok(()),
            Err(f) => {
                first_failure.get_or_insert(f);
            }
        }
    }
    Err(first_failure.expect("at least one layer split was tried"))
}

fn check_n2(r: &Rat, n2: i64, filters: FilterSet) -> Result<(), RsFilter> {
    let n2r = rat::int(n2);
    let eight = rat::int(8);
    if filters.contains(RsFilter::N2NotOne) && r < &rat::int(9) && n2 == 1 {
        return Err(RsFilter::N2NotOne);
    }
    if r < &eight {
        if filters.contains(RsFilter::RootSystemBound) && Some(n2r) > bounds::n2_upper_bound(r, N) {
            return Err(RsFilter::RootSystemBound);
        }
    } else if r == &eight {
        if filters.contains(RsFilter::DnBound) && Some(n2r) > bounds::n2_upper_bound(r, N) {
            return Err(RsFilter::DnBound);
        }
    } else if filters.contains(RsFilter::SphericalCodeBound) {
        if let Ok(b) = dgs_code_bound(N - 1, &bounds::projected_code_angle(r)) {
            if n2r > b {
                return Err(RsFilter::SphericalCodeBound);
            }
        }
    }
    Ok(())
}

/// Scans `s ∈ [136, 3677]` and `6 < r ≤ γ16²` with `r = p/q`, `q | s`.
///
/// The denominator restriction comes from `s·r/16 ∈ Z` and is structural:
/// it stays in force when [`RsFilter::DesignTwoIntegrality`] is disabled.
pub fn rs_candidates_with(filters: FilterSet) -> RsTable {
    let rmax = lattice::gamma16_sq_upper();
    let rn = rmax.numer().to_i64().expect("small numerator");
    let rd = rmax.denom().to_i64().expect("small denominator");
    let mut groups: BTreeMap<Rat, Vec<u64>> = BTreeMap::new();
    let mut rejected: BTreeMap<RsFilter, u64> = BTreeMap::new();
    for s in S_MIN..=S_MAX {
        for q in (1..=s).filter(|q| s % q == 0) {
            let (s, q) = (s as i64, q as i64);
            let pmax = (rn * q) / rd;
            for p in 6 * q + 1..=pmax {
                let quick = quick_reject(s, p, q, filters);
                if p.gcd(&q) != 1 {
                    continue;
                }
                let verdict = quick.map_or_else(|| check_rs(&rat::frac(p, q), s as u64, filters), Err);
                match verdict {
                    Ok(()) => groups.entry(rat::frac(p, q)).or_default().push(s as u64),
                    Err(f) => *rejected.entry(f).or_default() += 1,
                }
            }
        }
    }
    let rows = groups
        .into_iter()
        .map(|(r, ss)| {
            let base = ss.iter().fold(0u64, |g, &s| g.gcd(&s));
            CandidateRow { r, s_base: base, a_values: ss.iter().map(|s| s / base).collect(), source_bounds: filters }
        })
        .collect();
    RsTable { rows, minimal_type_marker: minimal_type_r(), rejected }
}

/// Integer pre-check of the three integrality filters for `r = p/q`, `q | s`.
fn quick_reject(s: i64, p: i64, q: i64, filters: FilterSet) -> Option<RsFilter> {
    // s ≤ 3677 and p < 10q keep every product below 2^47.
    if filters.contains(RsFilter::DesignTwoIntegrality) && (s * p) % (16 * q) != 0 {
        return Some(RsFilter::DesignTwoIntegrality);
    }
    if filters.contains(RsFilter::DesignFourIntegrality) && (3 * s * p * p) % (288 * q * q) != 0 {
        return Some(RsFilter::DesignFourIntegrality);
    }
    if filters.contains(RsFilter::LayerEquation) && (s * p * (p - 6 * q)) % (1152 * q * q) != 0 {
        return Some(RsFilter::LayerEquation);
    }
    None
}

pub fn rs_candidates() -> RsTable {
    rs_candidates_with(FilterSet::all())
}

/// `s·t·r/(6n)²·(3r/(n+2) − 1)²`, which must be an integer for a dual
/// strongly perfect lattice with `s(Λ) = s`, `s(Λ*) = t`.
pub fn dual_pair_value(r: &Rat, s: u64, t: u64, n: usize) -> Rat {
    let nr = rat::int(n as i64);
    let f = rat::int(3) * r / (&nr + rat::int(2)) - Rat::one();
    rat::int(s as i64) * rat::int(t as i64) * r / rat::pow(&(rat::int(6) * nr), 2) * &f * &f
}

/// Admissible `(a, b)` pairs of a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairCond {
    /// Every pair.
    Any,
    /// Exactly the pairs with `d | a·b`.
    Divides(u64),
    /// No divisibility rule describes the set; the admitted pairs are listed.
    Explicit(Vec<(u64, u64)>),
}

impl fmt::Display for PairCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairCond::Any => f.write_str("-"),
            PairCond::Divides(d) => write!(f, "{d} | ab"),
            PairCond::Explicit(v) => {
                for (i, (a, b)) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "({a},{b})")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPairRow {
    pub r: Rat,
    pub s_base: u64,
    pub a_values: Vec<u64>,
    /// The same set as `a_values`: the conditions are symmetric in `s`, `t`.
    pub b_values: Vec<u64>,
    pub cond: PairCond,
}

impl DualPairRow {
    pub fn admits(&self, a: u64, b: u64) -> bool {
        self.a_values.contains(&a)
            && self.b_values.contains(&b)
            && match &self.cond {
                PairCond::Any => true,
                PairCond::Divides(d) => (a * b).is_multiple_of(*d),
                PairCond::Explicit(v) => v.contains(&(a, b)),
            }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.a_values
            .iter()
            .flat_map(move |&a| self.b_values.iter().map(move |&b| (a, b)))
            .filter(move |&(a, b)| self.admits(a, b))
    }
}

/// A row with no admissible pair, with a pair whose value is not integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedRow {
    pub r: Rat,
    pub s: u64,
    pub t: u64,
    pub value: Rat,
}

impl RemovedRow {
    pub fn recheck(&self) -> bool {
        dual_pair_value(&self.r, self.s, self.t, N) == self.value && !rat::is_int(&self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPairTable {
    pub rows: Vec<DualPairRow>,
    pub removed: Vec<RemovedRow>,
}

impl DualPairTable {
    pub fn row(&self, r: &Rat) -> Option<&DualPairRow> {
        self.rows.iter().find(|row| &row.r == r)
    }
}

impl fmt::Display for DualPairTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>8}  {:>6}  {:<10}  cond", "r", "s", "a")?;
        for row in &self.rows {
            let s = if row.a_values == [1] {
                alloc::format!("{}", row.s_base)
            } else {
                alloc::format!("{}a", row.s_base)
            };
            writeln!(f, "{:>8}  {:>6}  {:<10}  {}", row.r.to_string(), s, format_a_set(&row.a_values), row.cond)?;
        }
        for rm in &self.removed {
            writeln!(f, "{:>8}  removed: s={} t={} gives {}", rm.r.to_string(), rm.s, rm.t, rm.value)?;
        }
        Ok(())
    }
}

/// Keeps the `(s, t)` pairs of each row with an integral dual-pair value.
pub fn dual_pair_filter(rows: &[CandidateRow]) -> DualPairTable {
    let mut out = Vec::new();
    let mut removed = Vec::new();
    for row in rows {
        let ss: Vec<u64> = row.s_values().collect();
        let ok = |s: u64, t: u64| rat::is_int(&dual_pair_value(&row.r, s, t, N));
        let keep: Vec<u64> = ss.iter().copied().filter(|&s| ss.iter().any(|&t| ok(s, t))).collect();
        if keep.is_empty() {
            let (s, t) = (ss[0], ss[0]);
            removed.push(RemovedRow { r: row.r.clone(), s, t, value: dual_pair_value(&row.r, s, t, N) });
            continue;
        }
        let base = keep.iter().fold(0u64, |g, &s| g.gcd(&s));
        let a_values: Vec<u64> = keep.iter().map(|s| s / base).collect();
        let admitted: Vec<(u64, u64)> = a_values
            .iter()
            .flat_map(|&a| a_values.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| ok(a * base, b * base))
            .collect();
        let cond = if admitted.len() == a_values.len() * a_values.len() {
            PairCond::Any
        } else {
            let unit = dual_pair_value(&row.r, base, base, N);
            let d = unit.denom().to_u64().expect("small denominator");
            let rule = |a: u64, b: u64| (a * b).is_multiple_of(d);
            let exact = a_values
                .iter()
                .flat_map(|&a| a_values.iter().map(move |&b| (a, b)))
                .all(|(a, b)| rule(a, b) == admitted.contains(&(a, b)));
            if exact {
                PairCond::Divides(d)
            } else {
                PairCond::Explicit(admitted)
            }
        };
        out.push(DualPairRow { r: row.r.clone(), s_base: base, b_values: a_values.clone(), a_values, cond });
    }
    DualPairTable { rows: out, removed }
}

/// The candidate `r` values `> 6` that survive [`dual_pair_filter`].
pub fn surviving_r(table: &DualPairTable) -> Vec<Rat> {
    table.rows.iter().map(|r| r.r.clone()).collect()
}
