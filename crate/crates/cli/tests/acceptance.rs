//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL` line with the checks behind it, then asserts.
//!
//! Run with `cargo test -p sperf --test acceptance -- --nocapture` to see
//! the lines; expected values are the published ones, never recomputed here.

use std::collections::BTreeMap;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sperf::catalogue;
use sperf::format;
use sperf_core::classify::{self, PairCond};
use sperf_core::completion::{self, CompletionOptions, SearchMode};
use sperf_core::enumerate::{self, EnumOptions, Pruning};
use sperf_core::linalg::{ldlt, Ldlt};
use sperf_core::rat::{self, frac, int, Rat};
use sperf_core::thetalp::{self, LpStatus};
use sperf_core::{Lattice, RatMatrix};

fn report(n: u32, title: &str, checks: &[(String, bool)]) {
    let ok = checks.iter().all(|(_, b)| *b);
    println!("criterion {n}: {} {title}", if ok { "PASS" } else { "FAIL" });
    for (what, b) in checks {
        if !b {
            println!("    failed: {what}");
        }
    }
    assert!(ok, "criterion {n} failed");
}

fn r(s: &str) -> Rat {
    rat::parse(s).unwrap()
}

/// Expands `"2,3"`, `"2..6"` or `"-"` (meaning `{1}`).
fn a_set(s: &str) -> Vec<u64> {
    if s == "-" {
        return vec![1];
    }
    if let Some((lo, hi)) = s.split_once("..") {
        return (lo.parse().unwrap()..=hi.parse().unwrap()).collect();
    }
    s.split(',').map(|x| x.parse().unwrap()).collect()
}

#[test]
fn criterion_01_catalogue_reproduction() {
    let rows: [(&str, Rat, Rat, u64, u64, &str); 4] = [
        ("Lambda16", int(4), int(2), 2160, 2160, "2^8"),
        ("N16", int(6), frac(6, 5), 1200, 1200, "5^8"),
        ("O16", int(3), int(2), 256, 1008, "2^6"),
        ("Gamma16", int(4), frac(3, 2), 432, 768, "2^8 4^2"),
    ];
    let mut checks = Vec::new();
    for (name, m, d, s, t, smith) in rows {
        let rep = catalogue::catalogue_verify(name).unwrap();
        let x = &rep.measured;
        checks.push((
            format!("{name}: measured ({}, {}, {}, {}, {})", x.m, x.d, x.s, x.t, x.smith),
            x.m == m && x.d == d && x.s == s && x.t == t && x.smith == smith,
        ));
        checks.push((format!("{name}: strongly perfect, lattice and dual"), rep.strongly_perfect && rep.dual_strongly_perfect));
        checks.push((format!("{name}: catalogue report passes"), rep.passed()));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_sperf")).args(["catalogue", "verify"]).output().unwrap();
    checks.push(("`sperf catalogue verify` exits 0".into(), out.status.code() == Some(0)));
    report(1, "catalogue verify reproduces the four classified pairs", &checks);
}

/// The printed `(r, s)` table: `(r, s base, a-set)`.
const PRINTED_RS: &[(&str, u64, &str)] = &[
    ("192/31", 961, "2,3"),
    ("144/23", 2116, "-"),
    ("32/5", 450, "2,3,4"),
    ("72/11", 968, "-"),
    ("192/29", 841, "-"),
    ("20/3", 1296, "-"),
    ("48/7", 196, "2..6"),
    ("7", 1152, "-"),
    ("64/9", 729, "-"),
    ("36/5", 400, "1,2,3"),
    ("22/3", 1296, "-"),
    ("96/13", 338, "1..4"),
    ("15/2", 512, "1,2,3"),
    ("144/19", 1444, "-"),
    ("192/25", 625, "1,2"),
    ("54/7", 784, "-"),
    ("8", 72, "2..30"),
    ("384/47", 2209, "-"),
    ("90/11", 968, "1,2"),
    ("33/4", 2048, "-"),
    ("192/23", 529, "1..4"),
    ("42/5", 400, "1..5"),
    ("144/17", 1156, "1,2"),
    ("128/15", 2025, "-"),
    ("60/7", 784, "1,2"),
    ("26/3", 648, "1,2,3"),
    ("96/11", 242, "1..9"),
    ("150/17", 2312, "-"),
    ("384/43", 1849, "-"),
    ("9", 128, "2..26"),
    ("64/7", 441, "1..8"),
];

#[test]
fn criterion_02_rs_table() {
    let table = classify::rs_candidates();
    let mut checks = vec![
        (format!("{} rows, printed {}", table.rows.len(), PRINTED_RS.len()), table.rows.len() == PRINTED_RS.len()),
        ("minimal-type marker r = 6".into(), table.minimal_type_marker == int(6)),
    ];
    for (i, (rs, base, a)) in PRINTED_RS.iter().enumerate() {
        let want = (r(rs), *base, a_set(a));
        let got = table.rows.get(i).map(|row| (row.r.clone(), row.s_base, row.a_values.clone()));
        let shown = got
            .as_ref()
            .map_or("missing".into(), |(r, b, a)| format!("r={r} s={b}a a={}", classify::format_a_set(a)));
        checks.push((format!("row r={rs}: printed s={base}a a={a}, computed {shown}"), got == Some(want)));
    }
    report(2, "classify rs equals the printed (r, s) table", &checks);
}

/// The printed dual-pair table: `(r, s base, a-set, cond)`.
const PRINTED_PAIRS: &[(&str, u64, &str, &str)] = &[
    ("32/5", 900, "1,2", "2 | ab"),
    ("20/3", 1296, "-", "-"),
    ("48/7", 196, "2,3,4,6", "12 | ab"),
    ("7", 1152, "-", "-"),
    ("36/5", 400, "1,2,3", "-"),
    ("22/3", 1296, "-", "-"),
    ("96/13", 676, "1,2", "2 | ab"),
    ("15/2", 512, "1,2,3", "3 | ab"),
    ("54/7", 784, "-", "-"),
    ("8", 72, "2..30", "2 | ab"),
    ("90/11", 968, "1,2", "-"),
    ("33/4", 2048, "-", "-"),
    ("192/23", 2116, "-", "-"),
    ("42/5", 400, "1..5", "3 | ab"),
    ("144/17", 2312, "-", "-"),
    ("60/7", 784, "1,2", "-"),
    ("26/3", 648, "1,2,3", "-"),
    ("96/11", 242, "3,4,6,8,9", "24 | ab"),
    ("9", 128, "2..26", "-"),
    ("64/7", 882, "1..4", "4 | ab"),
];

#[test]
fn criterion_03_dual_pair_table() {
    let table = classify::dual_pair_filter(&classify::rs_candidates().rows);
    let mut checks = vec![(
        format!("{} columns, printed {}", table.rows.len(), PRINTED_PAIRS.len()),
        table.rows.len() == PRINTED_PAIRS.len(),
    )];
    for (i, (rs, base, a, cond)) in PRINTED_PAIRS.iter().enumerate() {
        let want = (r(rs), *base, a_set(a), cond.to_string());
        let got = table.rows.get(i).map(|row| (row.r.clone(), row.s_base, row.a_values.clone(), row.cond.to_string()));
        let shown = got.as_ref().map_or("missing".into(), |(r, b, a, c)| {
            format!("r={r} s={b}a a={} cond {c}", classify::format_a_set(a))
        });
        checks.push((format!("column r={rs}: printed s={base}a a={a} cond {cond}, computed {shown}"), got == Some(want)));
    }
    let r487 = table.row(&frac(48, 7));
    checks.push(("r=48/7 has cond 12 | ab".into(), r487.map(|x| &x.cond) == Some(&PairCond::Divides(12))));
    checks.push(("removed rows re-check as non-integral".into(), table.removed.iter().all(|x| x.recheck())));
    report(3, "classify dual-pairs reproduces the dual-pair table", &checks);
}

#[test]
fn criterion_04_polynomial_method() {
    let rep = classify::polynomial_method(&frac(20, 3), 1296, 1296, 16);
    // −631800·(b + 7/325)·(b + 1/25), expanded by hand
    let c2 = int(-631800);
    let c1 = int(-631800) * (frac(7, 325) + frac(1, 25));
    let c0 = int(-631800) * frac(7, 325) * frac(1, 25);
    let b = frac(-8, 325);
    let pb = &c2 * &b * &b + &c1 * &b + &c0;
    let other = classify::polynomial_method(&frac(36, 5), 1200, 1200, 16);
    let checks = vec![
        (format!("P = {}", rep.poly), rep.poly.c2 == c2 && rep.poly.c1 == c1 && rep.poly.c0 == c0),
        (format!("P(-8/325) = {} > 0", rep.poly.eval(&b)), rep.poly.eval(&b) == pb && pb > int(0)),
        ("(20/3, 1296, 1296) excluded".into(), rep.is_excluded()),
        ("report re-verifies".into(), rep.verify()),
        ("(36/5, 1200, 1200) not excluded".into(), !other.is_excluded()),
    ];
    report(4, "polynomial method on (20/3, 1296, 1296) and (36/5, 1200, 1200)", &checks);
}

#[test]
fn criterion_05_n2_arithmetic() {
    let mut checks = vec![(
        "n2_size(144/17, 2312) = 42".into(),
        classify::n2_size(&frac(144, 17), 2312, 16) == int(42),
    )];
    for a in 2..=30u64 {
        checks.push((format!("n2_size(8, 72·{a}) = {a}"), classify::n2_size(&int(8), 72 * a, 16) == int(a as i64)));
    }
    checks.push(("n2_upper_bound(8) = 30".into(), classify::n2_upper_bound(&int(8), 16) == Some(int(30))));
    let dgs = classify::dgs_code_bound(15, &frac(1, 10)).unwrap();
    checks.push((format!("dgs_code_bound(15, 1/10) = {dgs} in [57, 58)"), dgs >= int(57) && dgs < int(58)));
    report(5, "|N_2| arithmetic and the spherical code bound", &checks);
}

#[test]
fn criterion_06_minimal_type_pairs() {
    // the sixteen families: t = base·i over a range, or explicit t lists
    let families: &[(u64, u64, std::ops::RangeInclusive<u64>)] = &[
        (144, 128, 2..=26),
        (144, 288, 1..=11),
        (144, 800, 1..=3),
        (144, 1568, 1..=2),
        (256, 144, 2..=16),
        (288, 128, 3..=16),
        (288, 144, 2..=14),
        (288, 400, 1..=5),
        (288, 784, 1..=2),
        (288, 1936, 1..=1),
        (384, 144, 3..=10),
        (400, 288, 2..=4),
    ];
    let lists: &[(u64, &[u64])] = &[
        (432, &[512, 576, 640, 768, 800, 864, 896, 1024, 1152]),
        (512, &[576, 720, 864]),
        (576, &[576, 640, 720, 768, 784, 800]),
        (640, &[720]),
    ];
    let mut want: Vec<(u64, u64)> = families
        .iter()
        .flat_map(|(s, base, is)| is.clone().map(move |i| (*s, base * i)))
        .chain(lists.iter().flat_map(|(s, ts)| ts.iter().map(move |t| (*s, *t))))
        .collect();
    want.sort_unstable();
    want.dedup();
    let got = classify::minimal_type_pairs();
    let checks = vec![
        (format!("{} pairs", got.len()), got.len() == 118),
        ("pairs equal the sixteen families".into(), got == want),
        ("s = 648 absent".into(), got.iter().all(|&(s, t)| s != 648 && t != 648)),
    ];
    report(6, "minimal-type (s, t) enumeration", &checks);
}

#[test]
fn criterion_07_theta_oracle() {
    let l = catalogue::e8_perp_sqrt7e8();
    let want: Vec<u64> = vec![1, 240, 2160, 6720, 17520, 30240, 60480, 82800];
    let mut checks = Vec::new();
    for pruning in [Pruning::Float, Pruning::Exact] {
        let got = enumerate::theta_coeffs(&l, 7, &EnumOptions { pruning, ..Default::default() }).unwrap();
        checks.push((format!("{pruning:?} pruning: {got:?}"), got == want));
    }
    report(7, "theta series of E8 ⊥ √7E8 to q^7", &checks);
}

#[test]
fn criterion_08_theta_lp() {
    let sys = format::parse_theta_system(include_str!("../fixtures/theta_level7_882.json")).unwrap();
    let lin = thetalp::build_constraints(&sys).unwrap();
    let out = thetalp::lp_solve(&lin);
    let mut checks = vec![
        (format!("cusp space dimension {}", sys.dim()), sys.dim() == 3),
        (
            "row q^4 reads a_E(4) + Σ c_i a_B_i(4) = 2·882·2".into(),
            lin.rows.iter().any(|c| c.label == "q^4" && &c.rhs + &sys.eis[4] == int(2 * 882 * 2)),
        ),
        ("level 7 system infeasible".into(), out.status == LpStatus::Infeasible),
        ("Farkas certificate verifies".into(), out.certificate.is_some() && thetalp::verify_certificate(&lin, &out)),
    ];
    let mut tampered = out.clone();
    if let Some(c) = tampered.certificate.as_mut() {
        // a multiplier on a row that actually enters the combination
        let k = (0..c.len()).find(|&k| c[k] != int(0) && lin.rows[k].coeffs.iter().any(|x| *x != int(0))).unwrap();
        c[k] = -c[k].clone();
    }
    checks.push(("tampered certificate rejected".into(), !thetalp::verify_certificate(&lin, &tampered)));
    for n in [4, 8, 25, 50, 100] {
        let cut = thetalp::build_constraints(&sys.truncated(n)).unwrap();
        let o = thetalp::lp_solve(&cut);
        checks.push((format!("precision {n} infeasible"), o.status == LpStatus::Infeasible && thetalp::verify_certificate(&cut, &o)));
    }
    let real = format::parse_theta_system(include_str!("../fixtures/theta_level7_q8.json")).unwrap();
    let lin = thetalp::build_constraints(&real).unwrap();
    let out = thetalp::lp_solve(&lin);
    checks.push(("consistency system of a real lattice feasible".into(), out.status == LpStatus::Feasible));
    checks.push(("feasible point verifies".into(), thetalp::verify_certificate(&lin, &out)));
    report(8, "level-7 theta LP infeasible with certificate; real lattice feasible", &checks);
}

fn bordered() -> RatMatrix {
    RatMatrix::from_rows(vec![
        vec![frac(1, 2), frac(1, 4), int(2), int(2)],
        vec![frac(1, 4), frac(1, 2), int(2), int(2)],
        vec![int(2), int(2), int(14), int(7)],
        vec![int(2), int(2), int(7), int(14)],
    ])
    .unwrap()
}

#[test]
fn criterion_09_gram_completion() {
    let six = format::parse_partial_gram(include_str!("../fixtures/gram_six_vectors.json")).unwrap();
    let rep = completion::complete(&six, &CompletionOptions::default()).unwrap();
    let mut checks = vec![(
        format!("six-vector system: {} classes under a group of order {}", rep.completions.len(), rep.group_order),
        rep.completions.len() == 4,
    )];
    let m = bordered();
    checks.push(("bordered matrix has det -7/16".into(), m.det().unwrap() == frac(-7, 16)));
    checks.push(("bordered matrix is indefinite".into(), matches!(ldlt(&m).unwrap(), Ldlt::Indefinite { .. })));
    checks.push(("bordered matrix fails psd_rank_check".into(), !completion::psd_rank_check(&m, 16).unwrap()));

    let small = [
        ("restricted six-vector", include_str!("../fixtures/gram_six_vectors_restricted.json")),
        ("four-vector block", include_str!("../fixtures/gram_four_vector_block.json")),
    ];
    for (name, json) in small {
        let p = format::parse_partial_gram(json).unwrap();
        let n = p.assignments();
        let run = |mode| {
            completion::complete(&p, &CompletionOptions { mode, dedup: false, ..Default::default() }).unwrap()
        };
        let (pruned, plain) = (run(SearchMode::Pruned), run(SearchMode::Exhaustive));
        checks.push((format!("{name}: {n} assignments ≤ 10^6"), n <= 1_000_000));
        checks.push((
            format!("{name}: pruned {} = exhaustive {}", pruned.completions.len(), plain.completions.len()),
            pruned.completions == plain.completions,
        ));
    }
    report(9, "Gram completion counts, PSD rejection and pruning soundness", &checks);
}

fn random_gram(rng: &mut StdRng, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-4..=4);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    for i in 0..n {
        let off: i64 = (0..n).filter(|&j| j != i).map(|j| g[i][j].abs()).sum();
        g[i][i] = off + rng.gen_range(1..=6);
    }
    g
}

/// Shells of all vectors in `[−r, r]^n` with norm at most `bound`.
fn cube(g: &[Vec<i64>], bound: i64, r: i64) -> BTreeMap<Rat, u64> {
    let n = g.len();
    let mut out = BTreeMap::new();
    let mut x = vec![-r; n];
    'outer: loop {
        let q: i64 = (0..n).map(|i| x[i] * (0..n).map(|j| g[i][j] * x[j]).sum::<i64>()).sum();
        if q != 0 && q <= bound {
            *out.entry(int(q)).or_insert(0) += 1;
        }
        for k in 0..n {
            x[k] += 1;
            if x[k] <= r {
                continue 'outer;
            }
            x[k] = -r;
        }
        return out;
    }
}

#[test]
fn criterion_10_enumeration_oracle() {
    let mut rng = StdRng::seed_from_u64(10);
    let mut checks = Vec::new();
    for case in 0..50 {
        let n = 1 + case % 5;
        let g = random_gram(&mut rng, n);
        let l = Lattice::new(RatMatrix::from_i64(&g)).unwrap();
        // diagonal dominance by ≥ 1 gives x·Gx ≥ |x|², so norms ≤ 100 stay in [−10, 10]^n
        let bound = (2 * (0..n).map(|i| g[i][i]).min().unwrap()).min(100);
        let want = cube(&g, bound, 10);
        let t = enumerate::short_vectors(&l, &int(bound), &EnumOptions::default()).unwrap();
        let got: BTreeMap<Rat, u64> = t.shells.iter().map(|s| (s.norm.clone(), s.count)).collect();
        checks.push((format!("case {case} (dim {n}, bound {bound})"), got == want));
    }
    report(10, "Fincke–Pohst equals brute force on 50 random lattices", &checks);
}
