use num_traits::Signed;
use proptest::prelude::*;

use sperf_core::completion::{canonical_form, lattice_min_check, permutation_group, permute, short_combination};
use sperf_core::linalg::{ldlt, psd_rank, smith_invariants, Ldlt};
use sperf_core::rat::{frac, int};
use sperf_core::thetalp::{lp_solve, verify_certificate, Constraint, LinearSystem, Relation};
use sperf_core::{Rat, RatMatrix};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(small_rat(), n * n).prop_map(move |v| RatMatrix::new(n, n, v).unwrap())
}

/// `BᵀB` for a random `k × n` integer `B`: PSD with rank at most `k`.
fn gram_of(k: usize, n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, k * n).prop_map(move |v| {
        let b = RatMatrix::new(k, n, v.into_iter().map(int).collect()).unwrap();
        b.transpose().mul(&b).unwrap()
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = RatMatrix> {
    square(n).prop_map(|a| {
        let t = a.transpose();
        let mut s = RatMatrix::zeros(a.rows(), a.rows());
        for i in 0..a.rows() {
            for j in 0..a.rows() {
                s[(i, j)] = &a[(i, j)] + &t[(i, j)];
            }
        }
        s
    })
}

fn reconstruct(perm: &[usize], l: &RatMatrix, d: &[Rat]) -> RatMatrix {
    let n = perm.len();
    let mut pm = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v: Rat = (0..n).map(|k| &l[(i, k)] * &d[k] * &l[(j, k)]).sum();
            pm[(perm[i], perm[j])] = v;
        }
    }
    pm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(m in square(4)) {
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(4));
            prop_assert_eq!(inv.mul(&m).unwrap(), RatMatrix::identity(4));
        } else {
            prop_assert_eq!(m.det().unwrap(), int(0));
        }
    }

    #[test]
    fn det_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn ldlt_reconstructs(m in symmetric(4)) {
        match ldlt(&m).unwrap() {
            Ldlt::PositiveDefinite { perm, l, d } | Ldlt::PositiveSemidefinite { perm, l, d, .. } => {
                prop_assert!(d.iter().all(|x| *x >= int(0)));
                prop_assert_eq!(reconstruct(&perm, &l, &d), m);
            }
            Ldlt::Indefinite { witness, .. } => {
                prop_assert!(m.bilinear(&witness, &witness) < int(0));
            }
        }
    }

    #[test]
    fn gram_rank_is_bounded(m in gram_of(3, 5)) {
        let r = psd_rank(&m).unwrap().expect("Gram matrices are PSD");
        prop_assert!(r <= 3);
    }

    #[test]
    fn smith_product_is_determinant(m in gram_of(4, 4)) {
        let det = m.det().unwrap();
        prop_assume!(det != int(0));
        let inv = smith_invariants(&m).unwrap();
        let prod: Rat = inv.iter().map(sperf_core::rat::big).product();
        prop_assert_eq!(prod, det.abs());
        prop_assert!(inv.windows(2).all(|w| (&w[1] % &w[0]) == 0.into()));
    }

    #[test]
    fn lp_outcomes_are_certified(
        vars in 1usize..4,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), any::<bool>(), -4i64..=4), 1..6),
    ) {
        let sys = LinearSystem {
            vars,
            rows: rows
                .into_iter()
                .enumerate()
                .map(|(i, (c, eq, b))| Constraint {
                    coeffs: c[..vars].iter().copied().map(int).collect(),
                    relation: if eq { Relation::Eq } else { Relation::Ge },
                    rhs: int(b),
                    label: i.to_string(),
                })
                .collect(),
        };
        let out = lp_solve(&sys);
        prop_assert!(verify_certificate(&sys, &out));
        if let Some(c) = &out.solution {
            prop_assert!(sys.rows.iter().all(|r| r.holds(c)));
        }
    }

    #[test]
    fn short_combinations_are_short(m in gram_of(3, 3), mu in 1i64..12) {
        let mu = int(mu);
        match short_combination(&m, &mu, 2).unwrap() {
            Some(v) => {
                let v: Vec<Rat> = v.into_iter().map(int).collect();
                let q = m.bilinear(&v, &v);
                prop_assert!(q > int(0) && q < mu);
            }
            None => {
                // brute force over the same box
                for a in -2i64..=2 { for b in -2i64..=2 { for c in -2i64..=2 {
                    let v = [int(a), int(b), int(c)];
                    let q = m.bilinear(&v, &v);
                    prop_assert!(q == int(0) || q >= mu);
                }}}
            }
        }
        prop_assert_eq!(lattice_min_check(&m, &mu, 2).unwrap(), short_combination(&m, &mu, 2).unwrap().is_none());
    }

    #[test]
    fn canonical_form_is_orbit_invariant(m in symmetric(4), p in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (0..4).collect();
        for i in (1..4).rev() { v.swap(i, (rng.next_u32() as usize) % (i + 1)); }
        v
    })) {
        let group = permutation_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        prop_assert_eq!(canonical_form(&m, &group), canonical_form(&permute(&m, &p), &group));
    }
}

mod lattices {
    use super::*;
    use sperf_core::design::Designs;
    use sperf_core::enumerate::{for_each_vector, minimal_vectors, short_vectors, EnumOptions, Pruning};
    use sperf_core::Lattice;

    fn lattice3() -> impl Strategy<Value = Lattice> {
        gram_of(3, 3).prop_filter_map("singular", |g| Lattice::new(g).ok())
    }

    fn inorm(l: &Lattice, x: &[i64]) -> Rat {
        l.norm(&x.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    /// Brute force over the box `|x_i|² ≤ bound·(G⁻¹)_ii`, which contains
    /// every vector of norm at most `bound`.
    fn brute_count(l: &Lattice, bound: &Rat) -> u64 {
        let h = l.gram().inverse().unwrap();
        let r: Vec<i64> = (0..3)
            .map(|i| (0i64..).find(|k| int(k * k) > bound * &h[(i, i)]).unwrap())
            .collect();
        let mut n = 0;
        for a in -r[0]..=r[0] {
            for b in -r[1]..=r[1] {
                for c in -r[2]..=r[2] {
                    let x = [a, b, c];
                    let v = inorm(l, &x);
                    if x != [0, 0, 0] && &v <= bound {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn enumeration_matches_box_search(l in lattice3(), extra in 0i64..6) {
            let bound = &l.gram()[(0, 0)] + int(extra);
            let table = short_vectors(&l, &bound, &EnumOptions::default()).unwrap();
            prop_assert_eq!(table.total(), brute_count(&l, &bound));
            let mut seen = 0u64;
            for_each_vector(&l, &bound, &EnumOptions::default(), |x, norm| {
                assert_eq!(&inorm(&l, x), norm);
                assert!(norm <= &bound);
                seen += 2;
            }).unwrap();
            prop_assert_eq!(seen, table.total());
        }

        #[test]
        fn float_and_exact_pruning_agree(l in lattice3(), extra in 0i64..6) {
            let bound = &l.gram()[(0, 0)] + int(extra);
            let exact = EnumOptions { pruning: Pruning::Exact, ..EnumOptions::default() };
            prop_assert_eq!(
                short_vectors(&l, &bound, &EnumOptions::default()).unwrap(),
                short_vectors(&l, &bound, &exact).unwrap()
            );
        }

        #[test]
        fn design_properties_survive_rescaling(l in lattice3(), p in 1i64..5, q in 1i64..5) {
            let opts = EnumOptions::with_vectors();
            let c = frac(p, q);
            let scaled = l.rescale(&c).unwrap();
            let (a, b) = (Designs::new(&l, &opts).unwrap(), Designs::new(&scaled, &opts).unwrap());
            prop_assert_eq!(b.min(), &(a.min() * &c));
            prop_assert_eq!(a.is_strongly_perfect(), b.is_strongly_perfect());
            // pairings of lattice and dual coordinates do not see the scale
            let alpha = vec![int(1), int(0), int(-1)];
            prop_assert_eq!(a.moment_sum(&alpha, 4), b.moment_sum(&alpha, 4));
            prop_assert_eq!(a.check(&alpha, &alpha).is_4_design(), b.check(&alpha, &alpha).is_4_design());
        }

        #[test]
        fn minimal_vectors_realise_the_minimum(l in lattice3()) {
            let mv = minimal_vectors(&l, &EnumOptions::with_vectors()).unwrap();
            let table = short_vectors(&l, &mv.min, &EnumOptions::default()).unwrap();
            prop_assert_eq!(table.shells.len(), 1);
            prop_assert_eq!(table.total(), 2 * mv.s());
            for x in &mv.vectors {
                prop_assert_eq!(&inorm(&l, x), &mv.min);
            }
        }
    }
}
