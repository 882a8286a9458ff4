//! Exact phase-1 simplex over free variables with Farkas certificates.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    /// `a·c ≥ b`.
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
    pub label: String,
}

impl Constraint {
    pub fn holds(&self, c: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(c).map(|(a, x)| a * x).sum();
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Constraints on free variables `c_1..c_h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub vars: usize,
    pub rows: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// A point satisfying every row when feasible.
    pub solution: Option<Vec<Rat>>,
    /// One multiplier per row when infeasible: non-negative on `≥` rows,
    /// combining the left-hand sides to zero and the right-hand sides to a
    /// positive number.
    pub certificate: Option<Vec<Rat>>,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        self.status == LpStatus::Feasible
    }
}

/// Decides feasibility exactly.
///
/// Free variables are split as `c = c⁺ − c⁻`; `≥` rows get a surplus column;
/// rows are sign-normalized to `b ≥ 0`; rows whose surplus can start basic
/// need no artificial. Phase 1 minimizes the sum of artificials with Bland's
/// rule. At a positive optimum the simplex multipliers, read off the reduced
/// costs of the initial basis columns, are a Farkas certificate.
pub fn lp_solve(sys: &LinearSystem) -> LpOutcome {
    let m = sys.rows.len();
    let h = sys.vars;
    // column layout: c⁺ (h), c⁻ (h), surplus per ≥ row, artificials
    let mut surplus_col = vec![None; m];
    let mut ncols = 2 * h;
    for (i, row) in sys.rows.iter().enumerate() {
        if row.relation == Relation::Ge {
            surplus_col[i] = Some(ncols);
            ncols += 1;
        }
    }
    let sign: Vec<Rat> =
        sys.rows.iter().map(|r| if r.rhs.is_negative() { -Rat::one() } else { Rat::one() }).collect();
    let mut initial = vec![0usize; m];
    let mut is_artificial = vec![false; ncols];
    for i in 0..m {
        // surplus enters row i as −sign_i; it is a unit column when sign_i = −1
        match surplus_col[i] {
            Some(j) if sign[i].is_negative() => initial[i] = j,
            _ => {
                initial[i] = ncols;
                ncols += 1;
                is_artificial.push(true);
            }
        }
    }
    is_artificial.resize(ncols, false);

    let mut t: Vec<Vec<Rat>> = vec![vec![Rat::zero(); ncols + 1]; m];
    for (i, row) in sys.rows.iter().enumerate() {
        for (k, a) in row.coeffs.iter().enumerate() {
            t[i][k] = &sign[i] * a;
            t[i][h + k] = -&sign[i] * a;
        }
        if let Some(j) = surplus_col[i] {
            t[i][j] = -sign[i].clone();
        }
        if is_artificial[initial[i]] {
            t[i][initial[i]] = Rat::one();
        }
        t[i][ncols] = &sign[i] * &row.rhs;
    }
    let cost: Vec<Rat> = (0..ncols).map(|j| if is_artificial[j] { Rat::one() } else { Rat::zero() }).collect();
    // reduced costs r_j = c_j − Σ_{artificial basics} row_j; last entry is −objective
    let mut red: Vec<Rat> = cost.iter().cloned().chain(core::iter::once(Rat::zero())).collect();
    for i in 0..m {
        if is_artificial[initial[i]] {
            for j in 0..=ncols {
                if !t[i][j].is_zero() {
                    red[j] -= &t[i][j];
                }
            }
        }
    }
    let mut basis = initial.clone();

    loop {
        let Some(enter) = (0..ncols).find(|&j| red[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][ncols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // the phase-1 objective is bounded below by zero
        let (p, _) = leave.expect("phase 1 is bounded");
        pivot(&mut t, &mut red, p, enter);
        basis[p] = enter;
    }

    let objective = -red[ncols].clone();
    if objective.is_zero() {
        let mut x = vec![Rat::zero(); ncols];
        for i in 0..m {
            x[basis[i]] = t[i][ncols].clone();
        }
        let c = (0..h).map(|k| &x[k] - &x[h + k]).collect();
        return LpOutcome { status: LpStatus::Feasible, solution: Some(c), certificate: None };
    }
    // y_i = c_j − r_j for the initial basis column j of row i, mapped back
    // through the sign normalization.
    let cert = (0..m).map(|i| &sign[i] * (&cost[initial[i]] - &red[initial[i]])).collect();
    LpOutcome { status: LpStatus::Infeasible, solution: None, certificate: Some(cert) }
}

fn pivot(t: &mut [Vec<Rat>], red: &mut [Rat], p: usize, q: usize) {
    let inv = Rat::one() / &t[p][q];
    for x in t[p].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let prow = t[p].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    }
    if !red[q].is_zero() {
        let f = red[q].clone();
        for &j in &nz {
            red[j] -= &f * &prow[j];
        }
    }
}

/// Re-checks an outcome by substitution, independent of the solver.
pub fn verify_certificate(sys: &LinearSystem, outcome: &LpOutcome) -> bool {
    match outcome.status {
        LpStatus::Feasible => match &outcome.solution {
            Some(c) => c.len() == sys.vars && sys.rows.iter().all(|r| r.holds(c)),
            None => false,
        },
        LpStatus::Infeasible => {
            let Some(u) = &outcome.certificate else { return false };
            if u.len() != sys.rows.len() {
                return false;
            }
            let signs_ok = sys.rows.iter().zip(u).all(|(r, y)| r.relation == Relation::Eq || !y.is_negative());
            let combined_zero = (0..sys.vars).all(|k| {
                sys.rows.iter().zip(u).map(|(r, y)| y * &r.coeffs[k]).sum::<Rat>().is_zero()
            });
            let rhs: Rat = sys.rows.iter().zip(u).map(|(r, y)| y * &r.rhs).sum();
            signs_ok && combined_zero && rhs.is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use alloc::string::ToString;

    fn row(c: &[i64], rel: Relation, b: i64) -> Constraint {
        Constraint { coeffs: c.iter().map(|&x| int(x)).collect(), relation: rel, rhs: int(b), label: "".to_string() }
    }

    #[test]
    fn trivial_infeasible() {
        let sys = LinearSystem { vars: 1, rows: vec![row(&[1], Relation::Ge, 0), row(&[-1], Relation::Ge, 1)] };
        let out = lp_solve(&sys);
        assert_eq!(out.status, LpStatus::Infeasible);
        assert_eq!(out.certificate.clone().unwrap(), vec![int(1), int(1)]);
        assert!(verify_certificate(&sys, &out));
        let mut bad = out.clone();
        bad.certificate.as_mut().unwrap()[0] = int(-1);
        assert!(!verify_certificate(&sys, &bad));
    }

    #[test]
    fn trivial_feasible() {
        let sys = LinearSystem { vars: 1, rows: vec![row(&[2], Relation::Eq, 4), row(&[1], Relation::Ge, 0)] };
        let out = lp_solve(&sys);
        assert_eq!(out.solution.clone().unwrap(), vec![int(2)]);
        assert!(verify_certificate(&sys, &out));
    }

    #[test]
    fn free_variables_go_negative() {
        let sys = LinearSystem {
            vars: 2,
            rows: vec![row(&[1, 1], Relation::Eq, -3), row(&[1, -1], Relation::Ge, 5), row(&[0, 3], Relation::Ge, -12)],
        };
        let out = lp_solve(&sys);
        assert!(out.is_feasible());
        assert!(verify_certificate(&sys, &out));
    }

    #[test]
    fn equality_contradiction() {
        let sys = LinearSystem {
            vars: 2,
            rows: vec![
                Constraint { coeffs: vec![frac(1, 2), int(1)], relation: Relation::Eq, rhs: int(1), label: "".into() },
                row(&[1, 2], Relation::Eq, 3),
            ],
        };
        let out = lp_solve(&sys);
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(verify_certificate(&sys, &out));
    }

    #[test]
    fn no_variables() {
        let ok = LinearSystem { vars: 0, rows: vec![row(&[], Relation::Eq, 0), row(&[], Relation::Ge, -1)] };
        assert!(lp_solve(&ok).is_feasible());
        let bad = LinearSystem { vars: 0, rows: vec![row(&[], Relation::Ge, 2)] };
        let out = lp_solve(&bad);
        assert!(!out.is_feasible() && verify_certificate(&bad, &out));
    }
}
