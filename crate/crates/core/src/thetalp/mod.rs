//! Linear feasibility systems on cusp-form coefficients.
//!
//! A genus of even lattices of level `ℓ` fixes the theta series of any
//! member up to a cusp form: `θ = E + Σ c_i B_i`. Prescribing the first
//! non-zero coefficient (`2s` at `q^{m′}`) and non-negativity of the rest, on
//! both `θ` and its Atkin–Lehner image, gives a linear system in the `c_i`.
//! The image data is stored divided by the Atkin–Lehner constant so that
//! everything stays rational; its constant term and leading coefficient then
//! become `1` and `2s′`.

mod simplex;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::{self, Rat};

pub use simplex::{lp_solve, verify_certificate, Constraint, LinearSystem, LpOutcome, LpStatus, Relation};

pub const DEFAULT_PRECISION: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThetaLpError {
    #[error("{field}: {detail}")]
    ShapeMismatch { field: String, detail: String },
    #[error("precision {precision} is below the prescribed exponent {exponent}")]
    PrecisionTooSmall { precision: usize, exponent: usize },
}

fn shape(field: impl Into<String>, detail: impl Into<String>) -> ThetaLpError {
    ThetaLpError::ShapeMismatch { field: field.into(), detail: detail.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaLPSystem {
    pub level: u64,
    pub weight: u64,
    /// Highest exponent `N`; coefficient lists have length `N + 1`.
    pub precision: usize,
    /// First non-zero exponent of `θ`.
    pub m_prime: usize,
    /// First non-zero exponent of the Atkin–Lehner image.
    pub m: usize,
    pub s: u64,
    pub s_prime: u64,
    pub eis: Vec<Rat>,
    pub cusp_basis: Vec<Vec<Rat>>,
    pub eis_w: Vec<Rat>,
    pub cusp_basis_w: Vec<Vec<Rat>>,
    pub provenance: String,
}

impl ThetaLPSystem {
    /// Checks the shape invariants; does not check `m′, m ≤ N`, which is
    /// reported by [`build_constraints`].
    pub fn validate(&self) -> Result<(), ThetaLpError> {
        if self.level == 0 || self.weight == 0 {
            return Err(shape("level/weight", "must be positive"));
        }
        if self.m_prime == 0 || self.m == 0 || self.s == 0 || self.s_prime == 0 {
            return Err(shape("m_prime/m/s/s_prime", "must be positive"));
        }
        let len = self.precision + 1;
        let check_len = |field: &str, v: &[Rat]| {
            if v.len() == len {
                Ok(())
            } else {
                Err(shape(field, format!("expected {len} coefficients, found {}", v.len())))
            }
        };
        check_len("eis", &self.eis)?;
        check_len("eis_w", &self.eis_w)?;
        if !self.eis[0].is_one() {
            return Err(shape("eis", format!("constant term must be 1, found {}", self.eis[0])));
        }
        if !self.eis_w[0].is_one() {
            return Err(shape("eis_w", format!("constant term must be 1, found {}", self.eis_w[0])));
        }
        if self.cusp_basis.len() != self.cusp_basis_w.len() {
            return Err(shape(
                "cusp_basis_w",
                format!("{} rows for {} basis forms", self.cusp_basis_w.len(), self.cusp_basis.len()),
            ));
        }
        for (name, rows) in [("cusp_basis", &self.cusp_basis), ("cusp_basis_w", &self.cusp_basis_w)] {
            for (i, b) in rows.iter().enumerate() {
                check_len(&format!("{name}[{i}]"), b)?;
                if !b[0].is_zero() {
                    return Err(shape(format!("{name}[{i}]"), format!("cusp form has constant term {}", b[0])));
                }
            }
        }
        Ok(())
    }

    /// Number of cusp forms, i.e. unknowns.
    pub fn dim(&self) -> usize {
        self.cusp_basis.len()
    }

    /// The same system cut at exponent `n ≤ precision`.
    pub fn truncated(&self, n: usize) -> ThetaLPSystem {
        let cut = |v: &Vec<Rat>| v[..=n.min(self.precision)].to_vec();
        ThetaLPSystem {
            precision: n.min(self.precision),
            eis: cut(&self.eis),
            eis_w: cut(&self.eis_w),
            cusp_basis: self.cusp_basis.iter().map(cut).collect(),
            cusp_basis_w: self.cusp_basis_w.iter().map(cut).collect(),
            provenance: self.provenance.clone(),
            ..*self
        }
    }
}

/// Equalities up to the prescribed exponents, inequalities above, on both
/// `θ` and its Atkin–Lehner image.
pub fn build_constraints(sys: &ThetaLPSystem) -> Result<LinearSystem, ThetaLpError> {
    sys.validate()?;
    for exponent in [sys.m_prime, sys.m] {
        if exponent > sys.precision {
            return Err(ThetaLpError::PrecisionTooSmall { precision: sys.precision, exponent });
        }
    }
    let mut rows = Vec::new();
    let sides = [
        ("", &sys.eis, &sys.cusp_basis, sys.m_prime, sys.s),
        ("W ", &sys.eis_w, &sys.cusp_basis_w, sys.m, sys.s_prime),
    ];
    for (tag, eis, basis, first, s) in sides {
        for j in 0..=sys.precision {
            let target = if j == 0 {
                Some(Rat::one())
            } else if j < first {
                Some(Rat::zero())
            } else if j == first {
                Some(rat::int(2 * s as i64))
            } else {
                None
            };
            let (relation, rhs) = match target {
                Some(v) => (Relation::Eq, v - &eis[j]),
                None => (Relation::Ge, -eis[j].clone()),
            };
            rows.push(Constraint {
                coeffs: basis.iter().map(|b| b[j].clone()).collect(),
                relation,
                rhs,
                label: format!("{tag}q^{j}"),
            });
        }
    }
    Ok(LinearSystem { vars: sys.dim(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use alloc::vec;

    fn empty(s: u64, sp: u64) -> ThetaLPSystem {
        ThetaLPSystem {
            level: 1,
            weight: 4,
            precision: 1,
            m_prime: 1,
            m: 1,
            s,
            s_prime: sp,
            eis: vec![int(1), int(240)],
            cusp_basis: vec![],
            eis_w: vec![int(1), int(240)],
            cusp_basis_w: vec![],
            provenance: "E8".into(),
        }
    }

    #[test]
    fn vacuous_system() {
        let lin = build_constraints(&empty(120, 120)).unwrap();
        assert_eq!(lin.vars, 0);
        assert_eq!(lin.rows.len(), 4);
        let out = lp_solve(&lin);
        assert!(out.is_feasible() && verify_certificate(&lin, &out));
        let lin = build_constraints(&empty(121, 120)).unwrap();
        let out = lp_solve(&lin);
        assert!(!out.is_feasible() && verify_certificate(&lin, &out));
    }

    #[test]
    fn shape_errors() {
        let mut s = empty(120, 120);
        s.cusp_basis = vec![vec![int(1), int(0)]];
        s.cusp_basis_w = vec![vec![int(0), int(0)]];
        assert!(matches!(s.validate(), Err(ThetaLpError::ShapeMismatch { .. })));
        let mut s = empty(120, 120);
        s.m = 2;
        assert_eq!(
            build_constraints(&s),
            Err(ThetaLpError::PrecisionTooSmall { precision: 1, exponent: 2 })
        );
        let mut s = empty(120, 120);
        s.eis.push(int(0));
        assert!(s.validate().is_err());
    }
}
