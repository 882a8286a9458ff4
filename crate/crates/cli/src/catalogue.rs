//! Shipped lattices with their expected invariants, and the pipeline that
//! recomputes those invariants from the Gram matrix alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use sperf_core::design::Designs;
use sperf_core::enumerate::{EnumError, EnumOptions};
use sperf_core::lattice::LatticeError;
use sperf_core::rat::{self, frac, int};
use sperf_core::{standard, Lattice, Rat};

use crate::format::{self, FormatError};

const LAMBDA16: &str = include_str!("../fixtures/lambda16.json");
const N16: &str = include_str!("../fixtures/n16.json");
const O16: &str = include_str!("../fixtures/o16.json");
const GAMMA16: &str = include_str!("../fixtures/gamma16.json");

/// Fixture JSON by catalogue name, for the entries that ship as files.
pub const FIXTURE_FILES: [(&str, &str); 4] =
    [("Lambda16", LAMBDA16), ("N16", N16), ("O16", O16), ("Gamma16", GAMMA16)];

#[derive(Debug, thiserror::Error)]
pub enum CatalogueError {
    #[error("unknown catalogue entry {0:?}")]
    UnknownName(String),
    #[error("fixture: {0}")]
    Fixture(#[from] FormatError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(serialize_with = "ser_rat")]
    pub m: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub d: Rat,
    pub s: u64,
    pub t: u64,
    #[serde(serialize_with = "ser_rat")]
    pub r: Rat,
    pub smith: String,
    pub strongly_perfect_both: bool,
}

fn ser_rat<S: serde::Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat::show(x))
}

#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub lattice: Lattice,
    pub expected: Invariants,
}

fn expected(m: Rat, d: Rat, s: u64, t: u64, smith: &str, sp: bool) -> Invariants {
    let r = &m * &d;
    Invariants { m, d, s, t, r, smith: smith.into(), strongly_perfect_both: sp }
}

/// Entry names in display order.
pub fn catalogue_list() -> Vec<&'static str> {
    vec!["Lambda16", "N16", "O16", "Gamma16", "E8", "A2", "D4", "E8_perp_sqrt7E8"]
}

pub fn entry(name: &str) -> Result<CatalogueEntry, CatalogueError> {
    let fixture = |name: &str| -> Result<Lattice, CatalogueError> {
        let json = FIXTURE_FILES.iter().find(|(n, _)| *n == name).expect("listed fixture").1;
        Ok(format::parse_lattice(json)?)
    };
    let (name, lattice, exp) = match name {
        "Lambda16" => ("Lambda16", fixture(name)?, expected(int(4), int(2), 2160, 2160, "2^8", true)),
        "N16" => ("N16", fixture(name)?, expected(int(6), frac(6, 5), 1200, 1200, "5^8", true)),
        "O16" => ("O16", fixture(name)?, expected(int(3), int(2), 256, 1008, "2^6", true)),
        "Gamma16" => ("Gamma16", fixture(name)?, expected(int(4), frac(3, 2), 432, 768, "2^8 4^2", true)),
        "E8" => ("E8", standard::e8(), expected(int(2), int(2), 120, 120, "1", true)),
        "A2" => ("A2", standard::a(2), expected(int(2), frac(2, 3), 3, 3, "3", true)),
        "D4" => ("D4", standard::d(4), expected(int(2), int(1), 12, 12, "2^2", true)),
        "E8_perp_sqrt7E8" => (
            "E8_perp_sqrt7E8",
            e8_perp_sqrt7e8(),
            // minimal vectors of the dual all lie in one E8 component
            expected(int(2), frac(2, 7), 120, 120, "7^8", false),
        ),
        other => return Err(CatalogueError::UnknownName(other.into())),
    };
    Ok(CatalogueEntry { name, lattice: lattice.with_name(name), expected: exp })
}

/// `E8 ⊥ √7 E8`, the standard even 7-modular lattice of determinant `7^8`.
pub fn e8_perp_sqrt7e8() -> Lattice {
    let e8 = standard::e8();
    let scaled = e8.rescale(&int(7)).expect("positive scale");
    e8.orthogonal_sum(&scaled).with_name("E8_perp_sqrt7E8")
}

/// The similar lattice with integral Gram matrix whose entries have gcd 1.
pub fn primitive_integral(l: &Lattice) -> Lattice {
    let entries = l.gram().entries();
    let den = rat::lcm_denoms(entries);
    let num = entries
        .iter()
        .map(|x| (x * rat::big(&den)).to_integer())
        .fold(BigInt::zero(), |g, x| g.gcd(&x));
    let c = rat::big(&den) / rat::big(&num);
    if c.is_one() {
        return l.clone();
    }
    l.rescale(&c).expect("positive scale")
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub expected: Invariants,
    pub measured: Invariants,
    pub strongly_perfect: bool,
    pub dual_strongly_perfect: bool,
    /// Fields that differ, by name.
    pub mismatches: Vec<&'static str>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes every invariant of `l`; the Smith invariant is taken at the
/// primitive integral scaling.
pub fn measure(l: &Lattice, opts: &EnumOptions) -> Result<(Invariants, bool, bool), CatalogueError> {
    let primal = Designs::new(l, opts)?;
    let dual_lattice = l.dual();
    let dual = Designs::new(&dual_lattice, opts)?;
    let sp = primal.is_strongly_perfect();
    let dsp = dual.is_strongly_perfect();
    let smith = primitive_integral(l).smith_invariant()?.to_string();
    let inv = Invariants {
        m: primal.min().clone(),
        d: dual.min().clone(),
        s: primal.s(),
        t: dual.s(),
        r: primal.min() * dual.min(),
        smith,
        strongly_perfect_both: sp && dsp,
    };
    Ok((inv, sp, dsp))
}

pub fn verify_entry(e: &CatalogueEntry, opts: &EnumOptions) -> Result<VerifyReport, CatalogueError> {
    let (measured, sp, dsp) = measure(&e.lattice, opts)?;
    let x = &e.expected;
    let mut mismatches = Vec::new();
    for (field, same) in [
        ("m", measured.m == x.m),
        ("d", measured.d == x.d),
        ("s", measured.s == x.s),
        ("t", measured.t == x.t),
        ("r", measured.r == x.r),
        ("smith", measured.smith == x.smith),
        ("strongly_perfect_both", measured.strongly_perfect_both == x.strongly_perfect_both),
    ] {
        if !same {
            mismatches.push(field);
        }
    }
    Ok(VerifyReport {
        name: e.name.into(),
        expected: x.clone(),
        measured,
        strongly_perfect: sp,
        dual_strongly_perfect: dsp,
        mismatches,
    })
}

pub fn catalogue_verify(name: &str) -> Result<VerifyReport, CatalogueError> {
    verify_entry(&entry(name)?, &EnumOptions::with_vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        let names = catalogue_list();
        for n in ["Lambda16", "N16", "O16", "Gamma16", "E8", "A2", "D4", "E8_perp_sqrt7E8"] {
            assert!(names.contains(&n));
        }
        assert!(matches!(entry("E8xE8"), Err(CatalogueError::UnknownName(_))));
    }

    #[test]
    fn small_entries_verify() {
        for n in ["E8", "A2", "D4", "E8_perp_sqrt7E8"] {
            let rep = catalogue_verify(n).unwrap();
            assert!(rep.passed(), "{n}: {:?}", rep.mismatches);
        }
    }

    #[test]
    fn sums_of_strongly_perfect_are_not() {
        let e = standard::e8();
        let l = e.orthogonal_sum(&e);
        let (inv, sp, _) = measure(&l, &EnumOptions::with_vectors()).unwrap();
        assert_eq!((inv.s, sp), (240, false));
    }

    #[test]
    fn primitive_scaling() {
        let l = standard::a(2).rescale(&frac(3, 4)).unwrap();
        assert_eq!(primitive_integral(&l).gram(), standard::a(2).gram());
    }
}
