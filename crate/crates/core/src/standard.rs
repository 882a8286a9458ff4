//! Root lattices and other small reference lattices.

use alloc::format;
use alloc::vec;

use crate::lattice::Lattice;
use crate::linalg::RatMatrix;
use crate::rat;

fn from_cartan(name: &str, n: usize, edges: &[(usize, usize)]) -> Lattice {
    let mut g = RatMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = rat::int(2);
    }
    for &(i, j) in edges {
        g[(i, j)] = rat::int(-1);
        g[(j, i)] = rat::int(-1);
    }
    Lattice::named(name, g).expect("Cartan matrices of root lattices are positive definite")
}

/// `Z^n`.
pub fn z(n: usize) -> Lattice {
    Lattice::named(&format!("Z^{n}"), RatMatrix::identity(n)).expect("identity is positive definite")
}

/// `A_n`, `n >= 1`.
pub fn a(n: usize) -> Lattice {
    let edges: vec::Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_cartan(&format!("A{n}"), n, &edges)
}

/// `D_n`, `n >= 4`.
pub fn d(n: usize) -> Lattice {
    assert!(n >= 4, "D_n needs n >= 4");
    let mut edges: vec::Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    from_cartan(&format!("D{n}"), n, &edges)
}

pub fn e8() -> Lattice {
    from_cartan(
        "E8",
        8,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn determinants() {
        assert_eq!(z(3).det(), int(1));
        assert_eq!(a(4).det(), int(5));
        assert_eq!(d(4).det(), int(4));
        assert_eq!(d(6).det(), int(4));
        assert_eq!(e8().det(), int(1));
        assert!(e8().is_even());
    }
}
