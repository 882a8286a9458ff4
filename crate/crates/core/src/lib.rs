#![no_std]
//! Exact arithmetic for the classification of dual strongly perfect lattices.
//!
//! Everything here works over the rationals: Gram matrices, norms, moment
//! sums, LP tableaux and completion searches never touch a rounded value in a
//! decision. The one place floats appear is as a conservative pruning aid
//! inside [`enumerate`], where every reported vector is re-checked exactly.
//!
//! The crate is `no_std` and only needs `alloc`.

extern crate alloc;

pub mod classify;
pub mod completion;
pub mod design;
pub mod enumerate;
pub mod lattice;
pub mod linalg;
pub mod rat;
pub mod standard;
pub mod thetalp;

pub use lattice::Lattice;
pub use linalg::RatMatrix;
pub use rat::Rat;
