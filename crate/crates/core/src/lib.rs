//! Exact computations around Hilbert schemes of points on Picard-rank-1 K3
//! surfaces: Pell equations, the Beauville-Bogomolov-Fujiki lattice, the
//! movable-cone trichotomy, a birational-inequivalence classifier with
//! checkable certificates, and motivic generating series through power
//! structures.

pub mod classify;
pub mod cone;
pub mod lattice;
pub mod motivic;
pub mod pell;
pub mod ring;
pub(crate) mod serde_bigint;

pub use classify::{classify, enumerate_family, Certificate, Reason, Verdict};
pub use cone::{movable_case, ConeCase, ConeTag};
pub use lattice::{DivisorClass, LatticeParams, MukaiVector};
pub use motivic::{HilbSeries, HodgeProfile, MotivicClass, Realization};
pub use num_bigint::BigInt;
pub use pell::{fundamental_pell, solve_case_b, solve_case_c, PellSolution};
pub use ring::{Alphabet, LaurentPoly, TruncatedSeries};
