//! Exact construction and verification of the symmetry algebra of the
//! dihedral Dunkl–Dirac operator on R³, its finite-dimensional irreducible
//! representations, and explicit polynomial monogenics.

pub mod scalar;

pub use scalar::{root_of_unity, sign_of_real, sin_cos, sqrt_rational, CycNum, Field, Rat, ScalarError, Sign};
pub mod poly;
pub mod dunkl;
pub mod symalg;
pub mod grp;
pub mod reps;
pub mod monogenics;
