//! Fixtures shared by the criterion benchmarks.

use dihedral_dunkl::dunkl::{Kappa, RootSystem};
use dihedral_dunkl::reps::{resolve_lambda_lambda, Case, Family, RepSpec};

/// The root system used throughout, with κ = (1/3, 1/4, 1/5) (κₘ = κ₁ for odd m).
pub fn root_system(m: u32) -> RootSystem {
    let km = if m % 2 == 1 { (1, 4) } else { (1, 5) };
    RootSystem::new(m, Kappa::fracs((1, 3), (1, 4), km)).expect("valid m")
}

/// The first unrestricted case-I cell of dimension 2N+2.
pub fn case_one_cell(m: u32, n: u32) -> RepSpec {
    let case = if m % 2 == 1 { Case::I } else { Case::Ii };
    let kappa = root_system(m).kappa().clone();
    (0..m)
        .map(|ell| RepSpec::new(m, n, ell, 1, case, 1, Family::One, kappa.clone()))
        .find(|s| resolve_lambda_lambda(s).is_ok())
        .expect("some ℓ satisfies the case I congruence")
}
