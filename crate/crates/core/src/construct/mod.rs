//! Executable versions of the constructive arguments: nested bases, the
//! `f`-Cauchy productive set builder, the reshuffling bound, the Cantor
//! scheme and the product-of-prime-cyclic-groups example.

mod basis;
mod builder;
mod cantor;
pub mod families;
pub mod hp;

pub use basis::{make_nested_basis, reshuffle_bound_check, BasisKind, Level, NestedBasis};
pub use builder::{build_f_cauchy_set, circle_step};
pub use cantor::{cantor_scheme, level_radius, CantorChecks, CantorNode, CantorTree};
pub use families::{family_s, family_t, FamilyPair, IndependentFamily};
pub use hp::{build_a_n, e_set, g_z, split_test, support_overlap_check, KpWindow};
