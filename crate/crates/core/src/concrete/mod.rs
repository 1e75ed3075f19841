//! Concrete computable groups: `ℤ_p`, rational points of the circle,
//! `(ℤ, τ_p)`, `ℤ(n)`, finitary permutations, truncated products and the
//! bounded subgroup of `ℤ^ℕ`.

mod bounded;
mod circle;
mod padic;
mod perm;
pub mod primes;
mod product;

pub use bounded::BoundedSeq;
pub use circle::CirclePoint;
pub(crate) use padic::check_prime;
pub use padic::{int_to_padic, padic_to_residue, PadicInt, Valuation};
pub use perm::Permutation;
pub use product::{cantor_pair, cantor_unpair, embed_int_tau_p, support};
