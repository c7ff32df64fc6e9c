//! Exact arithmetic: residue rings, weight groups, group rings and monomial operators.

mod group;
mod group_ring;
mod modint;
mod monomial;

pub use group::{character_eval, Character, CharacterSpec, WeightGroup};
pub use group_ring::{GroupRingElem, ScaledGroupRing};
pub use modint::{is_prime, mod_inverse, sqrt_minus_one, ModInt, Modulus};
pub use monomial::{
    monomial_compose, monomial_convolve, monomial_trace, partial_transpose_perm, MonomialOperator,
    TupleIndex,
};
#[allow(unused_imports)]
pub(crate) use monomial::is_bijection;
pub(crate) use modint::pow_mod;
