//! Divisor class groups of simplicial affine toric varieties and exact
//! verification of symbolic-power containments `q^(Da) ⊆ q^a` for
//! torus-invariant ideals of pure height one.
//!
//! Everything here is combinatorial: the toric ring `k[σ∨ ∩ Z^n]` is carried
//! by its exponent lattice, monomials are lattice points, and the divisorial
//! valuation of the prime attached to a ray `u` is the pairing `⟨m, u⟩`.
//! No field element is ever represented.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

#[macro_use]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod class_group;
pub mod cone;
pub mod duval;
pub mod error;
pub mod ideal;
pub mod linalg;
mod util;

pub use class_group::{
    class_group_of, class_of, det_multiplier, group_exponent, group_order, order_of_class,
    presentation_matrix, AbelianGroupPresentation, ClassResidue, DivisorClass, GroupOrder,
};
pub use cone::{
    dual_cone, hilbert_basis, make_cone, primitive, semigroup_member, Cone, LatticePoint,
    SemigroupData,
};
pub use duval::{cross_check_an, lookup, DuValRecord, Family};
pub use error::{Error, Result};
pub use ideal::{
    find_sharpness_witness, ideal_member, intersect, is_principal, ordinary_power, ray_prime,
    symbolic_power, verify_containment, ContainmentReport, LevelVerdict, MonomialIdeal,
    PureHeightOneIdeal, SharpnessWitness,
};
pub use linalg::{adjugate, determinant, smith_normal_form, IntegerMatrix, SmithDecomposition};
