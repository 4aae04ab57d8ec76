//! Exact-arithmetic workbench for the graded Lie algebras attached to the
//! lower central series of poly-free groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`lyndon`] – free Lie algebras over `Z` in the Lyndon basis.
//! * [`algebra`] – layered algebras (iterated semidirect products of free
//!   layers) and the families built from McCool, braid, orbit-configuration
//!   and poison-group relations.
//! * [`intlin`] – Hermite normal forms, integer kernels and lattice equality.
//! * [`invariants`] – per-weight centralizers and centers.
//! * [`maps`] – homomorphisms given on weight-1 generators, and the pullback
//!   construction of the orbit-configuration algebras.
//! * [`arrangements`] – the monomial arrangement, its embedding into the braid
//!   arrangement, and the root-map fibration check.
//! * [`groups`] – free-group words, endomorphisms of `F_n`, McCool relations and
//!   the poison group `F_3 ⋊ F_2`.

pub mod algebra;
pub mod arrangements;
pub mod error;
pub mod groups;
pub mod intlin;
pub mod invariants;
pub mod linear;
pub mod lyndon;
pub mod maps;

pub use maps::LieMap;

pub use algebra::{AlgebraSpec, BasisKey, Family, LayerSpec, LieElement};
pub use error::{LieError, Result};
pub use intlin::{IntMatrix, Lattice};
pub use lyndon::{FreeLieElement, LyndonWord};

