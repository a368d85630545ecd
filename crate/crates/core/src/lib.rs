//! Exact-arithmetic engine for finite convex geometries.
//!
//! A convex geometry is a finite set together with an antiexchange closure
//! operator, stored here as the family of its closed subsets. The crate
//! provides:
//!
//! * validation of the closed-family axioms and the closure operator
//!   ([`setfam`]);
//! * the lattice of closed sets, meet-distributivity and related predicates,
//!   and relabeling-invariant canonical keys for isomorphism classes
//!   ([`lattice`]);
//! * minors, products, and the inverse construction from a meet-distributive
//!   lattice back to a geometry ([`geomops`]);
//! * constructors from rational point sets (convex shellings), finite posets
//!   (downset shellings), chains, and Boolean families ([`constructions`]);
//! * the incidence Hopf algebra on isomorphism classes: coproduct over
//!   closed sets, product by disjoint union, counit, and the antipode
//!   computed two independent ways ([`hopf`]);
//! * plain-text file formats for geometries, lattices, point sets, and
//!   posets ([`textio`]), and a deterministic test corpus ([`corpus`]).
//!
//! All arithmetic is exact: coordinates and coefficients are
//! arbitrary-precision rationals, and set families are bitmask-encoded over
//! ground sets of at most 16 elements. Everything is immutable after
//! construction and safe to share across threads. With the default
//! `parallel` feature the embarrassingly parallel inner loops (per-point
//! hull tests, chain enumeration) run on rayon; disabling the feature gives
//! a fully sequential build with identical outputs.

pub mod constructions;
pub mod corpus;
pub mod geomops;
pub mod hopf;
pub mod lattice;
pub mod setfam;
pub mod textio;

mod linalg;
mod par;

/// Exact rational scalar used for coordinates and Hopf coefficients:
/// arbitrary-precision, canonical reduced form, positive denominator.
pub use num_rational::BigRational as Rat;

pub use constructions::{
    boolean_geometry, chain_geometry, convex_shelling, point_in_hull, poset_shelling, FinitePoset,
    PointConfiguration,
};
pub use geomops::{geometry_from_lattice, minor, product_geometry};
pub use hopf::{
    antipode_chain, antipode_recursive, coproduct, counit, has_forbidden_minor, verify_hopf_axiom,
    HopfVector, TensorVector,
};
pub use lattice::{canonical_key, lattice_of_closed_sets, CanonicalKey, FiniteLattice};
pub use setfam::{check_antiexchange, validate_family, ConvexGeometry, GroundSet, Mask};
