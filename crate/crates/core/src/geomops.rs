//! Structural operations on geometries: minors, products, and the inverse
//! construction from a meet-distributive lattice back to a convex geometry.

use thiserror::Error;

use crate::lattice::FiniteLattice;
use crate::setfam::{validate_family, ConvexGeometry, GroundSet, Mask};

/// Errors from [`minor`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("lower bound is not a closed set")]
    LowerNotClosed(Mask),
    #[error("upper bound is not a closed set")]
    UpperNotClosed(Mask),
    #[error("lower bound is not contained in the upper bound")]
    NotNested,
}

/// The minor of `g` with respect to closed sets `A ⊆ B`: the geometry on
/// `B \ A` whose closed sets are `{X \ A : X closed, A ⊆ X ⊆ B}`.
///
/// The result is validated against the closed-family axioms, so "a minor is
/// always a convex geometry" is a checked postcondition rather than an
/// assumption. `minor(g, ∅, Z)` is `g` itself; `minor(g, X, X)` is the empty
/// geometry.
pub fn minor(g: &ConvexGeometry, a: Mask, b: Mask) -> Result<ConvexGeometry, MinorError> {
    if !g.is_closed(a) {
        return Err(MinorError::LowerNotClosed(a));
    }
    if !g.is_closed(b) {
        return Err(MinorError::UpperNotClosed(b));
    }
    if !a.is_subset_of(b) {
        return Err(MinorError::NotNested);
    }
    let kept: Vec<usize> = b.difference(a).iter().collect();
    let labels = kept.iter().map(|&i| g.ground().label(i).to_string());
    let ground = GroundSet::new(labels).expect("subset of valid labels is valid");
    let mut position = vec![usize::MAX; g.ground().size().max(1)];
    for (new, &old) in kept.iter().enumerate() {
        position[old] = new;
    }
    let family = g.closed_sets().iter().filter_map(|&x| {
        if a.is_subset_of(x) && x.is_subset_of(b) {
            let mut bits = Mask::EMPTY;
            for i in x.difference(a).iter() {
                bits = bits.insert(position[i]);
            }
            Some(bits)
        } else {
            None
        }
    });
    Ok(validate_family(ground, family).expect("a minor of a valid geometry is a valid geometry"))
}

/// The product geometry on the disjoint union of the ground sets: closed
/// sets are all unions `X₁ ∪ X₂` of closed sets of the factors.
///
/// Inputs are force-disjointed by relabeling to `1.<label>` / `2.<label>`,
/// so there is no disjointness precondition; downstream identity is always
/// by canonical key, where the relabeling is invisible. The combined ground
/// set must stay within the 16-element cap.
pub fn product_geometry(g1: &ConvexGeometry, g2: &ConvexGeometry) -> ConvexGeometry {
    let n1 = g1.ground().size();
    let labels = g1
        .ground()
        .labels()
        .iter()
        .map(|l| format!("1.{l}"))
        .chain(g2.ground().labels().iter().map(|l| format!("2.{l}")));
    let ground = GroundSet::new(labels).expect("product ground set exceeds the 16-element cap");
    let family = g1.closed_sets().iter().flat_map(|&x1| {
        g2.closed_sets()
            .iter()
            .map(move |&x2| Mask(x1.0 | x2.0 << n1))
    });
    let product =
        validate_family(ground, family).expect("a product of valid geometries is a valid geometry");
    debug_assert_eq!(
        product.closed_sets().len(),
        g1.closed_sets().len() * g2.closed_sets().len()
    );
    product
}

/// Error from [`geometry_from_lattice`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("the lattice is not meet-distributive")]
    NotMeetDistributive,
}

/// Realizes a meet-distributive lattice as a convex geometry.
///
/// The ground set is the set of join-irreducible elements (those covering
/// exactly one element), labelled `j0, j1, …` in element order; the closed
/// set attached to `x` is the set of join-irreducibles below `x`. The
/// resulting geometry's lattice of closed sets is isomorphic to the input,
/// which the tests pin down through canonical keys.
pub fn geometry_from_lattice(l: &FiniteLattice) -> Result<ConvexGeometry, RealizationError> {
    if !l.is_meet_distributive() {
        return Err(RealizationError::NotMeetDistributive);
    }
    let irreducibles: Vec<usize> = (0..l.len())
        .filter(|&x| l.covers_down(x).len() == 1)
        .collect();
    let ground = GroundSet::new(
        irreducibles
            .iter()
            .enumerate()
            .map(|(k, _)| format!("j{k}")),
    )
    .expect("generated labels are valid");
    let family: Vec<Mask> = (0..l.len())
        .map(|x| {
            let mut bits = Mask::EMPTY;
            for (k, &j) in irreducibles.iter().enumerate() {
                if l.leq(j, x) {
                    bits = bits.insert(k);
                }
            }
            bits
        })
        .collect();
    let g = validate_family(ground, family)
        .expect("join-irreducible representation of a meet-distributive lattice is a geometry");
    assert_eq!(
        g.closed_sets().len(),
        l.len(),
        "join-irreducible representation must be injective"
    );
    Ok(g)
}
