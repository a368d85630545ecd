//! A deterministic corpus of geometries and fixture lattices for the
//! verification suites and benches.
//!
//! Everything here is reproducible: the random point configurations are
//! drawn from a fixed-seed generator, and all enumerations are in a fixed
//! order.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::constructions::{
    boolean_geometry, chain_geometry, convex_shelling, poset_shelling, FinitePoset,
    PointConfiguration,
};
use crate::lattice::FiniteLattice;
use crate::setfam::ConvexGeometry;
use crate::Rat;

/// Seed for the random part of the standard corpus.
pub const DEFAULT_SEED: u64 = 0x0c0ffee;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Five planar points in a cross: the four compass points and the center.
///
/// The center lies on both diagonals, so it belongs to the hull of any
/// opposite pair; the other four points are in convex position. The convex
/// shelling has 25 closed sets with cardinality profile (1, 5, 8, 6, 4, 1).
pub fn cross_configuration() -> PointConfiguration {
    PointConfiguration::new(
        ["a", "b", "c", "d", "e"],
        vec![
            vec![rat(0), rat(-1)],
            vec![rat(-1), rat(0)],
            vec![rat(0), rat(0)],
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
        ],
    )
    .expect("fixture is well formed")
}

/// The convex shelling of [`cross_configuration`].
pub fn cross_geometry() -> ConvexGeometry {
    convex_shelling(&cross_configuration())
}

/// All posets on elements `1..=n` whose strict order is compatible with the
/// numeric order (every isomorphism class of an `n`-element poset appears,
/// since every finite poset has a linear extension).
pub fn all_natural_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for choice in 0u32..1 << pairs.len() {
        let has = |a: usize, b: usize| {
            pairs
                .iter()
                .position(|&p| p == (a, b))
                .is_some_and(|k| choice >> k & 1 == 1)
        };
        let transitive = pairs
            .iter()
            .filter(|&&(a, b)| has(a, b))
            .all(|&(a, b)| (b + 1..n).all(|c| !has(b, c) || has(a, c)));
        if !transitive {
            continue;
        }
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        out.push(FinitePoset::new(labels, |i, j| i != j && has(i, j)).expect("relation checked"));
    }
    out
}

/// Deterministic pseudo-random configurations: `count` point sets with 3 to
/// 6 points in dimensions 1 to 3, small rational coordinates, pairwise
/// distinct points.
pub fn random_configurations(count: usize, seed: u64) -> Vec<PointConfiguration> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let dim = 1 + i % 3;
            let points = 3 + i % 4;
            let mut coords: Vec<Vec<Rat>> = Vec::with_capacity(points);
            while coords.len() < points {
                let p: Vec<Rat> = (0..dim)
                    .map(|_| {
                        Rat::new(
                            rng.random_range(-8i64..=8).into(),
                            rng.random_range(1i64..=3).into(),
                        )
                    })
                    .collect();
                if !coords.contains(&p) {
                    coords.push(p);
                }
            }
            let labels = (0..points).map(|k| format!("p{k}"));
            PointConfiguration::new(labels, coords).expect("generated points are distinct")
        })
        .collect()
}

/// The standard corpus: all chain and Boolean geometries with `n ≤ 6`, the
/// shellings of every natural poset on at most 4 elements, the convex
/// shellings of 20 fixed pseudo-random configurations, and the cross
/// geometry.
pub fn standard_corpus() -> Vec<ConvexGeometry> {
    let mut out: Vec<ConvexGeometry> = Vec::new();
    for n in 0..=6 {
        out.push(chain_geometry(n));
    }
    for n in 1..=6 {
        out.push(boolean_geometry(n));
    }
    for n in 0..=4 {
        for p in all_natural_posets(n) {
            out.push(poset_shelling(&p));
        }
    }
    for pc in random_configurations(20, DEFAULT_SEED) {
        out.push(convex_shelling(&pc));
    }
    out.push(cross_geometry());
    out
}

/// The five-element modular non-distributive lattice (three atoms).
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_cover_pairs(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        .expect("fixture is a lattice")
}

/// The five-element non-modular lattice (pentagon).
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_cover_pairs(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
        .expect("fixture is a lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cardinality_profile;

    #[test]
    fn cross_geometry_has_25_closed_sets() {
        let g = cross_geometry();
        assert_eq!(g.closed_sets().len(), 25);
        assert_eq!(cardinality_profile(&g), vec![1, 5, 8, 6, 4, 1]);
    }

    #[test]
    fn natural_poset_counts() {
        assert_eq!(all_natural_posets(0).len(), 1);
        assert_eq!(all_natural_posets(1).len(), 1);
        assert_eq!(all_natural_posets(2).len(), 2);
        assert_eq!(all_natural_posets(3).len(), 7);
        // 40 transitive relations on 4 naturally ordered elements
        assert_eq!(all_natural_posets(4).len(), 40);
    }

    #[test]
    fn random_configurations_are_reproducible() {
        let a = random_configurations(5, 42);
        let b = random_configurations(5, 42);
        assert_eq!(a, b);
        let c = random_configurations(5, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_is_deterministic_and_sized() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 7 + 6 + (1 + 1 + 2 + 7 + 40) + 20 + 1);
        let again = standard_corpus();
        assert_eq!(corpus, again);
    }

    #[test]
    fn fixture_lattices_have_their_textbook_shapes() {
        assert_eq!(m3().atoms().len(), 3);
        assert!(!m3().is_distributive());
        assert_eq!(n5().atoms().len(), 2);
        assert!(!n5().is_distributive());
    }
}
