//! Cross-module invariants: closure-operator laws, hereditary-family
//! properties, canonical-key stability, structural identities of products
//! and intervals, and format round trips. Exhaustive where the state space
//! is small, property-based where it is not.

use proptest::prelude::*;

use convexity::constructions::closed_label_sets;
use convexity::corpus;
use convexity::hopf::ClassId;
use convexity::lattice::FiniteLattice;
use convexity::setfam::GroundSet;
use convexity::textio::{format_geometry, format_lattice, parse_geometry, parse_lattice};
use convexity::{
    antipode_recursive, canonical_key, chain_geometry, check_antiexchange, convex_shelling,
    lattice_of_closed_sets, minor, poset_shelling, product_geometry, validate_family,
    ConvexGeometry, FinitePoset, Mask, PointConfiguration, Rat,
};

fn small_corpus() -> Vec<ConvexGeometry> {
    corpus::standard_corpus()
        .into_iter()
        .filter(|g| g.ground().size() <= 5)
        .collect()
}

#[test]
fn closure_is_extensive_monotone_idempotent() {
    for g in small_corpus() {
        let n = g.ground().size();
        for bits in 0..1u32 << n {
            let a = Mask(bits);
            let cl_a = g.closure(a);
            assert!(a.is_subset_of(cl_a), "extensive");
            assert_eq!(g.closure(cl_a), cl_a, "idempotent");
            // monotone over all supersets: enumerate b ⊇ a
            let free = g.ground().full_mask().difference(a);
            let mut extra = free.0;
            loop {
                let b = Mask(a.0 | extra);
                assert!(cl_a.is_subset_of(g.closure(b)), "monotone");
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & free.0;
            }
        }
    }
}

#[test]
fn closed_sets_are_exactly_the_closure_fixed_points() {
    for g in small_corpus() {
        let n = g.ground().size();
        let mut fixed: Vec<Mask> = (0..1u32 << n)
            .map(Mask)
            .filter(|&m| g.closure(m) == m)
            .collect();
        fixed.sort_by(|a, b| a.canonical_cmp(*b));
        assert_eq!(fixed.as_slice(), g.closed_sets());
    }
}

#[test]
fn every_corpus_geometry_has_the_antiexchange_property() {
    for g in corpus::standard_corpus() {
        assert!(
            check_antiexchange(&g).is_ok(),
            "antiexchange must hold for a validated geometry"
        );
    }
}

#[test]
fn boolean_implies_distributive_implies_meet_distributive() {
    let mut checked = 0;
    for g in corpus::standard_corpus() {
        let l = lattice_of_closed_sets(&g);
        if l.len() > 12 {
            continue;
        }
        checked += 1;
        if l.is_boolean() {
            assert!(l.is_distributive());
        }
        if l.is_distributive() {
            assert!(l.is_meet_distributive());
        }
    }
    assert!(checked > 30, "expected a meaningful sample, got {checked}");
}

#[test]
fn canonical_key_ignores_product_factor_order() {
    let picks = [chain_geometry(3), corpus::cross_geometry(), poset_sample()];
    for g1 in &picks {
        for g2 in &picks {
            let l1 = lattice_of_closed_sets(g1);
            let l2 = lattice_of_closed_sets(g2);
            assert_eq!(
                canonical_key(&l1.direct_product(&l2)),
                canonical_key(&l2.direct_product(&l1))
            );
        }
    }
}

fn poset_sample() -> ConvexGeometry {
    let p = FinitePoset::from_covers(["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3)]).unwrap();
    poset_shelling(&p)
}

#[test]
fn nested_intervals_have_stable_keys() {
    // interval(interval(l,a,b),c,d) ≅ interval(l,c,d) for a ≤ c ≤ d ≤ b
    let l = lattice_of_closed_sets(&poset_sample());
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            if !l.leq(a, b) {
                continue;
            }
            let outer = l.interval(a, b).unwrap();
            for c in 0..n {
                for d in 0..n {
                    if !(l.leq(a, c) && l.leq(c, d) && l.leq(d, b)) {
                        continue;
                    }
                    // positions of c, d inside the outer interval
                    let members: Vec<usize> =
                        (0..n).filter(|&x| l.leq(a, x) && l.leq(x, b)).collect();
                    let ci = members.iter().position(|&x| x == c).unwrap();
                    let di = members.iter().position(|&x| x == d).unwrap();
                    let inner = outer.interval(ci, di).unwrap();
                    let direct = l.interval(c, d).unwrap();
                    assert_eq!(canonical_key(&inner), canonical_key(&direct));
                }
            }
        }
    }
}

#[test]
fn product_intervals_decompose_as_interval_products() {
    let l1 = lattice_of_closed_sets(&chain_geometry(3));
    let l2 = lattice_of_closed_sets(&poset_sample());
    let prod = l1.direct_product(&l2);
    let n2 = l2.len();
    for a1 in 0..l1.len() {
        for b1 in 0..l1.len() {
            if !l1.leq(a1, b1) {
                continue;
            }
            for a2 in 0..n2 {
                for b2 in 0..n2 {
                    if !l2.leq(a2, b2) {
                        continue;
                    }
                    let whole = prod.interval(a1 * n2 + a2, b1 * n2 + b2).unwrap();
                    let i1 = l1.interval(a1, b1).unwrap();
                    let i2 = l2.interval(a2, b2).unwrap();
                    assert_eq!(whole.len(), i1.len() * i2.len());
                    assert_eq!(
                        canonical_key(&whole),
                        canonical_key(&i1.direct_product(&i2))
                    );
                }
            }
        }
    }
}

#[test]
fn products_of_downset_geometries_have_distributive_intervals() {
    // operational form of the product-closure argument for poset shellings
    let shellings: Vec<ConvexGeometry> = corpus::all_natural_posets(3)
        .iter()
        .map(poset_shelling)
        .collect();
    for g1 in &shellings {
        for g2 in &shellings {
            let l = lattice_of_closed_sets(&product_geometry(g1, g2));
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if l.leq(a, b) {
                        assert!(l.interval(a, b).unwrap().is_distributive());
                    }
                }
            }
        }
    }
}

#[test]
fn antipode_is_multiplicative_on_small_classes() {
    let picks: Vec<ConvexGeometry> = corpus::standard_corpus()
        .into_iter()
        .filter(|g| g.ground().size() <= 2)
        .collect();
    for g1 in &picks {
        for g2 in &picks {
            let prod = product_geometry(g1, g2);
            let lhs = antipode_recursive(&prod);
            let rhs = antipode_recursive(g1).multiply(&antipode_recursive(g2));
            let mirrored = antipode_recursive(g2).multiply(&antipode_recursive(g1));
            assert_eq!(lhs, rhs);
            assert_eq!(lhs, mirrored);
        }
    }
}

#[test]
fn antipode_preserves_the_grading() {
    for g in small_corpus() {
        let size = g.ground().size();
        for (id, _) in antipode_recursive(&g).terms() {
            assert_eq!(id.ground_size(), size);
        }
    }
}

#[test]
fn geometry_files_round_trip() {
    for g in corpus::standard_corpus() {
        let text = format_geometry(&g);
        let parsed = parse_geometry(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(format_geometry(&parsed), text);
    }
}

#[test]
fn lattice_files_round_trip() {
    for l in [corpus::m3(), corpus::n5()] {
        let text = format_lattice(&l);
        let parsed = parse_lattice(&text).unwrap();
        assert_eq!(format_lattice(&parsed), text);
        assert_eq!(canonical_key(&parsed), canonical_key(&l));
    }
}

// ---------------------------------------------------------------------------
// property-based checks
// ---------------------------------------------------------------------------

fn permuted(g: &ConvexGeometry, perm: &[usize]) -> ConvexGeometry {
    let n = g.ground().size();
    let mut labels = vec![String::new(); n];
    for i in 0..n {
        labels[perm[i]] = g.ground().label(i).to_string();
    }
    let ground = GroundSet::new(labels).unwrap();
    let family = g.closed_sets().iter().map(|&m| {
        let mut out = Mask::EMPTY;
        for i in m.iter() {
            out = out.insert(perm[i]);
        }
        out
    });
    validate_family(ground, family).expect("a permuted geometry is a geometry")
}

fn arb_poset() -> impl Strategy<Value = FinitePoset> {
    (2usize..=4, any::<u32>()).prop_map(|(n, bits)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .enumerate()
            .filter(|&(k, _)| bits >> k & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        FinitePoset::from_covers(labels, &pairs).expect("covers on a linear extension are acyclic")
    })
}

fn arb_configuration() -> impl Strategy<Value = PointConfiguration> {
    let coord = (-4i64..=4, 1i64..=2).prop_map(|(n, d)| Rat::new(n.into(), d.into()));
    (1usize..=2).prop_flat_map(move |dim| {
        proptest::collection::vec(proptest::collection::vec(coord.clone(), dim), 3..=5)
            .prop_filter("points must be pairwise distinct", |pts| {
                pts.iter()
                    .enumerate()
                    .all(|(i, p)| pts[i + 1..].iter().all(|q| q != p))
            })
            .prop_map(|pts| {
                let labels = (0..pts.len()).map(|k| format!("p{k}"));
                PointConfiguration::new(labels, pts).expect("filtered to be valid")
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poset_shellings_are_distributive_and_minor_closed(p in arb_poset()) {
        let g = poset_shelling(&p);
        let l = lattice_of_closed_sets(&g);
        prop_assert!(l.is_distributive());
        for &a in g.closed_sets() {
            for &b in g.closed_sets() {
                if a.is_subset_of(b) {
                    let m = minor(&g, a, b).unwrap();
                    prop_assert!(lattice_of_closed_sets(&m).is_distributive());
                }
            }
        }
    }

    #[test]
    fn random_shellings_validate_and_satisfy_antiexchange(pc in arb_configuration()) {
        let g = convex_shelling(&pc);
        prop_assert!(check_antiexchange(&g).is_ok());
        prop_assert!(lattice_of_closed_sets(&g).is_meet_distributive());
    }

    #[test]
    fn shelling_commutes_with_invertible_affine_maps(
        pc in arb_configuration().prop_filter("planar", |pc| pc.dim() == 2),
        (m00, m01, m10, m11) in (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
            .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0),
        (t0, t1) in (-3i64..=3, -3i64..=3),
    ) {
        let rat = |x: i64| Rat::from_integer(x.into());
        let mapped: Vec<Vec<Rat>> = pc
            .coords()
            .iter()
            .map(|p| {
                vec![
                    rat(m00) * &p[0] + rat(m01) * &p[1] + rat(t0),
                    rat(m10) * &p[0] + rat(m11) * &p[1] + rat(t1),
                ]
            })
            .collect();
        let pc2 = PointConfiguration::new(pc.labels().to_vec(), mapped).unwrap();
        prop_assert_eq!(
            closed_label_sets(&convex_shelling(&pc)),
            closed_label_sets(&convex_shelling(&pc2))
        );
    }

    #[test]
    fn canonical_class_is_invariant_under_relabeling(
        pick in 0usize..20,
        seed in any::<u64>(),
    ) {
        let geoms = small_corpus();
        let g = &geoms[pick % geoms.len()];
        let n = g.ground().size();
        // Fisher–Yates driven by the seed
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let h = permuted(g, &perm);
        prop_assert_eq!(ClassId::of(&h), ClassId::of(g));
    }

    #[test]
    fn minor_interval_correspondence_on_random_posets(p in arb_poset()) {
        let g = poset_shelling(&p);
        let l = lattice_of_closed_sets(&g);
        for &a in g.closed_sets() {
            for &b in g.closed_sets() {
                if !a.is_subset_of(b) {
                    continue;
                }
                let m = minor(&g, a, b).unwrap();
                let ia = g.closed_index(a).unwrap();
                let ib = g.closed_index(b).unwrap();
                prop_assert_eq!(
                    canonical_key(&lattice_of_closed_sets(&m)),
                    canonical_key(&l.interval(ia, ib).unwrap())
                );
            }
        }
    }
}

#[test]
fn geometry_product_is_associative_and_commutative_on_keys() {
    let picks = [
        chain_geometry(1),
        chain_geometry(2),
        poset_sample(),
        corpus::cross_geometry(),
    ];
    let key = |g: &ConvexGeometry| canonical_key(&lattice_of_closed_sets(g));
    for g1 in &picks[..3] {
        for g2 in &picks[..3] {
            assert_eq!(
                key(&product_geometry(g1, g2)),
                key(&product_geometry(g2, g1))
            );
        }
    }
    let (a, b, c) = (&picks[0], &picks[1], &picks[2]);
    assert_eq!(
        key(&product_geometry(&product_geometry(a, b), c)),
        key(&product_geometry(a, &product_geometry(b, c)))
    );
}

#[test]
fn lattice_operations_satisfy_the_lattice_laws() {
    for g in corpus::standard_corpus() {
        let l = lattice_of_closed_sets(&g);
        let n = l.len();
        if n > 12 {
            continue;
        }
        for x in 0..n {
            assert_eq!(l.meet(x, x), x);
            assert_eq!(l.join(x, x), x);
            for y in 0..n {
                let m = l.meet(x, y);
                let j = l.join(x, y);
                assert_eq!(m, l.meet(y, x));
                assert_eq!(j, l.join(y, x));
                // consistency with the order
                assert!(l.leq(m, x) && l.leq(m, y));
                assert!(l.leq(x, j) && l.leq(y, j));
                assert_eq!(l.leq(x, y), m == x);
                assert_eq!(l.leq(x, y), j == y);
                // absorption
                assert_eq!(l.meet(x, j), x);
                assert_eq!(l.join(x, m), x);
                for z in 0..n {
                    assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                    assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                }
            }
        }
    }
}

#[test]
fn hopf_vectors_store_no_zero_terms_and_cover_their_registry() {
    for g in [chain_geometry(3), poset_sample()] {
        let s = antipode_recursive(&g);
        for (id, coeff) in s.terms() {
            assert!(!num_traits::Zero::is_zero(coeff));
            assert!(s.representative(id).is_some(), "registry misses {id}");
        }
        // a vector minus itself cancels entirely
        assert!(s.sub(&s).is_zero());
    }
}

#[test]
fn cross_geometry_spot_checks() {
    let g = corpus::cross_geometry();
    let labels = ["a", "b", "c", "d", "e"];
    let set = |names: &[&str]| {
        let mut m = Mask::EMPTY;
        for n in names {
            m = m.insert(labels.iter().position(|l| l == n).unwrap());
        }
        m
    };
    // the midpoint forces closure({a,e}) to pick up c
    assert_eq!(g.closure(set(&["a", "e"])), set(&["a", "c", "e"]));

    let l = lattice_of_closed_sets(&g);
    let idx = |m: Mask| g.closed_index(m).unwrap();
    assert_eq!(
        l.join(idx(set(&["a"])), idx(set(&["e"]))),
        idx(set(&["a", "c", "e"]))
    );
    assert_eq!(
        l.meet(idx(set(&["a", "c"])), idx(set(&["c", "e"]))),
        idx(set(&["c"]))
    );

    // [{a}, {a,c,e}] is a 3-chain: {a,e} is not closed
    let interval = l
        .interval(idx(set(&["a"])), idx(set(&["a", "c", "e"])))
        .unwrap();
    assert_eq!(interval.len(), 3);
    assert_eq!(
        canonical_key(&interval),
        canonical_key(&lattice_of_closed_sets(&chain_geometry(2)))
    );
}

#[test]
fn lattice_from_leq_agrees_with_cover_construction() {
    let g = corpus::cross_geometry();
    let sets = g.closed_sets().to_vec();
    let labels: Vec<String> = sets.iter().map(|&m| g.ground().render(m)).collect();
    let by_leq = FiniteLattice::from_leq(labels, |i, j| sets[i].is_subset_of(sets[j])).unwrap();
    let fast = lattice_of_closed_sets(&g);
    assert_eq!(by_leq.cover_pairs(), fast.cover_pairs());
    assert_eq!(canonical_key(&by_leq), canonical_key(&fast));
}
