//! The incidence Hopf algebra of convex geometries.
//!
//! Vectors are formal finite linear combinations, with exact rational
//! coefficients, of isomorphism classes of geometries; a class is identified
//! by the canonical key of its lattice of closed sets, and each vector
//! carries one concrete representative per class so that further structure
//! maps can be computed. The coproduct splits a geometry over its closed
//! sets into pairs of minors, the product is disjoint union, and the
//! antipode is computed two algorithmically independent ways: the signed sum
//! over chains of closed sets, and the graded recursion. Both must agree
//! term-exactly, and the test suites hold them to that.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geomops::{minor, product_geometry};
use crate::lattice::{canonical_key, lattice_of_closed_sets, CanonicalKey};
use crate::par;
use crate::setfam::{ConvexGeometry, Mask};
use crate::Rat;

/// Shared line-oriented rendering for the two formal-sum types.
macro_rules! fmt_formal_sum {
    ($render:expr) => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.terms.is_empty() {
                return f.write_str("0");
            }
            let render = $render;
            let lines: Vec<String> = self.terms.iter().map(|(k, v)| render((k, v))).collect();
            f.write_str(&lines.join("\n"))
        }
    };
}

/// The computable identity of a geometry isomorphism class: ground size
/// together with the canonical key of the lattice of closed sets.
///
/// Two geometries are isomorphic exactly when their lattices are, so equal
/// keys mean one class; the ground size is determined by the lattice (it is
/// its height) and is carried explicitly for grading and display order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId {
    ground_size: usize,
    key: CanonicalKey,
}

type KeyCache = Mutex<HashMap<(usize, Vec<u32>), CanonicalKey>>;

/// Canonical keys memoized by the exact bitmask representation of a closed
/// family. Labels do not enter the lattice construction, so two geometries
/// with the same mask family share a key; the cached value equals the
/// freshly computed one, keeping every caller deterministic.
fn key_cache() -> &'static KeyCache {
    static CACHE: OnceLock<KeyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ClassId {
    pub fn of(g: &ConvexGeometry) -> ClassId {
        let ground_size = g.ground().size();
        let family: Vec<u32> = g.closed_sets().iter().map(|m| m.0).collect();
        let cache_key = (ground_size, family);
        if let Some(key) = key_cache().lock().unwrap().get(&cache_key).cloned() {
            return ClassId { ground_size, key };
        }
        let key = canonical_key(&lattice_of_closed_sets(g));
        key_cache().lock().unwrap().insert(cache_key, key.clone());
        ClassId { ground_size, key }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn key(&self) -> &CanonicalKey {
        &self.key
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key.as_str())
    }
}

/// A formal rational linear combination of geometry classes.
///
/// No zero coefficients are stored; terms iterate in (ground size, key)
/// order; the registry keeps one representative geometry per class
/// appearing anywhere in the vector's history. Equality compares terms
/// only — representatives are interchangeable within a class.
#[derive(Debug, Clone)]
pub struct HopfVector {
    terms: BTreeMap<ClassId, Rat>,
    registry: BTreeMap<ClassId, ConvexGeometry>,
}

impl PartialEq for HopfVector {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for HopfVector {}

impl HopfVector {
    pub fn zero() -> HopfVector {
        HopfVector {
            terms: BTreeMap::new(),
            registry: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: `1·[empty geometry]`.
    pub fn unit() -> HopfVector {
        HopfVector::from_geometry(&ConvexGeometry::empty())
    }

    /// `1·[g]`.
    pub fn from_geometry(g: &ConvexGeometry) -> HopfVector {
        HopfVector::singleton(g, Rat::one())
    }

    /// `coeff·[g]`.
    pub fn singleton(g: &ConvexGeometry, coeff: Rat) -> HopfVector {
        let mut v = HopfVector::zero();
        v.add_term(ClassId::of(g), g, coeff);
        v
    }

    fn add_term(&mut self, id: ClassId, rep: &ConvexGeometry, coeff: Rat) {
        self.registry
            .entry(id.clone())
            .or_insert_with(|| rep.clone());
        let entry = self.terms.entry(id.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    fn merge_registry(&mut self, other: &HopfVector) {
        for (id, rep) in &other.registry {
            self.registry
                .entry(id.clone())
                .or_insert_with(|| rep.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, id: &ClassId) -> Rat {
        self.terms.get(id).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in (ground size, key) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ClassId, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// A concrete geometry of the class, if one is on record.
    pub fn representative(&self, id: &ClassId) -> Option<&ConvexGeometry> {
        self.registry.get(id)
    }

    pub fn scale(&self, c: &Rat) -> HopfVector {
        if c.is_zero() {
            return HopfVector::zero();
        }
        HopfVector {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            registry: self.registry.clone(),
        }
    }

    pub fn add(&self, other: &HopfVector) -> HopfVector {
        let mut out = self.clone();
        out.merge_registry(other);
        for (id, c) in &other.terms {
            let entry = out.terms.entry(id.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(id);
            }
        }
        out
    }

    pub fn sub(&self, other: &HopfVector) -> HopfVector {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Bilinear extension of the product of geometries: representatives are
    /// multiplied and the results aggregated by canonical key.
    pub fn multiply(&self, other: &HopfVector) -> HopfVector {
        let mut out = HopfVector::zero();
        for (id1, c1) in &self.terms {
            let rep1 = self.registry.get(id1).expect("registry covers terms");
            for (id2, c2) in &other.terms {
                let rep2 = other.registry.get(id2).expect("registry covers terms");
                let prod = product_geometry(rep1, rep2);
                out.add_term(ClassId::of(&prod), &prod, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for HopfVector {
    // One term per line, `<coefficient> * <key>`, in (ground size, key)
    // order; the zero vector prints as `0`.
    fmt_formal_sum!(|term: (&ClassId, &Rat)| format!("{} * {}", term.1, term.0));
}

/// A formal combination of ordered pairs of classes (the coproduct's
/// codomain). Same storage conventions as [`HopfVector`].
#[derive(Debug, Clone)]
pub struct TensorVector {
    terms: BTreeMap<(ClassId, ClassId), Rat>,
    registry: BTreeMap<ClassId, ConvexGeometry>,
}

impl PartialEq for TensorVector {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for TensorVector {}

impl TensorVector {
    pub fn zero() -> TensorVector {
        TensorVector {
            terms: BTreeMap::new(),
            registry: BTreeMap::new(),
        }
    }

    fn add_term(
        &mut self,
        left: (ClassId, &ConvexGeometry),
        right: (ClassId, &ConvexGeometry),
        coeff: Rat,
    ) {
        self.registry
            .entry(left.0.clone())
            .or_insert_with(|| left.1.clone());
        self.registry
            .entry(right.0.clone())
            .or_insert_with(|| right.1.clone());
        let key = (left.0, right.0);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pair: &(ClassId, ClassId)) -> Rat {
        self.terms.get(pair).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ClassId, ClassId), &Rat)> {
        self.terms.iter()
    }

    pub fn representative(&self, id: &ClassId) -> Option<&ConvexGeometry> {
        self.registry.get(id)
    }
}

impl fmt::Display for TensorVector {
    fmt_formal_sum!(|term: (&(ClassId, ClassId), &Rat)| format!(
        "{} * {} (x) {}",
        term.1, term.0 .0, term.0 .1
    ));
}

/// The coproduct `Δ(g) = Σ_{X closed} M(∅, X) ⊗ M(X, Z)`, with isomorphic
/// tensor factors aggregated by key.
pub fn coproduct(g: &ConvexGeometry) -> TensorVector {
    let full = g.ground().full_mask();
    let parts: Vec<((ClassId, ConvexGeometry), (ClassId, ConvexGeometry))> =
        par::map_collect(g.closed_sets(), |&x| {
            let left = minor(g, Mask::EMPTY, x).expect("closed bounds");
            let right = minor(g, x, full).expect("closed bounds");
            ((ClassId::of(&left), left), (ClassId::of(&right), right))
        });
    let mut out = TensorVector::zero();
    for ((lid, lrep), (rid, rrep)) in parts {
        out.add_term((lid, &lrep), (rid, &rrep), Rat::one());
    }
    out
}

/// The counit: the coefficient of the empty-geometry class. Linear.
pub fn counit(v: &HopfVector) -> Rat {
    v.terms()
        .filter(|(id, _)| id.ground_size() == 0)
        .map(|(_, c)| c.clone())
        .sum()
}

/// All strictly ascending sequences of closed sets from `∅` to the full
/// ground set. For the empty geometry this is the single chain `[∅]`.
fn ascending_chains(g: &ConvexGeometry) -> Vec<Vec<Mask>> {
    let full = g.ground().full_mask();
    let mut out = Vec::new();
    let mut chain = vec![Mask::EMPTY];
    fn extend(g: &ConvexGeometry, full: Mask, chain: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        let top = *chain.last().expect("chain starts at the empty set");
        if top == full {
            out.push(chain.clone());
            return;
        }
        for &y in g.closed_sets() {
            if top.is_subset_of(y) && top != y {
                chain.push(y);
                extend(g, full, chain, out);
                chain.pop();
            }
        }
    }
    extend(g, full, &mut chain, &mut out);
    out
}

/// Product of the minors along one chain; the empty product (the length-zero
/// chain of the empty geometry) is the empty geometry.
fn chain_product(g: &ConvexGeometry, chain: &[Mask]) -> ConvexGeometry {
    let mut factors = chain
        .windows(2)
        .map(|w| minor(g, w[0], w[1]).expect("chain entries are closed and nested"));
    match factors.next() {
        None => ConvexGeometry::empty(),
        Some(first) => factors.fold(first, |acc, m| product_geometry(&acc, &m)),
    }
}

/// The antipode as the signed sum over chains: for every strict chain
/// `∅ = X₀ ⊂ X₁ ⊂ … ⊂ X_k = Z` of closed sets, the term
/// `(−1)^k · [M(X₀,X₁) × ⋯ × M(X_{k−1},X_k)]`.
pub fn antipode_chain(g: &ConvexGeometry) -> HopfVector {
    let chains = ascending_chains(g);
    let contributions: Vec<(bool, ClassId, ConvexGeometry)> = par::map_collect(&chains, |chain| {
        let prod = chain_product(g, chain);
        let negative = (chain.len() - 1) % 2 == 1;
        (negative, ClassId::of(&prod), prod)
    });
    let mut out = HopfVector::zero();
    for (negative, id, rep) in contributions {
        let coeff = if negative { -Rat::one() } else { Rat::one() };
        out.add_term(id, &rep, coeff);
    }
    out
}

/// The antipode by the connected-graded recursion
/// `S(g) = −[g] − Σ_{∅ ⊂ X ⊂ Z} S([M(∅,X)]) · [M(X,Z)]`,
/// memoized on canonical keys. Agrees with [`antipode_chain`] term-exactly;
/// the two stay algorithmically independent so each checks the other.
pub fn antipode_recursive(g: &ConvexGeometry) -> HopfVector {
    let mut memo = HashMap::new();
    antipode_memoized(g, &mut memo)
}

fn antipode_memoized(g: &ConvexGeometry, memo: &mut HashMap<ClassId, HopfVector>) -> HopfVector {
    if g.ground().size() == 0 {
        return HopfVector::unit();
    }
    let id = ClassId::of(g);
    if let Some(v) = memo.get(&id) {
        return v.clone();
    }
    let full = g.ground().full_mask();
    let mut acc = HopfVector::singleton(g, -Rat::one());
    for &x in g.closed_sets() {
        if x == Mask::EMPTY || x == full {
            continue;
        }
        let left = minor(g, Mask::EMPTY, x).expect("closed bounds");
        let right = minor(g, x, full).expect("closed bounds");
        let s_left = antipode_memoized(&left, memo);
        acc = acc.sub(&s_left.multiply(&HopfVector::from_geometry(&right)));
    }
    memo.insert(id, acc.clone());
    acc
}

/// Nonzero residuals from a failed Hopf-axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hopf axiom fails: m∘(S⊗id)∘Δ residual [{left_residual}], m∘(id⊗S)∘Δ residual [{right_residual}]")]
pub struct HopfAxiomFailure {
    pub left_residual: HopfVector,
    pub right_residual: HopfVector,
}

/// Checks `m∘(S⊗id)∘Δ([g]) = ε([g])·[empty]` and the `(id⊗S)` mirror in
/// exact rational arithmetic. Any failure reports the nonzero residuals.
pub fn verify_hopf_axiom(g: &ConvexGeometry) -> Result<(), HopfAxiomFailure> {
    let delta = coproduct(g);
    let expected = if g.ground().size() == 0 {
        HopfVector::unit()
    } else {
        HopfVector::zero()
    };
    let mut memo = HashMap::new();
    let mut lhs = HopfVector::zero();
    let mut rhs = HopfVector::zero();
    for ((a, b), coeff) in delta.terms() {
        let rep_a = delta.representative(a).expect("registry covers terms");
        let rep_b = delta.representative(b).expect("registry covers terms");
        let s_a = antipode_memoized(rep_a, &mut memo);
        let s_b = antipode_memoized(rep_b, &mut memo);
        lhs = lhs.add(&s_a.multiply(&HopfVector::from_geometry(rep_b)).scale(coeff));
        rhs = rhs.add(&HopfVector::from_geometry(rep_a).multiply(&s_b).scale(coeff));
    }
    let left_residual = lhs.sub(&expected);
    let right_residual = rhs.sub(&expected);
    if left_residual.is_zero() && right_residual.is_zero() {
        Ok(())
    } else {
        Err(HopfAxiomFailure {
            left_residual,
            right_residual,
        })
    }
}

/// A pair of nested closed sets whose minor realizes the forbidden pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForbiddenMinorWitness {
    pub lower: Mask,
    pub upper: Mask,
}

/// Searches for a minor of `g` isomorphic to `pattern`, scanning closed
/// pairs `A ⊆ B` in canonical family order (outer `A`, inner `B`) and
/// returning the first witness.
pub fn has_forbidden_minor(
    g: &ConvexGeometry,
    pattern: &ConvexGeometry,
) -> Option<ForbiddenMinorWitness> {
    let pattern_id = ClassId::of(pattern);
    for &a in g.closed_sets() {
        for &b in g.closed_sets() {
            if !a.is_subset_of(b) {
                continue;
            }
            let m = minor(g, a, b).expect("closed nested bounds");
            if ClassId::of(&m) == pattern_id {
                return Some(ForbiddenMinorWitness { lower: a, upper: b });
            }
        }
    }
    None
}
