//! Ground sets, subset masks, and closed-set families.
//!
//! A convex geometry is stored extensionally: a [`GroundSet`] of labelled
//! elements together with the family of closed subsets, each subset encoded
//! as a [`Mask`] of ground-set indices. [`validate_family`] checks the three
//! set-family axioms and is the only way to obtain a [`ConvexGeometry`], so
//! every value of that type is known valid.

use std::fmt;

use thiserror::Error;

/// Hard cap on ground-set size so every subset fits a single machine word.
/// All algorithms here are exponential; practical inputs stay well below this.
pub const MAX_GROUND: usize = 16;

/// A subset of ground-set indices, encoded as a bitmask.
///
/// Bit `i` set means the element with ground index `i` is in the subset.
/// Masks are meaningful only relative to the ground set they were built
/// against; operations on [`ConvexGeometry`] check that masks are in range.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mask(pub u32);

impl Mask {
    /// The empty subset.
    pub const EMPTY: Mask = Mask(0);

    /// Subset containing exactly the given indices.
    pub fn from_indices(indices: &[usize]) -> Mask {
        let mut bits = 0u32;
        for &i in indices {
            assert!(i < MAX_GROUND, "ground index {i} out of range");
            bits |= 1 << i;
        }
        Mask(bits)
    }

    /// Full subset on a ground set of `n` elements.
    pub fn full(n: usize) -> Mask {
        assert!(n <= MAX_GROUND);
        Mask(if n == 0 { 0 } else { (1u32 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Mask {
        assert!(i < MAX_GROUND);
        Mask(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    pub fn intersection(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    /// Set difference `self \ other`.
    pub fn difference(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    pub fn insert(self, i: usize) -> Mask {
        Mask(self.0 | 1 << i)
    }

    /// Indices of the subset in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Order used for canonical storage: by cardinality, then by bit pattern.
    pub fn canonical_cmp(self, other: Mask) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask{{{:b}}}", self.0)
    }
}

/// Errors from [`GroundSet::new`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundSetError {
    #[error("ground set has {0} elements, maximum is {MAX_GROUND}")]
    TooLarge(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`: labels must be nonempty, without whitespace or commas, not `{{}}`, and must not start with `#`")]
    InvalidLabel(String),
}

/// An ordered finite set of labelled elements.
///
/// Iteration order is fixed at construction; masks refer to these indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    /// Builds a ground set from distinct labels.
    ///
    /// Labels must be nonempty, contain no whitespace or commas, not start
    /// with `#`, and not be the literal `{}` — the latter two so the text
    /// format stays unambiguous.
    pub fn new<I, S>(labels: I) -> Result<GroundSet, GroundSetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = labels.into_iter().map(Into::into).collect();
        if names.len() > MAX_GROUND {
            return Err(GroundSetError::TooLarge(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty()
                || name.chars().any(|c| c.is_whitespace() || c == ',')
                || name == "{}"
                || name.starts_with('#')
            {
                return Err(GroundSetError::InvalidLabel(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(GroundSetError::DuplicateLabel(name.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    /// The empty ground set.
    pub fn empty() -> GroundSet {
        GroundSet { names: Vec::new() }
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> GroundSet {
        GroundSet::new((1..=n).map(|i| i.to_string())).expect("numbered labels are valid")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    /// Mask of the whole ground set.
    pub fn full_mask(&self) -> Mask {
        Mask::full(self.size())
    }

    /// Renders a mask as `{a,c}` / `{}` in ground order.
    pub fn render(&self, mask: Mask) -> String {
        let labels: Vec<&str> = mask.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }

    /// Compares masks by (cardinality, ground-order lexicographic index
    /// sequence) — the ordering the text format uses for lines.
    pub fn lex_cmp(&self, a: Mask, b: Mask) -> std::cmp::Ordering {
        let av: Vec<usize> = a.iter().collect();
        let bv: Vec<usize> = b.iter().collect();
        (av.len(), av).cmp(&(bv.len(), bv))
    }
}

/// Violation of one of the three closed-family axioms.
///
/// Witness masks name the offending sets; the violation reported is the first
/// one found scanning axioms in order i, ii, iii, with the family scanned in
/// its canonical (cardinality, bit pattern) order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    /// Axiom i: the empty set or the full ground set is missing.
    #[error("axiom i violated: {} is not in the family", ground.render(*missing))]
    MissingExtreme { ground: GroundSet, missing: Mask },
    /// Axiom ii: the family is not closed under intersection.
    #[error("axiom ii violated: {} \u{2229} {} = {} is not in the family",
            ground.render(*x), ground.render(*y), ground.render(*missing))]
    NotIntersectionClosed {
        ground: GroundSet,
        x: Mask,
        y: Mask,
        missing: Mask,
    },
    /// Axiom iii: a proper closed set admits no single-element closed extension.
    #[error("axiom iii violated: {} has no single-element closed extension", ground.render(*stuck))]
    NoAugmentation { ground: GroundSet, stuck: Mask },
}

impl AxiomViolation {
    /// Which axiom failed, as the conventional roman numeral.
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::MissingExtreme { .. } => "i",
            AxiomViolation::NotIntersectionClosed { .. } => "ii",
            AxiomViolation::NoAugmentation { .. } => "iii",
        }
    }
}

/// A finite convex geometry: a ground set plus its family of closed subsets.
///
/// The family is deduplicated and sorted by (cardinality, bit pattern).
/// Values are immutable and only constructed through [`validate_family`],
/// so the three axioms always hold. The empty geometry (empty ground set,
/// family `{∅}`) is admitted: it is the unit of the product and arises as
/// the minor `M(X, X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexGeometry {
    ground: GroundSet,
    closed: Vec<Mask>,
}

/// Checks the three closed-family axioms and builds a [`ConvexGeometry`].
///
/// * axiom i — `∅` and the full ground set belong to the family;
/// * axiom ii — the family is closed under pairwise intersection;
/// * axiom iii — every proper closed set extends by a single element to a
///   closed set.
///
/// Masks must only use indices of `ground`. Duplicates in `family` are
/// collapsed. On failure the first violated axiom (in order i, ii, iii) is
/// reported with the least witness in canonical order.
pub fn validate_family<I>(ground: GroundSet, family: I) -> Result<ConvexGeometry, AxiomViolation>
where
    I: IntoIterator<Item = Mask>,
{
    let full = ground.full_mask();
    let mut closed: Vec<Mask> = family.into_iter().collect();
    for m in &closed {
        assert!(
            m.is_subset_of(full),
            "mask {:?} uses indices outside the ground set",
            m
        );
    }
    closed.sort_by(|a, b| a.canonical_cmp(*b));
    closed.dedup();

    // axiom i
    for extreme in [Mask::EMPTY, full] {
        if closed
            .binary_search_by(|m| m.canonical_cmp(extreme))
            .is_err()
        {
            return Err(AxiomViolation::MissingExtreme {
                ground,
                missing: extreme,
            });
        }
    }

    let member = |m: Mask| closed.binary_search_by(|c| c.canonical_cmp(m)).is_ok();

    // axiom ii
    for (i, &x) in closed.iter().enumerate() {
        for &y in &closed[i + 1..] {
            let z = x.intersection(y);
            if !member(z) {
                return Err(AxiomViolation::NotIntersectionClosed {
                    ground,
                    x,
                    y,
                    missing: z,
                });
            }
        }
    }

    // axiom iii
    for &x in &closed {
        if x == full {
            continue;
        }
        let extends = full.difference(x).iter().any(|z| member(x.insert(z)));
        if !extends {
            return Err(AxiomViolation::NoAugmentation { ground, stuck: x });
        }
    }

    Ok(ConvexGeometry { ground, closed })
}

impl ConvexGeometry {
    /// The empty geometry: no elements, single closed set `∅`.
    pub fn empty() -> ConvexGeometry {
        ConvexGeometry {
            ground: GroundSet::empty(),
            closed: vec![Mask::EMPTY],
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Closed sets in canonical (cardinality, bit pattern) order.
    pub fn closed_sets(&self) -> &[Mask] {
        &self.closed
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        self.closed.binary_search_by(|c| c.canonical_cmp(m)).is_ok()
    }

    /// Position of a closed set in the canonical order.
    pub fn closed_index(&self, m: Mask) -> Option<usize> {
        self.closed.binary_search_by(|c| c.canonical_cmp(m)).ok()
    }

    /// The closure of `A`: intersection of every closed superset.
    ///
    /// Total, because the full ground set is always a closed superset.
    pub fn closure(&self, a: Mask) -> Mask {
        debug_assert!(a.is_subset_of(self.ground.full_mask()));
        let mut acc = self.ground.full_mask();
        for &x in &self.closed {
            if a.is_subset_of(x) {
                acc = acc.intersection(x);
            }
        }
        acc
    }
}

/// A triple refuting the antiexchange property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntiexchangeCounterexample {
    pub set: Mask,
    pub x: usize,
    pub y: usize,
}

/// Exhaustively checks the antiexchange property of the induced closure
/// operator: for all `A ⊆ Z` and distinct `x ≠ y`, if `y ∈ cl(A ∪ x)` and
/// `y ∉ cl(A)` then `x ∉ cl(A ∪ y)`.
///
/// Every geometry accepted by [`validate_family`] passes; running the check
/// cross-validates the two definitions of a convex geometry on concrete
/// instances.
pub fn check_antiexchange(g: &ConvexGeometry) -> Result<(), AntiexchangeCounterexample> {
    let n = g.ground().size();
    // Precompute cl on all 2^n subsets.
    let mut cl = vec![Mask::EMPTY; 1 << n];
    for (bits, slot) in cl.iter_mut().enumerate() {
        *slot = g.closure(Mask(bits as u32));
    }
    for bits in 0..1u32 << n {
        let a = Mask(bits);
        let cl_a = cl[bits as usize];
        for x in 0..n {
            let cl_ax = cl[a.insert(x).0 as usize];
            for y in 0..n {
                if x == y {
                    continue;
                }
                if cl_ax.contains(y) && !cl_a.contains(y) {
                    let cl_ay = cl[a.insert(y).0 as usize];
                    if cl_ay.contains(x) {
                        return Err(AntiexchangeCounterexample { set: a, x, y });
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> ConvexGeometry {
        let ground = GroundSet::numbered(2);
        validate_family(
            ground,
            [
                Mask::EMPTY,
                Mask::from_indices(&[0]),
                Mask::from_indices(&[0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn mask_basics() {
        let m = Mask::from_indices(&[0, 3]);
        assert_eq!(m.len(), 2);
        assert!(m.contains(0) && m.contains(3) && !m.contains(1));
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert!(Mask::from_indices(&[0]).is_subset_of(m));
        assert_eq!(m.difference(Mask::singleton(3)), Mask::singleton(0));
    }

    #[test]
    fn ground_set_rejects_bad_labels() {
        assert!(GroundSet::new(["a", "a"]).is_err());
        assert!(GroundSet::new(["a b"]).is_err());
        assert!(GroundSet::new(["a,b"]).is_err());
        assert!(GroundSet::new([""]).is_err());
        assert!(GroundSet::new(["{}"]).is_err());
        assert!(GroundSet::new(["#x"]).is_err());
        assert!(GroundSet::new((0..17).map(|i| i.to_string())).is_err());
    }

    #[test]
    fn chain_family_is_valid() {
        let g = chain2();
        assert_eq!(g.closed_sets().len(), 3);
    }

    #[test]
    fn missing_augmentation_is_axiom_iii_with_empty_witness() {
        let ground = GroundSet::numbered(2);
        let err = validate_family(ground, [Mask::EMPTY, Mask::from_indices(&[0, 1])]).unwrap_err();
        assert_eq!(err.axiom(), "iii");
        match err {
            AxiomViolation::NoAugmentation { stuck, .. } => assert_eq!(stuck, Mask::EMPTY),
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn missing_intersection_is_axiom_ii() {
        // {∅, {1}, {2}, {1,3}, {2,3}, Z} on 3 elements: {1,3} ∩ {2,3} = {3} missing.
        let ground = GroundSet::numbered(3);
        let err = validate_family(
            ground,
            [
                Mask::EMPTY,
                Mask::from_indices(&[0]),
                Mask::from_indices(&[1]),
                Mask::from_indices(&[0, 2]),
                Mask::from_indices(&[1, 2]),
                Mask::from_indices(&[0, 1, 2]),
            ],
        )
        .unwrap_err();
        assert_eq!(err.axiom(), "ii");
        match err {
            AxiomViolation::NotIntersectionClosed { missing, .. } => {
                assert_eq!(missing, Mask::singleton(2));
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn missing_extreme_is_axiom_i() {
        let ground = GroundSet::numbered(1);
        let err = validate_family(ground, [Mask::from_indices(&[0])]).unwrap_err();
        assert_eq!(err.axiom(), "i");
    }

    #[test]
    fn empty_geometry_is_admitted() {
        let g = validate_family(GroundSet::empty(), [Mask::EMPTY]).unwrap();
        assert_eq!(g.closed_sets(), &[Mask::EMPTY]);
        assert_eq!(g, ConvexGeometry::empty());
        assert!(check_antiexchange(&g).is_ok());
    }

    #[test]
    fn closure_on_chain() {
        let g = chain2();
        assert_eq!(g.closure(Mask::singleton(1)), Mask::from_indices(&[0, 1]));
        for &c in g.closed_sets() {
            assert_eq!(g.closure(c), c);
        }
    }

    #[test]
    fn antiexchange_holds_on_chain() {
        assert!(check_antiexchange(&chain2()).is_ok());
    }

    #[test]
    fn closed_sets_are_exactly_the_closure_fixed_points() {
        let g = chain2();
        let n = g.ground().size();
        let mut fixed: Vec<Mask> = (0..1u32 << n)
            .map(Mask)
            .filter(|&m| g.closure(m) == m)
            .collect();
        fixed.sort_by(|a, b| a.canonical_cmp(*b));
        assert_eq!(fixed.as_slice(), g.closed_sets());
    }

    #[test]
    fn violation_messages_name_witnesses() {
        let ground = GroundSet::numbered(2);
        let err = validate_family(ground, [Mask::EMPTY, Mask::from_indices(&[0, 1])]).unwrap_err();
        assert_eq!(
            err.to_string(),
            "axiom iii violated: {} has no single-element closed extension"
        );
    }
}
