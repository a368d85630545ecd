//! Constructors for the standard families: convex shellings of rational
//! point sets, poset shellings (downsets), chain geometries, and Boolean
//! geometries. All geometry predicates are exact; there is no floating
//! point anywhere.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{bareiss_rank, clear_denominators, solve_unique};
use crate::par;
use crate::setfam::{validate_family, ConvexGeometry, GroundSet, GroundSetError, Mask};
use crate::Rat;

/// Errors from point-configuration construction and hull queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("point {label} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate points `{0}` and `{1}`")]
    DuplicatePoints(String, String),
    #[error("a point configuration needs at least one point")]
    NoPoints,
    #[error("points must have dimension at least 1")]
    ZeroDimension,
    #[error("label and coordinate counts differ")]
    CountMismatch,
    #[error(transparent)]
    Labels(#[from] GroundSetError),
}

/// A finite set of labelled points with exact rational coordinates, all of
/// the same dimension, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    labels: Vec<String>,
    coords: Vec<Vec<Rat>>,
}

impl PointConfiguration {
    pub fn new<I, S>(labels: I, coords: Vec<Vec<Rat>>) -> Result<PointConfiguration, PointError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != coords.len() {
            return Err(PointError::CountMismatch);
        }
        if coords.is_empty() {
            return Err(PointError::NoPoints);
        }
        GroundSet::new(labels.iter().cloned())?;
        let dim = coords[0].len();
        if dim == 0 {
            return Err(PointError::ZeroDimension);
        }
        for (label, point) in labels.iter().zip(&coords) {
            if point.len() != dim {
                return Err(PointError::DimensionMismatch {
                    label: label.clone(),
                    expected: dim,
                    found: point.len(),
                });
            }
        }
        for i in 0..coords.len() {
            for j in i + 1..coords.len() {
                if coords[i] == coords[j] {
                    return Err(PointError::DuplicatePoints(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        Ok(PointConfiguration { labels, coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor requires at least one point
    }

    pub fn dim(&self) -> usize {
        self.coords[0].len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> &[Vec<Rat>] {
        &self.coords
    }
}

/// True iff the points are affinely independent, decided by exact rank of
/// the homogeneous lift (a row `(1, x₁, …, x_d)` per point).
fn affinely_independent(points: &[&Vec<Rat>]) -> bool {
    let rows: Vec<Vec<_>> = points
        .iter()
        .map(|p| {
            let mut row = vec![Rat::from_integer(1.into())];
            row.extend_from_slice(p);
            clear_denominators(&row)
        })
        .collect();
    let k = rows.len();
    bareiss_rank(rows) == k
}

/// True iff `p` lies in the convex hull of the affinely independent set
/// `simplex`, decided by solving the barycentric system exactly and checking
/// that every coordinate is nonnegative.
fn in_simplex_hull(p: &[Rat], simplex: &[&Vec<Rat>]) -> bool {
    let d = p.len();
    let k = simplex.len();
    let mut a = vec![vec![Rat::zero(); k]; d + 1];
    let mut b = vec![Rat::zero(); d + 1];
    for (j, s) in simplex.iter().enumerate() {
        a[0][j] = Rat::from_integer(1.into());
        for i in 0..d {
            a[i + 1][j] = s[i].clone();
        }
    }
    b[0] = Rat::from_integer(1.into());
    b[1..].clone_from_slice(p);
    match solve_unique(&a, &b) {
        Some(lambda) => lambda.iter().all(|x| !x.is_negative()),
        None => false,
    }
}

/// Exact decision of `p ∈ conv(points)`.
///
/// By Carathéodory's theorem this holds iff some affinely independent subset
/// `S` with `|S| ≤ d + 1` contains `p` in its hull; all such subsets are
/// enumerated and each is decided by an exact barycentric solve.
pub fn point_in_hull(p: &[Rat], points: &[Vec<Rat>]) -> Result<bool, PointError> {
    let d = p.len();
    if d == 0 {
        return Err(PointError::ZeroDimension);
    }
    for (i, q) in points.iter().enumerate() {
        if q.len() != d {
            return Err(PointError::DimensionMismatch {
                label: format!("#{i}"),
                expected: d,
                found: q.len(),
            });
        }
    }
    let n = points.len();
    assert!(
        n <= 24,
        "hull membership enumerates subsets; {n} points is past desk scale"
    );
    let found = (1u32..1 << n).any(|mask| {
        let size = mask.count_ones() as usize;
        if size > d + 1 {
            return false;
        }
        let simplex: Vec<&Vec<Rat>> = Mask(mask).iter().map(|i| &points[i]).collect();
        affinely_independent(&simplex) && in_simplex_hull(p, &simplex)
    });
    Ok(found)
}

/// The convex shelling of a point configuration: closed sets are exactly the
/// subsets `X` with `conv(X) ∩ P = X`.
///
/// Equivalently, `X` is closed iff no outside point of `P` lies in the hull
/// of `X`; each outside point is tested against every candidate subset. The
/// per-point tests share the Carathéodory witnesses: a point is in `conv(X)`
/// iff it is captured by some small affinely independent subset of `X`, so
/// the witnesses are found once and propagated to supersets.
pub fn convex_shelling(pc: &PointConfiguration) -> ConvexGeometry {
    let n = pc.len();
    let d = pc.dim();
    let coords = pc.coords();
    let ground =
        GroundSet::new(pc.labels().iter().cloned()).expect("labels validated on construction");

    let captured: Vec<Vec<bool>> = par::map_collect_indexed(n, |q| {
        let mut cap = vec![false; 1 << n];
        for mask in 1u32..1 << n {
            if mask >> q & 1 == 1 || mask.count_ones() as usize > d + 1 {
                continue;
            }
            let simplex: Vec<&Vec<Rat>> = Mask(mask).iter().map(|i| &coords[i]).collect();
            if affinely_independent(&simplex) && in_simplex_hull(&coords[q], &simplex) {
                cap[mask as usize] = true;
            }
        }
        // propagate each witness to all supersets
        for b in 0..n {
            for m in 0..1usize << n {
                if m >> b & 1 == 1 && cap[m ^ (1 << b)] {
                    cap[m] = true;
                }
            }
        }
        cap
    });

    let closed = (0..1u32 << n)
        .map(Mask)
        .filter(|&x| (0..n).all(|q| x.contains(q) || !captured[q][x.0 as usize]));
    validate_family(ground, closed).expect("a convex shelling satisfies the closed-family axioms")
}

/// Errors from poset construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("order relation is not antisymmetric: `{0}` and `{1}` are below each other")]
    NotAntisymmetric(String, String),
    #[error("order relation is not transitive at `{0}` ≤ `{1}` ≤ `{2}`")]
    NotTransitive(String, String, String),
    #[error("element index {0} out of range for {1} elements")]
    IndexOutOfRange(usize, usize),
    #[error(transparent)]
    Labels(#[from] GroundSetError),
}

/// A finite poset on labelled elements; the order is kept as one down-set
/// mask per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elems: Vec<String>,
    downs: Vec<Mask>,
}

impl FinitePoset {
    /// Builds a poset from an explicit order predicate (reflexivity is
    /// implied; antisymmetry and transitivity are checked).
    pub fn new<I, S, F>(elems: I, leq: F) -> Result<FinitePoset, PosetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        F: Fn(usize, usize) -> bool,
    {
        let elems: Vec<String> = elems.into_iter().map(Into::into).collect();
        GroundSet::new(elems.iter().cloned())?;
        let n = elems.len();
        let mut downs = vec![Mask::EMPTY; n];
        for (i, down) in downs.iter_mut().enumerate() {
            *down = down.insert(i);
            for j in 0..n {
                if leq(j, i) {
                    *down = down.insert(j);
                }
            }
        }
        for i in 0..n {
            for j in downs[i].iter() {
                if i != j && downs[j].contains(i) {
                    return Err(PosetError::NotAntisymmetric(
                        elems[j.min(i)].clone(),
                        elems[j.max(i)].clone(),
                    ));
                }
                if !downs[j].is_subset_of(downs[i]) {
                    let k = downs[j].difference(downs[i]).iter().next().unwrap();
                    return Err(PosetError::NotTransitive(
                        elems[k].clone(),
                        elems[j].clone(),
                        elems[i].clone(),
                    ));
                }
            }
        }
        Ok(FinitePoset { elems, downs })
    }

    /// Builds a poset as the reflexive-transitive closure of cover pairs
    /// `(lower, upper)`.
    pub fn from_covers<I, S>(elems: I, pairs: &[(usize, usize)]) -> Result<FinitePoset, PosetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elems: Vec<String> = elems.into_iter().map(Into::into).collect();
        GroundSet::new(elems.iter().cloned())?;
        let n = elems.len();
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(PosetError::IndexOutOfRange(x, n));
                }
            }
            above[a].push(b);
        }
        let mut downs = vec![Mask::EMPTY; n];
        for start in 0..n {
            let mut stack = vec![start];
            let mut seen = Mask::EMPTY.insert(start);
            while let Some(x) = stack.pop() {
                for &y in &above[x] {
                    if y == start {
                        return Err(PosetError::NotAntisymmetric(
                            elems[start].clone(),
                            elems[x].clone(),
                        ));
                    }
                    if !seen.contains(y) {
                        seen = seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            for j in seen.iter() {
                downs[j] = downs[j].insert(start);
            }
        }
        Ok(FinitePoset { elems, downs })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[String] {
        &self.elems
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.downs[j].contains(i)
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    let between = (0..n)
                        .filter(|&k| k != i && k != j && self.leq(i, k) && self.leq(k, j))
                        .count();
                    if between == 0 {
                        out.push((i, j));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// The poset shelling: closed sets are the downsets (order ideals) of the
/// poset.
pub fn poset_shelling(p: &FinitePoset) -> ConvexGeometry {
    let n = p.len();
    let ground =
        GroundSet::new(p.elems().iter().cloned()).expect("labels validated on construction");
    let closed = (0..1u32 << n)
        .map(Mask)
        .filter(|&x| x.iter().all(|e| p.downs[e].is_subset_of(x)));
    validate_family(ground, closed).expect("downsets satisfy the closed-family axioms")
}

/// The chain geometry on `{1, …, n}`: closed sets are the prefixes `[k]`
/// together with `∅`. Its lattice is an `(n+1)`-chain; `n = 0` gives the
/// empty geometry.
pub fn chain_geometry(n: usize) -> ConvexGeometry {
    let ground = GroundSet::numbered(n);
    let closed = (0..=n).map(Mask::full);
    validate_family(ground, closed).expect("prefixes satisfy the closed-family axioms")
}

/// The Boolean geometry on `{1, …, n}`: every subset is closed. This is the
/// convex shelling of any `n` points in convex position and the `n`-fold
/// product of single-point geometries.
pub fn boolean_geometry(n: usize) -> ConvexGeometry {
    let ground = GroundSet::numbered(n);
    let closed = (0..1u32 << n).map(Mask);
    validate_family(ground, closed).expect("the powerset satisfies the closed-family axioms")
}

/// Convenience: all distinct closed-set cardinalities, counted.
pub fn cardinality_profile(g: &ConvexGeometry) -> Vec<usize> {
    let mut counts = vec![0usize; g.ground().size() + 1];
    for m in g.closed_sets() {
        counts[m.len()] += 1;
    }
    counts
}

/// Checks two label lists describe the same closed family, used by the
/// affine-invariance tests.
pub fn closed_label_sets(g: &ConvexGeometry) -> BTreeSet<Vec<String>> {
    g.closed_sets()
        .iter()
        .map(|&m| m.iter().map(|i| g.ground().label(i).to_string()).collect())
        .collect()
}
