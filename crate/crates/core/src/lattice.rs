//! Finite lattices, the lattice of closed sets, and canonical labeling.
//!
//! Elements are opaque indices `0..len`; the closed-set origin (or any other
//! provenance) is kept as an attached label per element so intervals and
//! witnesses can be reported in ground-set terms. Values are immutable after
//! construction.

use std::fmt;

use thiserror::Error;

use crate::setfam::ConvexGeometry;

/// Lattices up to this size get a full order/meet/join validation in the
/// checked constructors; larger ones (products used only for predicate
/// sweeps) skip the quadratic meet/join existence scan.
const VALIDATE_LIMIT: usize = 600;

/// Size cap for re-checking the order axioms of trusted constructions in
/// debug builds. The trusted paths sit in hot loops (one interval per
/// element inside `is_meet_distributive`), so only the cheap quadratic
/// order check runs there; meet/join existence is a theorem on those paths
/// and is cross-checked once by the test suites.
const TRUSTED_DEBUG_LIMIT: usize = 64;

// ---------------------------------------------------------------------------
// plain bitset rows for order relations
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
struct Bits {
    len: usize,
    blocks: Vec<u64>,
}

impl Bits {
    fn new(len: usize) -> Bits {
        Bits {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + i)
                }
            })
        })
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

/// Errors from lattice constructors and [`FiniteLattice::interval`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("cover relation is cyclic at element {0}")]
    Cyclic(usize),
    #[error("no unique minimum element")]
    NoBottom,
    #[error("no unique maximum element")]
    NoTop,
    #[error("elements {0} and {1} have no meet")]
    MeetFails(usize, usize),
    #[error("elements {0} and {1} have no join")]
    JoinFails(usize, usize),
    #[error("element index {0} out of range for {1} elements")]
    IndexOutOfRange(usize, usize),
    #[error("a lattice needs at least one element")]
    Empty,
}

/// A finite lattice: full order relation, cover relation, bottom and top.
///
/// The order is held as per-element down-sets and up-sets; meets and joins
/// are computed from them on demand (the tables exist functionally, not as
/// materialized arrays). `covers_up` is the transitive reduction of the
/// order.
#[derive(Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    downs: Vec<Bits>,
    ups: Vec<Bits>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    down_counts: Vec<usize>,
    up_counts: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("len", &self.len())
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

impl FiniteLattice {
    // -- construction -------------------------------------------------------

    /// Builds a lattice from an explicit order predicate, validating the
    /// partial-order and lattice axioms.
    #[allow(clippy::needless_range_loop)] // relation-matrix build reads best indexed
    pub fn from_leq<F>(labels: Vec<String>, leq: F) -> Result<FiniteLattice, LatticeError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut downs = vec![Bits::new(n); n];
        let mut ups = vec![Bits::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(j, i) {
                    downs[i].set(j);
                    ups[j].set(i);
                }
            }
        }
        let lat = Self::assemble(labels, downs, ups)?;
        lat.validate_order()?;
        lat.validate_lattice()?;
        Ok(lat)
    }

    /// Builds a lattice from cover pairs `i < j` on `0..n`, taking the
    /// reflexive-transitive closure. This is the checked path used by the
    /// abstract lattice text format.
    pub fn from_cover_pairs(
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<FiniteLattice, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut above = vec![Vec::new(); n];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(LatticeError::IndexOutOfRange(x, n));
                }
            }
            above[a].push(b);
        }
        // reachability by DFS from each element
        let mut ups = vec![Bits::new(n); n];
        let mut downs = vec![Bits::new(n); n];
        for (start, up) in ups.iter_mut().enumerate() {
            let mut stack = vec![start];
            let mut seen = Bits::new(n);
            seen.set(start);
            while let Some(x) = stack.pop() {
                for &y in &above[x] {
                    if y == start {
                        return Err(LatticeError::Cyclic(start));
                    }
                    if !seen.get(y) {
                        seen.set(y);
                        stack.push(y);
                    }
                }
            }
            *up = seen;
        }
        for (i, up) in ups.iter().enumerate() {
            for j in up.iter_ones() {
                downs[j].set(i);
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let lat = Self::assemble(labels, downs, ups)?;
        lat.validate_order()?;
        lat.validate_lattice()?;
        Ok(lat)
    }

    /// Shared tail of construction: bottom/top detection, transitive
    /// reduction, heights. The order must already be reflexive, transitive,
    /// and antisymmetric.
    fn assemble(
        labels: Vec<String>,
        downs: Vec<Bits>,
        ups: Vec<Bits>,
    ) -> Result<FiniteLattice, LatticeError> {
        let n = labels.len();
        let down_counts: Vec<usize> = downs.iter().map(Bits::count_ones).collect();
        let up_counts: Vec<usize> = ups.iter().map(Bits::count_ones).collect();
        let bottom = (0..n)
            .find(|&i| up_counts[i] == n)
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..n)
            .find(|&i| down_counts[i] == n)
            .ok_or(LatticeError::NoTop)?;

        // transitive reduction: j covers i iff j is minimal in ups(i) \ {i}
        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for i in 0..n {
            for j in ups[i].iter_ones() {
                if j == i {
                    continue;
                }
                // j covers i iff the only element of downs(j) strictly above i is j
                let between = downs[j].and(&ups[i]);
                if between.count_ones() == 2 {
                    covers_up[i].push(j);
                    covers_down[j].push(i);
                }
            }
        }
        for c in covers_up.iter_mut().chain(covers_down.iter_mut()) {
            c.sort_unstable();
        }
        Ok(FiniteLattice {
            labels,
            downs,
            ups,
            covers_up,
            covers_down,
            down_counts,
            up_counts,
            bottom,
            top,
        })
    }

    /// Fast path for callers that know covers and order are consistent
    /// (closed-set lattices, products, intervals). Debug builds re-validate
    /// small instances.
    fn assemble_trusted(
        labels: Vec<String>,
        downs: Vec<Bits>,
        ups: Vec<Bits>,
        covers_up: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> FiniteLattice {
        let n = labels.len();
        let mut covers_down = vec![Vec::new(); n];
        for (i, ups_i) in covers_up.iter().enumerate() {
            for &j in ups_i {
                covers_down[j].push(i);
            }
        }
        for c in covers_down.iter_mut() {
            c.sort_unstable();
        }
        let lat = FiniteLattice {
            down_counts: downs.iter().map(Bits::count_ones).collect(),
            up_counts: ups.iter().map(Bits::count_ones).collect(),
            labels,
            downs,
            ups,
            covers_up,
            covers_down,
            bottom,
            top,
        };
        #[cfg(debug_assertions)]
        if lat.len() <= TRUSTED_DEBUG_LIMIT {
            lat.validate_order().expect("trusted lattice order invalid");
        }
        lat
    }

    fn validate_order(&self) -> Result<(), LatticeError> {
        let n = self.len();
        for i in 0..n {
            if !self.downs[i].get(i) {
                return Err(LatticeError::Cyclic(i));
            }
            for j in self.downs[i].iter_ones() {
                if j != i && self.downs[j].get(i) {
                    return Err(LatticeError::Cyclic(i));
                }
                // transitivity: downs(j) ⊆ downs(i)
                for w in 0..self.downs[i].blocks.len() {
                    if self.downs[j].blocks[w] & !self.downs[i].blocks[w] != 0 {
                        return Err(LatticeError::Cyclic(j));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_lattice(&self) -> Result<(), LatticeError> {
        let n = self.len();
        if n > VALIDATE_LIMIT {
            return Ok(());
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.try_meet(i, j).is_none() {
                    return Err(LatticeError::MeetFails(i, j));
                }
                if self.try_join(i, j).is_none() {
                    return Err(LatticeError::JoinFails(i, j));
                }
            }
        }
        Ok(())
    }

    // -- basic queries -------------------------------------------------------

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructors reject zero elements
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.downs[j].get(i)
    }

    /// Upper covers of `i`, ascending.
    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    /// Lower covers of `i`, ascending.
    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.covers_down[i]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ups) in self.covers_up.iter().enumerate() {
            for &j in ups {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> &[usize] {
        &self.covers_up[self.bottom]
    }

    fn try_meet(&self, x: usize, y: usize) -> Option<usize> {
        let common = self.downs[x].and(&self.downs[y]);
        let size = common.count_ones();
        let m = common.iter_ones().find(|&k| self.down_counts[k] == size)?;
        Some(m)
    }

    fn try_join(&self, x: usize, y: usize) -> Option<usize> {
        let common = self.ups[x].and(&self.ups[y]);
        let size = common.count_ones();
        let m = common.iter_ones().find(|&k| self.up_counts[k] == size)?;
        Some(m)
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.try_meet(x, y).expect("meet must exist in a lattice")
    }

    /// Least upper bound.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.try_join(x, y).expect("join must exist in a lattice")
    }

    /// Height of each element: longest chain up from bottom.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| self.down_counts[i]);
        let mut h = vec![0usize; n];
        for &x in &order {
            for &c in &self.covers_down[x] {
                h[x] = h[x].max(h[c] + 1);
            }
        }
        h
    }

    fn depths(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| self.up_counts[i]);
        let mut d = vec![0usize; n];
        for &x in &order {
            for &c in &self.covers_up[x] {
                d[x] = d[x].max(d[c] + 1);
            }
        }
        d
    }

    /// Height of the whole lattice (= height of top).
    pub fn height(&self) -> usize {
        self.heights()[self.top]
    }

    /// Element counts per height, bottom rank first.
    pub fn rank_counts(&self) -> Vec<usize> {
        let hs = self.heights();
        let mut counts = vec![0usize; self.height() + 1];
        for &h in &hs {
            counts[h] += 1;
        }
        counts
    }

    // -- structural constructions -------------------------------------------

    /// The induced lattice on `{x : a ≤ x ≤ b}`.
    ///
    /// Elements keep their relative order (and labels); intervals of a
    /// lattice are order-convex, so the cover relation restricts.
    pub fn interval(&self, a: usize, b: usize) -> Result<FiniteLattice, LatticeError> {
        let n = self.len();
        for x in [a, b] {
            if x >= n {
                return Err(LatticeError::IndexOutOfRange(x, n));
            }
        }
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable(a, b));
        }
        let members_bits = self.ups[a].and(&self.downs[b]);
        let members: Vec<usize> = members_bits.iter_ones().collect();
        let mut index_of = vec![usize::MAX; n];
        for (new, &old) in members.iter().enumerate() {
            index_of[old] = new;
        }
        let m = members.len();
        let mut downs = vec![Bits::new(m); m];
        let mut ups = vec![Bits::new(m); m];
        let mut covers_up = vec![Vec::new(); m];
        for (new, &old) in members.iter().enumerate() {
            for j in self.downs[old].and(&members_bits).iter_ones() {
                downs[new].set(index_of[j]);
            }
            for j in self.ups[old].and(&members_bits).iter_ones() {
                ups[new].set(index_of[j]);
            }
            for &j in &self.covers_up[old] {
                if members_bits.get(j) {
                    covers_up[new].push(index_of[j]);
                }
            }
        }
        let labels = members
            .iter()
            .map(|&old| self.labels[old].clone())
            .collect();
        Ok(Self::assemble_trusted(
            labels,
            downs,
            ups,
            covers_up,
            index_of[a],
            index_of[b],
        ))
    }

    /// Direct product with the componentwise order; element `(i, j)` of the
    /// factors becomes index `i * other.len() + j`.
    pub fn direct_product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n1, n2) = (self.len(), other.len());
        let n = n1 * n2;
        let idx = |i: usize, j: usize| i * n2 + j;
        let mut downs = vec![Bits::new(n); n];
        let mut ups = vec![Bits::new(n); n];
        let mut covers_up = vec![Vec::new(); n];
        let mut labels = Vec::with_capacity(n);
        for i in 0..n1 {
            for j in 0..n2 {
                let k = idx(i, j);
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
                for p in self.downs[i].iter_ones() {
                    for q in other.downs[j].iter_ones() {
                        downs[k].set(idx(p, q));
                    }
                }
                for p in self.ups[i].iter_ones() {
                    for q in other.ups[j].iter_ones() {
                        ups[k].set(idx(p, q));
                    }
                }
                for &p in &self.covers_up[i] {
                    covers_up[k].push(idx(p, j));
                }
                for &q in &other.covers_up[j] {
                    covers_up[k].push(idx(i, q));
                }
                covers_up[k].sort_unstable();
            }
        }
        Self::assemble_trusted(
            labels,
            downs,
            ups,
            covers_up,
            idx(self.bottom, other.bottom),
            idx(self.top, other.top),
        )
    }

    // -- predicates -----------------------------------------------------------

    /// True iff the lattice is Boolean: with `A` the set of atoms,
    /// `|L| = 2^|A|` and `S ⊆ A ↦ join(S)` is a bijection onto `L`.
    pub fn is_boolean(&self) -> bool {
        let atoms = self.atoms();
        let k = atoms.len();
        if k >= usize::BITS as usize || self.len() != 1usize << k {
            return false;
        }
        // join of every atom subset, by peeling the lowest bit
        let mut joins = vec![self.bottom; 1 << k];
        let mut seen = vec![false; self.len()];
        seen[self.bottom] = true;
        for s in 1usize..1 << k {
            let low = s.trailing_zeros() as usize;
            let rest = joins[s & (s - 1)];
            let j = self.join(rest, atoms[low]);
            joins[s] = j;
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// True iff every interval `[i(x), x]`, with `i(x)` the meet of the
    /// elements covered by `x`, is a Boolean lattice.
    pub fn is_meet_distributive(&self) -> bool {
        for x in 0..self.len() {
            if x == self.bottom {
                continue;
            }
            let mut ix = self.covers_down[x][0];
            for &c in &self.covers_down[x][1..] {
                ix = self.meet(ix, c);
            }
            let interval = self.interval(ix, x).expect("i(x) ≤ x by construction");
            if !interval.is_boolean() {
                return false;
            }
        }
        true
    }

    /// True iff meet distributes over join on every triple.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.meet(x, y);
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(xy, self.meet(x, z));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The lattice of closed sets of a convex geometry, ordered by containment.
///
/// Element `i` is `g.closed_sets()[i]` (the canonical family order), so the
/// bottom is `∅` and the top is the full ground set. Meets are intersections
/// and joins are closures of unions, both realized through the order.
pub fn lattice_of_closed_sets(g: &ConvexGeometry) -> FiniteLattice {
    let sets = g.closed_sets();
    let n = sets.len();
    let mut downs = vec![Bits::new(n); n];
    let mut ups = vec![Bits::new(n); n];
    let mut covers_up = vec![Vec::new(); n];
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            if x.is_subset_of(y) {
                downs[j].set(i);
                ups[i].set(j);
                // in a convex geometry the lattice is graded by cardinality,
                // so covers are exactly the one-element containments
                if y.len() == x.len() + 1 {
                    covers_up[i].push(j);
                }
            }
        }
    }
    let labels = sets.iter().map(|&m| g.ground().render(m)).collect();
    FiniteLattice::assemble_trusted(labels, downs, ups, covers_up, 0, n - 1)
}

// ---------------------------------------------------------------------------
// canonical labeling
// ---------------------------------------------------------------------------

/// Relabeling-invariant identity of a lattice isomorphism class.
///
/// Two lattices get equal keys exactly when they are isomorphic. The key
/// encodes the canonical cover relation as `<n>:<i-j,...>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    size: usize,
    key: String,
}

impl CanonicalKey {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn as_str(&self) -> &str {
        &self.key
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Flattened 0/1 cover matrix under a labeling, packed so that comparing
/// block vectors lexicographically compares the matrix in reading order.
fn flatten_cover_matrix(l: &FiniteLattice, position: &[usize]) -> Vec<u64> {
    let n = l.len();
    let words = n.div_ceil(64);
    let mut mat = vec![0u64; n * words];
    for v in 0..n {
        let row = position[v];
        for &w in l.covers_up(v) {
            let col = position[w];
            mat[row * words + col / 64] |= 1 << (63 - col % 64);
        }
    }
    mat
}

struct CanonSearch<'a> {
    lattice: &'a FiniteLattice,
    best: Option<Vec<u64>>,
    best_position: Vec<usize>,
}

impl CanonSearch<'_> {
    /// Refines the coloring by iterated cover-multiset signatures until the
    /// partition stabilizes. Color ids are ranks of sorted signatures, so
    /// they are isomorphism-invariant.
    fn refine(&self, colors: &mut [usize]) {
        let n = self.lattice.len();
        loop {
            let mut sigs: Vec<(usize, Vec<usize>, Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut up: Vec<usize> = self
                        .lattice
                        .covers_up(v)
                        .iter()
                        .map(|&w| colors[w])
                        .collect();
                    let mut down: Vec<usize> = self
                        .lattice
                        .covers_down(v)
                        .iter()
                        .map(|&w| colors[w])
                        .collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    (colors[v], up, down, v)
                })
                .collect();
            let mut ranked = sigs.clone();
            ranked.sort_unstable();
            ranked.dedup_by(|a, b| (&a.0, &a.1, &a.2) == (&b.0, &b.1, &b.2));
            let count_before = colors
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            if ranked.len() == count_before {
                return;
            }
            for sig in sigs.drain(..) {
                let rank = ranked
                    .binary_search_by(|probe| {
                        (&probe.0, &probe.1, &probe.2).cmp(&(&sig.0, &sig.1, &sig.2))
                    })
                    .expect("every signature appears in the ranked list");
                colors[sig.3] = rank;
            }
        }
    }

    fn search(&mut self, colors: Vec<usize>) {
        let n = self.lattice.len();
        // find the least color class with at least two members
        let mut class_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, &c) in colors.iter().enumerate() {
            class_of[c].push(v);
        }
        let target = class_of.iter().position(|cls| cls.len() >= 2);
        match target {
            None => {
                // discrete: colors form a permutation
                let candidate = flatten_cover_matrix(self.lattice, &colors);
                let better = match &self.best {
                    None => true,
                    Some(best) => candidate < *best,
                };
                if better {
                    self.best = Some(candidate);
                    self.best_position = colors;
                }
            }
            Some(c) => {
                for &v in &class_of[c] {
                    // individualize v ahead of its classmates, then re-refine
                    let mut next: Vec<usize> = colors.iter().map(|&x| 2 * x + 1).collect();
                    next[v] -= 1;
                    let mut ranked: Vec<usize> = next.clone();
                    ranked.sort_unstable();
                    ranked.dedup();
                    for x in next.iter_mut() {
                        *x = ranked.binary_search(x).unwrap();
                    }
                    self.refine(&mut next);
                    self.search(next);
                }
            }
        }
    }
}

/// Computes the canonical key of a lattice by refinement-pruned exhaustive
/// search: elements are stratified by (height, depth, up-degree,
/// down-degree), the strata are refined by cover signatures, and remaining
/// symmetry is broken by trying every individualization and keeping the
/// lexicographically least flattened cover matrix.
pub fn canonical_key(l: &FiniteLattice) -> CanonicalKey {
    let n = l.len();
    let heights = l.heights();
    let depths = l.depths();
    let invariants: Vec<(usize, usize, usize, usize)> = (0..n)
        .map(|v| {
            (
                heights[v],
                depths[v],
                l.covers_up(v).len(),
                l.covers_down(v).len(),
            )
        })
        .collect();
    let mut ranked = invariants.clone();
    ranked.sort_unstable();
    ranked.dedup();
    let mut colors: Vec<usize> = invariants
        .iter()
        .map(|inv| ranked.binary_search(inv).unwrap())
        .collect();

    let mut search = CanonSearch {
        lattice: l,
        best: None,
        best_position: Vec::new(),
    };
    search.refine(&mut colors);
    search.search(colors);

    let position = search.best_position;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        for &w in l.covers_up(v) {
            pairs.push((position[v], position[w]));
        }
    }
    pairs.sort_unstable();
    let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    CanonicalKey {
        size: n,
        key: format!("{n}:{}", body.join(",")),
    }
}
