//! Path complexes of line graphs and cycles, induced subcollections, runs,
//! and the eligible-subcollection counting oracle.
//!
//! The path complex `Δ_t(G)` is the facet complex of the path ideal
//! `I_t(G)`: its facets are the vertex sets of the paths on `t` vertices.
//! With the standard labeling the facets of `Δ_t(C_n)` are
//! `F_i = {x_i, ..., x_{i+t-1}} mod n`, and those of `Δ_t(L_n)` are the
//! same sets without wraparound.
//!
//! An induced subcollection keeps exactly the facets contained in some
//! vertex subset. Every proper induced subcollection of `Δ_t(C_n)` is a
//! disjoint union of runs (maximal blocks of consecutively labeled facets),
//! and the graded Betti numbers of the ambient path ideal count the induced
//! subcollections whose run lengths are all `1` or `2` modulo `t+1` with a
//! prescribed profile. This module enumerates and counts those directly,
//! serving as the first of two oracles for the closed formulas.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Count;
use crate::formulas::{BettiTable, Provenance};
use crate::{Caps, Error, Result};

/// Which graph family a path complex is built from.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Line,
    Cycle,
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphKind::Line => write!(f, "line"),
            GraphKind::Cycle => write!(f, "cycle"),
        }
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(GraphKind::Line),
            "cycle" => Ok(GraphKind::Cycle),
            other => Err(Error::InvalidSpec(format!(
                "unknown graph kind {other:?} (expected \"line\" or \"cycle\")"
            ))),
        }
    }
}

/// A validated `(kind, n, t)` triple naming `Δ_t(L_n)` or `Δ_t(C_n)`.
///
/// Requires `2 <= t <= n`; cycles additionally require `t < n` so that the
/// standard facet labeling is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathFamilySpec {
    kind: GraphKind,
    n: usize,
    t: usize,
}

impl PathFamilySpec {
    pub fn new(kind: GraphKind, n: usize, t: usize) -> Result<Self> {
        if n < 2 || t < 2 || t > n {
            return Err(Error::InvalidSpec(format!(
                "{kind} requires 2 <= t <= n, got n={n}, t={t}"
            )));
        }
        if kind == GraphKind::Cycle && t >= n {
            return Err(Error::InvalidSpec(format!(
                "cycle requires t < n for the standard labeling, got n={n}, t={t}"
            )));
        }
        Ok(PathFamilySpec { kind, n, t })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of facets of the path complex: `n - t + 1` for lines, `n` for
    /// cycles.
    pub fn facet_count(&self) -> usize {
        match self.kind {
            GraphKind::Line => self.n - self.t + 1,
            GraphKind::Cycle => self.n,
        }
    }

    /// Vertex labels (1-based, ascending) of the facet with 0-based index
    /// `idx`, i.e. of `F_{idx+1}` in the standard labeling. Wraparound maps
    /// label 0 back to `n`.
    pub fn facet_vertices(&self, idx: usize) -> Vec<usize> {
        debug_assert!(idx < self.facet_count());
        let mut vs: Vec<usize> = (0..self.t)
            .map(|o| match self.kind {
                GraphKind::Line => idx + o + 1,
                GraphKind::Cycle => (idx + o) % self.n + 1,
            })
            .collect();
        vs.sort_unstable();
        vs
    }
}

impl std::fmt::Display for PathFamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} n={} t={}", self.kind, self.n, self.t)
    }
}

/// A simplicial complex given by its facet list.
///
/// Vertex labels are 1-based and bounded by the ambient count `n`. The facet
/// list is an antichain: no facet contains another and duplicates are
/// rejected. An empty facet is only allowed as the single facet of the
/// irrelevant complex `⟨∅⟩`; an empty facet *list* is the void complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // Both sorted ascending.
    let mut ib = 0;
    'outer: for &x in a {
        while ib < b.len() {
            if b[ib] == x {
                ib += 1;
                continue 'outer;
            }
            if b[ib] > x {
                return false;
            }
            ib += 1;
        }
        return false;
    }
    true
}

impl SimplicialComplex {
    /// Builds a complex after validating the facet antichain invariants.
    pub fn new(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut norm: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            let set: BTreeSet<usize> = f.into_iter().collect();
            if let Some(&v) = set.iter().next_back() {
                if v > n || *set.iter().next().unwrap() == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "facet {set:?} has labels outside 1..={n}"
                    )));
                }
            }
            norm.push(set.into_iter().collect());
        }
        if norm.iter().any(|f| f.is_empty()) && norm.len() > 1 {
            return Err(Error::InvalidSpec(
                "empty facet is only allowed in the single-facet complex".into(),
            ));
        }
        for (i, f) in norm.iter().enumerate() {
            for (k, g) in norm.iter().enumerate() {
                if i != k && is_subset(f, g) {
                    return Err(Error::InvalidSpec(format!(
                        "facet {f:?} is contained in facet {g:?}"
                    )));
                }
            }
        }
        Ok(SimplicialComplex { n, facets: norm })
    }

    /// Builds a complex from arbitrary candidate sets by deduplicating and
    /// keeping only the inclusion-maximal ones.
    pub fn from_candidate_sets(n: usize, sets: Vec<Vec<usize>>) -> Self {
        let mut norm: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|f| {
                let set: BTreeSet<usize> = f.into_iter().collect();
                set.into_iter().collect()
            })
            .collect();
        norm.sort();
        norm.dedup();
        let maximal: Vec<Vec<usize>> = norm
            .iter()
            .filter(|f| !norm.iter().any(|g| g != *f && is_subset(f, g)))
            .cloned()
            .collect();
        SimplicialComplex { n, facets: maximal }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// True for the void complex (no facets at all, not even the empty one).
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Sorted union of all facet vertices.
    pub fn vertex_union(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub(crate) fn from_facets_unchecked(n: usize, facets: Vec<Vec<usize>>) -> Self {
        SimplicialComplex { n, facets }
    }
}

/// Constructs `Δ_t(L_n)` or `Δ_t(C_n)` with the standard facet labeling.
pub fn build_path_complex(spec: &PathFamilySpec) -> SimplicialComplex {
    let facets = (0..spec.facet_count())
        .map(|i| spec.facet_vertices(i))
        .collect();
    SimplicialComplex::from_facets_unchecked(spec.n, facets)
}

/// Complement complex within `ground`: facets are `ground \ F` over the
/// facets `F`, deduplicated and reduced to the inclusion-maximal sets.
///
/// Errors if some facet is not contained in `ground`. If every complement
/// is empty the result is the irrelevant complex `⟨∅⟩`; the complement of
/// the void complex is void.
pub fn complement(complex: &SimplicialComplex, ground: &[usize]) -> Result<SimplicialComplex> {
    let ground_set: BTreeSet<usize> = ground.iter().copied().collect();
    let mut sets = Vec::with_capacity(complex.facet_count());
    for facet in complex.facets() {
        if !facet.iter().all(|v| ground_set.contains(v)) {
            return Err(Error::FacetNotInGround {
                facet: facet.clone(),
            });
        }
        let diff: Vec<usize> = ground_set
            .iter()
            .copied()
            .filter(|v| facet.binary_search(v).is_err())
            .collect();
        sets.push(diff);
    }
    Ok(SimplicialComplex::from_candidate_sets(complex.n, sets))
}

/// Fixed-width bitset over vertex labels, used for inducedness checks.
#[derive(Clone, PartialEq, Eq)]
struct VertexBits {
    words: Vec<u64>,
}

impl VertexBits {
    fn empty(n: usize) -> Self {
        VertexBits {
            words: vec![0; n / 64 + 1],
        }
    }

    fn insert(&mut self, label: usize) {
        // 1-based labels map to bit label-1.
        let b = label - 1;
        self.words[b / 64] |= 1 << (b % 64);
    }

    fn union_with(&mut self, other: &VertexBits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn is_subset_of(&self, other: &VertexBits) -> bool {
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
}

/// An induced subcollection of a path complex, closed under the rule that
/// every ambient facet contained in the vertex union of the selected facets
/// is itself selected. The vertex set is exactly that union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubcollection {
    ambient: PathFamilySpec,
    facet_indices: Vec<usize>,
    vertices: Vec<usize>,
}

impl InducedSubcollection {
    pub fn ambient(&self) -> &PathFamilySpec {
        &self.ambient
    }

    /// 0-based indices of the selected facets, ascending; index `i` is
    /// `F_{i+1}` in the standard labeling.
    pub fn facet_indices(&self) -> &[usize] {
        &self.facet_indices
    }

    /// Sorted union of the selected facets' vertex labels.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn facet_count(&self) -> usize {
        self.facet_indices.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facet_indices.is_empty()
    }

    /// Materializes the subcollection as a complex in the ambient labels.
    /// The empty subcollection becomes the void complex.
    pub fn to_complex(&self) -> SimplicialComplex {
        let facets = self
            .facet_indices
            .iter()
            .map(|&i| self.ambient.facet_vertices(i))
            .collect();
        SimplicialComplex::from_facets_unchecked(self.ambient.n, facets)
    }
}

/// Streams every induced subcollection of `Δ_t` exactly once, in increasing
/// order of the facet-index bitmask (so the empty subcollection comes
/// first). Errors when the ambient facet count exceeds `caps.max_facets`.
pub fn enumerate_induced(spec: &PathFamilySpec, caps: &Caps) -> Result<InducedEnumerator> {
    let facets = spec.facet_count();
    let cap = caps.max_facets.min(63);
    if facets > cap {
        return Err(Error::FacetCapExceeded { facets, cap });
    }
    let facet_bits: Vec<VertexBits> = (0..facets)
        .map(|i| {
            let mut bits = VertexBits::empty(spec.n);
            for v in spec.facet_vertices(i) {
                bits.insert(v);
            }
            bits
        })
        .collect();
    Ok(InducedEnumerator {
        spec: *spec,
        facet_bits,
        union: VertexBits::empty(spec.n),
        next_mask: 0,
        end_mask: 1u64 << facets,
    })
}

pub struct InducedEnumerator {
    spec: PathFamilySpec,
    facet_bits: Vec<VertexBits>,
    union: VertexBits,
    next_mask: u64,
    end_mask: u64,
}

impl InducedEnumerator {
    fn is_induced(&mut self, mask: u64) -> bool {
        self.union.clear();
        for (i, bits) in self.facet_bits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                self.union.union_with(bits);
            }
        }
        for (i, bits) in self.facet_bits.iter().enumerate() {
            if mask >> i & 1 == 0 && bits.is_subset_of(&self.union) {
                return false;
            }
        }
        true
    }

    fn materialize(&self, mask: u64) -> InducedSubcollection {
        let facet_indices: Vec<usize> = (0..self.facet_bits.len())
            .filter(|i| mask >> i & 1 == 1)
            .collect();
        let vertices: BTreeSet<usize> = facet_indices
            .iter()
            .flat_map(|&i| self.spec.facet_vertices(i))
            .collect();
        InducedSubcollection {
            ambient: self.spec,
            facet_indices,
            vertices: vertices.into_iter().collect(),
        }
    }
}

impl Iterator for InducedEnumerator {
    type Item = InducedSubcollection;

    fn next(&mut self) -> Option<InducedSubcollection> {
        while self.next_mask < self.end_mask {
            let mask = self.next_mask;
            self.next_mask += 1;
            if self.is_induced(mask) {
                return Some(self.materialize(mask));
            }
        }
        None
    }
}

/// A maximal block of consecutively labeled facets inside an induced
/// subcollection. `start` is the 0-based index of the block's first facet;
/// for cycles the block may wrap around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub len: usize,
}

/// Run decomposition of an induced subcollection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    runs: Vec<Run>,
}

impl RunDecomposition {
    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.runs.iter().map(|r| r.len).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }
}

/// Splits the selected facet indices into maximal blocks of consecutive
/// labels, cyclically consecutive for cycles. The empty subcollection gives
/// the empty decomposition.
///
/// For a proper induced subcollection of a cycle the blocks are genuine
/// runs: pairwise vertex-disjoint, a block of `p` facets spanning exactly
/// `p + t - 1` vertices. The full cycle subcollection degenerates to a
/// single wrapped block of all `n` facets, which is not a run and is never
/// eligible.
pub fn decompose_runs(sub: &InducedSubcollection) -> RunDecomposition {
    let f = sub.ambient.facet_count();
    let indices = &sub.facet_indices;
    if indices.is_empty() {
        return RunDecomposition { runs: Vec::new() };
    }
    let mut selected = vec![false; f];
    for &i in indices {
        selected[i] = true;
    }
    let runs = match sub.ambient.kind {
        GraphKind::Line => linear_blocks(&selected),
        GraphKind::Cycle => {
            match selected.iter().position(|&s| !s) {
                // All facets selected: one degenerate wrapped block.
                None => vec![Run { start: 0, len: f }],
                Some(gap) => {
                    // Scan one full cycle starting just past a gap so no
                    // block is split by the wraparound seam.
                    let mut runs = Vec::new();
                    let mut current: Option<Run> = None;
                    for off in 1..=f {
                        let idx = (gap + off) % f;
                        if selected[idx] {
                            match current.as_mut() {
                                Some(run) => run.len += 1,
                                None => current = Some(Run { start: idx, len: 1 }),
                            }
                        } else if let Some(run) = current.take() {
                            runs.push(run);
                        }
                    }
                    if let Some(run) = current.take() {
                        runs.push(run);
                    }
                    runs.sort_by_key(|r| r.start);
                    runs
                }
            }
        }
    };
    RunDecomposition { runs }
}

fn linear_blocks(selected: &[bool]) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut current: Option<Run> = None;
    for (idx, &sel) in selected.iter().enumerate() {
        if sel {
            match current.as_mut() {
                Some(run) => run.len += 1,
                None => current = Some(Run { start: idx, len: 1 }),
            }
        } else if let Some(run) = current.take() {
            runs.push(run);
        }
    }
    if let Some(run) = current.take() {
        runs.push(run);
    }
    runs
}

/// The `(α, β, P, Q, p_k, q_k)` decomposition of run lengths that makes a
/// subcollection eligible, together with the unique bigraded position
/// `(i, j)` it witnesses.
///
/// Each run length must be `(t+1)p + 1` or `(t+1)q + 2`; then
/// `i = 2(P+Q) + 2β + α` and `j = (t+1)(P+Q) + t(α+β) + β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityProfile {
    pub alpha: usize,
    pub beta: usize,
    pub p_list: Vec<usize>,
    pub q_list: Vec<usize>,
    pub p_sum: usize,
    pub q_sum: usize,
    pub i: usize,
    pub j: usize,
}

/// Classifies run lengths modulo `t + 1`; absent when some length is
/// neither `1` nor `2 (mod t+1)`, in which case the subcollection is not
/// eligible for any `(i, j)`. The empty decomposition yields the degenerate
/// profile at `(0, 0)`.
pub fn eligibility_profile(decomp: &RunDecomposition, t: usize) -> Option<EligibilityProfile> {
    debug_assert!(t >= 2);
    let modulus = t + 1;
    let mut p_list = Vec::new();
    let mut q_list = Vec::new();
    for run in decomp.runs() {
        match run.len % modulus {
            1 => p_list.push((run.len - 1) / modulus),
            2 => q_list.push((run.len - 2) / modulus),
            _ => return None,
        }
    }
    let alpha = p_list.len();
    let beta = q_list.len();
    let p_sum: usize = p_list.iter().sum();
    let q_sum: usize = q_list.iter().sum();
    let pq = p_sum + q_sum;
    Some(EligibilityProfile {
        alpha,
        beta,
        p_list,
        q_list,
        p_sum,
        q_sum,
        i: 2 * pq + 2 * beta + alpha,
        j: modulus * pq + t * (alpha + beta) + beta,
    })
}

/// Brute-force Betti table: counts, for every `(i, j)` with `j < n`, the
/// `(i, j)`-eligible induced subcollections of the ambient path complex.
///
/// The full cycle subcollection is skipped; it is not a disjoint union of
/// runs and is never eligible. Profiles whose degree reaches `j >= n` fall
/// outside the counting theorem's range and are dropped.
pub fn eligible_table(spec: &PathFamilySpec, caps: &Caps) -> Result<BettiTable> {
    let n = spec.n;
    let full = spec.facet_count();
    let mut table = BettiTable::new(*spec, Provenance::EligibleOracle);
    for sub in enumerate_induced(spec, caps)? {
        if spec.kind == GraphKind::Cycle && sub.facet_count() == full {
            continue;
        }
        let decomp = decompose_runs(&sub);
        if let Some(profile) = eligibility_profile(&decomp, spec.t) {
            if profile.j < n {
                table.add(profile.i, profile.j, Count::one());
            }
        }
    }
    Ok(table)
}

/// Number of `(i, j)`-eligible induced subcollections; the first oracle for
/// the graded Betti number at `(i, j)`. Requires `j < n`.
pub fn count_eligible(spec: &PathFamilySpec, i: usize, j: usize, caps: &Caps) -> Result<Count> {
    if j >= spec.n {
        return Err(Error::DegreeOutOfRange { j, n: spec.n });
    }
    Ok(eligible_table(spec, caps)?.get(i, j))
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn complement_is_an_involution_on_proper_antichains(
            n in 2usize..=8,
            raw in prop::collection::vec(
                prop::collection::btree_set(1usize..=8, 1..=7),
                1..=5,
            ),
        ) {
            let sets: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&v| v <= n).collect::<Vec<_>>())
                .filter(|s: &Vec<usize>| !s.is_empty() && s.len() < n)
                .collect();
            prop_assume!(!sets.is_empty());
            let gamma = SimplicialComplex::from_candidate_sets(n, sets);
            prop_assume!(!gamma.is_void());
            let ground: Vec<usize> = (1..=n).collect();
            let once = complement(&gamma, &ground).unwrap();
            let twice = complement(&once, &ground).unwrap();
            prop_assert_eq!(twice.facets(), gamma.facets());
        }
    }
}
