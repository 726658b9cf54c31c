//! Exact reduced simplicial homology over the rationals and the
//! Hochster-type Betti number oracle.
//!
//! For a pure square-free monomial ideal the graded Betti number at
//! `(i, j)` equals the sum of `dim H̃_{i-2}` of the complement complexes of
//! all induced subcollections on `j` vertices. This module computes those
//! homology dimensions exactly (integer arithmetic only, no floating point)
//! and serves as the second, fully independent oracle for the closed
//! formulas.
//!
//! Homological index `-1` is first class: the irrelevant complex `⟨∅⟩` has
//! `H̃_{-1} = K`, which is what makes the generator count `β_{1,t}` flow
//! through the same formula as every other entry.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::Count;
use crate::formulas::{BettiTable, Provenance};
use crate::path_complex::{complement, enumerate_induced, PathFamilySpec, SimplicialComplex};
use crate::{Caps, Error, Result};

/// Prime for the modular rank recheck.
const RECHECK_PRIME: u64 = 32003;

/// Entries are kept in `i64` during unit-pivot elimination while the largest
/// absolute value stays below this bound, which guarantees the next row
/// operation cannot overflow. Beyond it the remaining block is migrated to
/// arbitrary precision.
const UNIT_PIVOT_LIMIT: i64 = 2_000_000_000;

/// Downward closure of a facet list, grouped by dimension.
///
/// Faces are stored as bitmasks over the active vertices (the vertices that
/// actually appear in facets), so at most 64 active vertices are supported.
/// `faces_by_dim[L]` holds the faces of dimension `L - 1`, each level sorted
/// by mask value; level 0 is the single empty face. The void complex has no
/// levels at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainData {
    labels: Vec<usize>,
    faces_by_dim: Vec<Vec<u64>>,
}

impl ChainData {
    /// Active vertex labels; bit `b` of a face mask refers to `labels[b]`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Total number of faces, including the empty face.
    pub fn face_count(&self) -> usize {
        self.faces_by_dim.iter().map(Vec::len).sum()
    }

    /// Dimension of the complex; `None` for the void complex, `-1` for `⟨∅⟩`.
    pub fn top_dimension(&self) -> Option<i64> {
        if self.faces_by_dim.is_empty() {
            None
        } else {
            Some(self.faces_by_dim.len() as i64 - 2)
        }
    }

    /// Face masks of dimension `k`, sorted ascending.
    pub fn faces_of_dim(&self, k: i64) -> &[u64] {
        let level = k + 1;
        if level < 0 || level as usize >= self.faces_by_dim.len() {
            &[]
        } else {
            &self.faces_by_dim[level as usize]
        }
    }
}

/// Reduced homology dimensions over ℚ, indexed from `k = -1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomologyDims {
    dims: BTreeMap<i64, usize>,
}

impl HomologyDims {
    /// `dim H̃_k`; zero for any index outside the stored range.
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&k, &d)| (k, d))
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.values().all(|&d| d == 0)
    }
}

/// Downward closure of the facet list, including the empty face. The void
/// complex yields no faces at all.
///
/// Errors when the closure would exceed `caps.max_faces` or when the facets
/// span more than 64 distinct vertices.
pub fn all_faces(complex: &SimplicialComplex, caps: &Caps) -> Result<ChainData> {
    if complex.is_void() {
        return Ok(ChainData {
            labels: Vec::new(),
            faces_by_dim: Vec::new(),
        });
    }
    let labels = complex.vertex_union();
    if labels.len() > 64 {
        return Err(Error::VertexLimitExceeded {
            vertices: labels.len(),
        });
    }
    let bit_of = |v: usize| labels.binary_search(&v).expect("label in union") as u32;

    let mut facet_masks = Vec::with_capacity(complex.facet_count());
    for facet in complex.facets() {
        if (1u128 << facet.len()) > caps.max_faces as u128 {
            return Err(Error::FaceCapExceeded {
                cap: caps.max_faces,
            });
        }
        let mask = facet.iter().fold(0u64, |m, &v| m | 1u64 << bit_of(v));
        facet_masks.push(mask);
    }

    let mut seen: HashSet<u64> = HashSet::new();
    for &mask in &facet_masks {
        let mut sub = mask;
        loop {
            if seen.insert(sub) && seen.len() > caps.max_faces {
                return Err(Error::FaceCapExceeded {
                    cap: caps.max_faces,
                });
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }

    let top = facet_masks
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut faces_by_dim = vec![Vec::new(); top + 1];
    for mask in seen {
        faces_by_dim[mask.count_ones() as usize].push(mask);
    }
    for level in &mut faces_by_dim {
        level.sort_unstable();
    }
    Ok(ChainData {
        labels,
        faces_by_dim,
    })
}

/// Signed boundary matrix from level `level` faces down to level `level - 1`
/// faces, with vertex-order-induced signs. Row/column order follows the
/// sorted face lists.
fn boundary_matrix(chain: &ChainData, level: usize) -> Vec<Vec<i64>> {
    let row_faces = &chain.faces_by_dim[level - 1];
    let col_faces = &chain.faces_by_dim[level];
    let mut m = vec![vec![0i64; col_faces.len()]; row_faces.len()];
    for (c, &face) in col_faces.iter().enumerate() {
        let mut sign = 1i64;
        let mut bits = face;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let r = row_faces
                .binary_search(&(face ^ low))
                .expect("closure is closed under subsets");
            m[r][c] = sign;
            sign = -sign;
            bits ^= low;
        }
    }
    m
}

/// Exact rank over ℚ of an integer matrix.
///
/// Eliminates with ±1 pivots while any exist (integer-preserving row
/// operations, no growth control needed at these entry sizes), then
/// finishes any residual block with fraction-free Bareiss elimination in
/// arbitrary precision. Never touches floating point.
fn rank_exact(mut a: Vec<Vec<i64>>) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut row_active = vec![true; rows];
    let mut col_active = vec![true; cols];
    let mut rank = 0usize;
    let mut max_abs: i64 = a
        .iter()
        .flatten()
        .map(|&x| x.abs())
        .max()
        .unwrap_or(0);

    'unit: while max_abs < UNIT_PIVOT_LIMIT {
        let mut progressed = false;
        for j in 0..cols {
            if !col_active[j] {
                continue;
            }
            let Some(pi) =
                (0..rows).find(|&i| row_active[i] && (a[i][j] == 1 || a[i][j] == -1))
            else {
                continue;
            };
            let pivot_sign = a[pi][j];
            for i in 0..rows {
                if i == pi || !row_active[i] || a[i][j] == 0 {
                    continue;
                }
                let factor = a[i][j] * pivot_sign;
                for k in 0..cols {
                    if !col_active[k] {
                        continue;
                    }
                    a[i][k] -= factor * a[pi][k];
                    max_abs = max_abs.max(a[i][k].abs());
                }
            }
            row_active[pi] = false;
            col_active[j] = false;
            rank += 1;
            progressed = true;
            if max_abs >= UNIT_PIVOT_LIMIT {
                break 'unit;
            }
        }
        if !progressed {
            break;
        }
    }

    // Residual block: either no ±1 pivots remain or entries grew large.
    let live_rows: Vec<usize> = (0..rows).filter(|&i| row_active[i]).collect();
    let live_cols: Vec<usize> = (0..cols).filter(|&j| col_active[j]).collect();
    let residual: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&i| live_cols.iter().map(|&j| BigInt::from(a[i][j])).collect())
        .collect();
    rank + bareiss_rank(residual)
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    while rank < rows.min(cols) {
        let Some((pi, pj)) = (rank..rows)
            .flat_map(|i| (rank..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(rank, pi);
        if pj != rank {
            for row in a.iter_mut() {
                row.swap(rank, pj);
            }
        }
        for i in rank + 1..rows {
            for j in rank + 1..cols {
                let num = &a[i][j] * &a[rank][rank] - &a[i][rank] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][rank] = BigInt::zero();
        }
        prev = a[rank][rank].clone();
        rank += 1;
    }
    rank
}

/// Rank over GF(p) by straightforward elimination.
fn rank_mod_p(a: &[Vec<i64>], p: u64) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 || cols == 0 {
        return 0;
    }
    let pi = p as i64;
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|&x| (x.rem_euclid(pi)) as u64).collect())
        .collect();
    let mut rank = 0usize;
    for j in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| m[i][j] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_pow(m[rank][j], p - 2, p);
        for x in m[rank][j..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[j] != 0 {
                let f = row[j];
                for (x, &pv) in row[j..].iter_mut().zip(&pivot_row[j..]) {
                    *x = (*x + (p - f) * pv) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn homology_impl(complex: &SimplicialComplex, caps: &Caps, modular: bool) -> Result<HomologyDims> {
    let chain = all_faces(complex, caps)?;
    let levels = chain.faces_by_dim.len();
    if levels == 0 {
        return Ok(HomologyDims::default());
    }
    // ranks[level] is the rank of the boundary map out of `level`; nothing
    // maps out of level 0 and nothing maps into the top from above.
    let mut ranks = vec![0usize];
    for level in 1..levels {
        let m = boundary_matrix(&chain, level);
        if modular {
            let modular_rank = rank_mod_p(&m, RECHECK_PRIME);
            let exact = rank_exact(m);
            if modular_rank != exact {
                return Err(Error::RankRecheckMismatch {
                    exact,
                    modular: modular_rank,
                    prime: RECHECK_PRIME,
                });
            }
            ranks.push(exact);
        } else {
            ranks.push(rank_exact(m));
        }
    }
    ranks.push(0);

    let mut dims = BTreeMap::new();
    let mut chi_faces = 0i64;
    let mut chi_homology = 0i64;
    for level in 0..levels {
        let k = level as i64 - 1;
        let f = chain.faces_by_dim[level].len() as i64;
        let dim = f - ranks[level] as i64 - ranks[level + 1] as i64;
        if dim < 0 {
            return Err(Error::HomologyInvariantViolated {
                detail: format!("negative homology dimension {dim} at k={k}"),
            });
        }
        let parity = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        chi_faces += parity * f;
        chi_homology += parity * dim;
        dims.insert(k, dim as usize);
    }
    if chi_faces != chi_homology {
        return Err(Error::HomologyInvariantViolated {
            detail: format!(
                "Euler identity failed: chi(faces)={chi_faces}, chi(homology)={chi_homology}"
            ),
        });
    }
    Ok(HomologyDims { dims })
}

/// Reduced homology dimensions over ℚ via exact boundary ranks.
///
/// `⟨∅⟩` yields `H̃_{-1} = 1` and nothing else; the void complex is trivial
/// in every index.
pub fn reduced_homology(complex: &SimplicialComplex, caps: &Caps) -> Result<HomologyDims> {
    homology_impl(complex, caps, false)
}

/// Like [`reduced_homology`], but every boundary rank is recomputed over
/// GF(32003) and any disagreement with the exact rank is a hard error.
/// Torsion cannot change dimensions over ℚ; this guards implementation
/// bugs, not arithmetic.
pub fn reduced_homology_checked(complex: &SimplicialComplex, caps: &Caps) -> Result<HomologyDims> {
    homology_impl(complex, caps, true)
}

fn hochster_cells(
    sub: &crate::path_complex::InducedSubcollection,
    caps: &Caps,
    modular: bool,
) -> Result<Vec<((usize, usize), usize)>> {
    if sub.is_empty() {
        // The empty subcollection witnesses the rank-one degree-zero piece
        // of the resolution; its complement is void and carries no reduced
        // homology, so the contribution is added here by convention.
        return Ok(vec![((0, 0), 1)]);
    }
    let j = sub.vertex_count();
    let comp = complement(&sub.to_complex(), sub.vertices())?;
    let dims = homology_impl(&comp, caps, modular)?;
    Ok(dims
        .iter()
        .filter(|&(_, d)| d > 0)
        .map(|(k, d)| (((k + 2) as usize, j), d))
        .collect())
}

/// Brute-force Betti table through the homology route: for every induced
/// subcollection `Γ`, `dim H̃_{i-2}` of the complement of `Γ` inside its own
/// vertex set contributes to the entry `(i, |Vert(Γ)|)`. Valid for every
/// degree including `j = n`.
///
/// Set `modular` to recheck every rank over GF(32003).
pub fn hochster_table(spec: &PathFamilySpec, caps: &Caps, modular: bool) -> Result<BettiTable> {
    let subs: Vec<_> = enumerate_induced(spec, caps)?.collect();
    let per_sub: Result<Vec<_>> = subs
        .par_iter()
        .map(|sub| hochster_cells(sub, caps, modular))
        .collect();
    let mut table = BettiTable::new(*spec, Provenance::HochsterOracle);
    for cells in per_sub? {
        for ((i, j), d) in cells {
            table.add(i, j, Count::from(d));
        }
    }
    Ok(table)
}

/// Single Betti number through the homology oracle.
pub fn hochster_betti(spec: &PathFamilySpec, i: usize, j: usize, caps: &Caps) -> Result<Count> {
    Ok(hochster_table(spec, caps, false)?.get(i, j))
}
