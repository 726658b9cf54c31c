//! Exact graded Betti numbers of path ideals of line graphs and cycles.
//!
//! A path ideal `I_t(G)` is generated by the monomials `x_{i_1}···x_{i_t}`
//! over all paths on `t` vertices of a graph `G`. For `G` a line graph `L_n`
//! or a cycle `C_n` every ℕ-graded Betti number of `R/I_t(G)` is given by a
//! closed binomial formula. This crate computes those formulas exactly
//! (arbitrary precision) and verifies them against two independent
//! brute-force oracles:
//!
//! * [`path_complex`] enumerates induced subcollections of the path complex
//!   `Δ_t(G)`, decomposes them into runs, and counts the eligible
//!   subcollections that witness each Betti number;
//! * [`homology`] computes exact reduced simplicial homology over ℚ and sums
//!   it into Betti numbers through a Hochster-type formula.
//!
//! [`formulas`] holds the closed forms together with projective dimension and
//! regularity, [`verify`] is the three-way cross-check engine, and [`cli`]
//! exposes everything as the `pathbetti` command-line tool.
//!
//! The two oracles share no arithmetic with the formula path beyond plain
//! set and matrix machinery, so agreement between all three routes is a
//! meaningful check rather than a tautology.

pub mod cli;
pub mod combinatorics;
pub mod formulas;
pub mod homology;
pub mod path_complex;
pub mod verify;

pub use combinatorics::{binomial, cycle_run_count, line_run_count, Count};
pub use formulas::{
    betti, betti_cycle, betti_line, betti_table, nonzero_predicate, pd_line, pd_reg_from_table,
    reg_line, BettiTable, CyclotomicSplit, Provenance, ShapeParams,
};
pub use homology::{
    all_faces, hochster_betti, hochster_table, reduced_homology, reduced_homology_checked,
    ChainData, HomologyDims,
};
pub use path_complex::{
    build_path_complex, complement, count_eligible, decompose_runs, eligibility_profile,
    eligible_table, enumerate_induced, EligibilityProfile, GraphKind, InducedSubcollection,
    PathFamilySpec, Run, RunDecomposition, SimplicialComplex,
};
pub use verify::{
    run_sweep, verify_instance, InstanceReport, InstanceStatus, MismatchDetail, OracleSelection,
    SweepConfig, VerificationReport,
};

/// Resource limits for the brute-force oracles.
///
/// `max_facets` bounds the ambient facet count before subcollection
/// enumeration (the search space is `2^facets`); `max_faces` bounds the
/// number of faces materialized for a single homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_facets: usize,
    pub max_faces: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_facets: 24,
            max_faces: 1 << 22,
        }
    }
}

/// Errors for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Parameters outside the domain of the requested family or operation.
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    /// The ambient complex has too many facets for subcollection enumeration.
    #[error("enumeration cap exceeded: {facets} facets, cap is {cap}")]
    FacetCapExceeded { facets: usize, cap: usize },

    /// Downward closure of a facet list would exceed the face cap.
    #[error("face cap exceeded: complex closure has more than {cap} faces")]
    FaceCapExceeded { cap: usize },

    /// Homology is computed over bitmask faces and supports at most 64
    /// distinct vertices appearing in facets.
    #[error("complex spans {vertices} vertices; homology supports at most 64")]
    VertexLimitExceeded { vertices: usize },

    /// A facet was not contained in the ground set handed to `complement`.
    #[error("facet {{{facet:?}}} is not contained in the ground set")]
    FacetNotInGround { facet: Vec<usize> },

    /// Eligible-subcollection counting is only defined for degrees below the
    /// ambient vertex count.
    #[error("degree j={j} out of range for eligible counting (requires j < n = {n})")]
    DegreeOutOfRange { j: usize, n: usize },

    /// Exact rank and the GF(32003) recheck disagreed; this indicates an
    /// implementation bug and is always a hard failure.
    #[error("rank recheck mismatch: exact rank {exact} != GF({prime}) rank {modular}")]
    RankRecheckMismatch {
        exact: usize,
        modular: usize,
        prime: u64,
    },

    /// A homology bookkeeping invariant failed (reduced Euler identity, or a
    /// negative dimension from inconsistent boundary ranks). Always a hard
    /// failure: it indicates an implementation bug, never bad input.
    #[error("homology invariant violated: {detail}")]
    HomologyInvariantViolated { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
