//! Three-way cross-check engine: closed formulas against the
//! eligible-subcollection count and the Hochster-type homology sum.
//!
//! An instance is one `(kind, n, t)` family. For each instance the engine
//! compares all three Betti tables cell by cell over the grid
//! `0 <= i <= n`, `i <= j <= n` (the eligible oracle only below `j = n`,
//! per its counting theorem), checks that [`nonzero_predicate`] matches the
//! value support exactly, and for lines checks the closed projective
//! dimension and regularity against the table maxima. Oracles never consult
//! formula code paths, so agreement is evidence, not circularity.
//!
//! Instances whose oracles exceed the configured caps are reported as
//! skipped, never as passed or failed; sweeps stay honest about coverage.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::Count;
use crate::formulas::{
    self, betti_table, nonzero_predicate, pd_line, pd_reg_from_table, reg_line, BettiTable,
};
use crate::homology::hochster_table;
use crate::path_complex::{eligible_table, GraphKind, PathFamilySpec};
use crate::{Caps, Error};

/// Which oracles to run against the formula table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleSelection {
    pub eligible: bool,
    pub hochster: bool,
}

impl Default for OracleSelection {
    fn default() -> Self {
        OracleSelection {
            eligible: true,
            hochster: true,
        }
    }
}

/// A sweep over `(kind, t, n)` instances with `t_min <= t <= t_max` and
/// `n_min <= n <= n_max`, clamped per kind so every generated spec is valid
/// (`n >= t` for lines, `n > t` for cycles).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub kinds: Vec<GraphKind>,
    pub t_min: usize,
    pub t_max: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub oracles: OracleSelection,
    #[serde(skip)]
    pub caps: Caps,
    pub modular_check: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            kinds: vec![GraphKind::Line, GraphKind::Cycle],
            t_min: 2,
            t_max: 4,
            n_min: 2,
            n_max: 12,
            oracles: OracleSelection::default(),
            caps: Caps::default(),
            modular_check: true,
        }
    }
}

impl SweepConfig {
    /// The instance list in deterministic iteration order: kind, then t,
    /// then n.
    pub fn instances(&self) -> Vec<PathFamilySpec> {
        let mut specs = Vec::new();
        for &kind in &self.kinds {
            for t in self.t_min..=self.t_max {
                let lo = match kind {
                    GraphKind::Line => self.n_min.max(t),
                    GraphKind::Cycle => self.n_min.max(t + 1),
                };
                for n in lo..=self.n_max {
                    specs.push(PathFamilySpec::new(kind, n, t).expect("clamped range is valid"));
                }
            }
        }
        specs
    }
}

/// The first divergence found in an instance, pinned to its minimal cell in
/// `(i, j)` iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MismatchDetail {
    /// The three value routes disagreed at a cell.
    Cell {
        i: usize,
        j: usize,
        formula: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        eligible: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        hochster: Option<String>,
    },
    /// The support predicate disagreed with the formula value.
    Predicate {
        i: usize,
        j: usize,
        value: String,
        predicate: bool,
    },
    /// Closed-form pd/reg disagreed with the table maxima (lines only).
    PdReg {
        closed_pd: usize,
        closed_reg: usize,
        table_pd: usize,
        table_reg: usize,
    },
    /// An internal consistency check failed (exact vs GF(32003) ranks,
    /// Euler identity, or an out-of-grid oracle entry).
    Internal { message: String },
}

impl std::fmt::Display for MismatchDetail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MismatchDetail::Cell {
                i,
                j,
                formula,
                eligible,
                hochster,
            } => {
                write!(f, "at (i={i}, j={j}): formula={formula}")?;
                if let Some(e) = eligible {
                    write!(f, " eligible={e}")?;
                }
                if let Some(h) = hochster {
                    write!(f, " hochster={h}")?;
                }
                Ok(())
            }
            MismatchDetail::Predicate {
                i,
                j,
                value,
                predicate,
            } => write!(
                f,
                "at (i={i}, j={j}): value={value} but nonzero_predicate={predicate}"
            ),
            MismatchDetail::PdReg {
                closed_pd,
                closed_reg,
                table_pd,
                table_reg,
            } => write!(
                f,
                "closed pd/reg=({closed_pd}, {closed_reg}) but table gives ({table_pd}, {table_reg})"
            ),
            MismatchDetail::Internal { message } => write!(f, "internal check failed: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum InstanceStatus {
    Pass,
    Fail { mismatch: MismatchDetail },
    Skipped { reason: String },
}

/// Per-instance verification result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub kind: GraphKind,
    pub n: usize,
    pub t: usize,
    #[serde(flatten)]
    pub status: InstanceStatus,
    pub cells_checked: usize,
    pub nonzero_cells: usize,
    /// Wall clock for this instance; excluded from any byte-stability
    /// guarantees.
    pub millis: u128,
}

/// Aggregated sweep result. `passed + failed` is the number of instances
/// actually checked; skipped instances are counted separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub instances: Vec<InstanceReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub total_millis: u128,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn checked(&self) -> usize {
        self.passed + self.failed
    }

    /// The first failed instance in iteration order, if any.
    pub fn first_failure(&self) -> Option<&InstanceReport> {
        self.instances
            .iter()
            .find(|r| matches!(r.status, InstanceStatus::Fail { .. }))
    }
}

fn is_cap_error(e: &Error) -> bool {
    matches!(
        e,
        Error::FacetCapExceeded { .. }
            | Error::FaceCapExceeded { .. }
            | Error::VertexLimitExceeded { .. }
    )
}

/// Verifies one instance against the standard closed formulas.
pub fn verify_instance(
    spec: &PathFamilySpec,
    oracles: OracleSelection,
    caps: &Caps,
    modular_check: bool,
) -> InstanceReport {
    verify_instance_against(&formulas::betti, spec, oracles, caps, modular_check)
}

/// Verifies one instance with an injectable formula. The standard entry
/// point passes [`formulas::betti`]; tests inject perturbed formulas to
/// prove the comparison machinery actually bites.
pub fn verify_instance_against<F>(
    formula: &F,
    spec: &PathFamilySpec,
    oracles: OracleSelection,
    caps: &Caps,
    modular_check: bool,
) -> InstanceReport
where
    F: Fn(&PathFamilySpec, usize, usize) -> Count,
{
    let start = Instant::now();
    let n = spec.n();
    let report = |status, cells, nonzero| InstanceReport {
        kind: spec.kind(),
        n,
        t: spec.t(),
        status,
        cells_checked: cells,
        nonzero_cells: nonzero,
        millis: start.elapsed().as_millis(),
    };

    let mut skip_reason: Option<String> = None;
    let mut internal: Option<String> = None;
    let mut unwrap_oracle = |res: Result<BettiTable, Error>| -> Option<BettiTable> {
        match res {
            Ok(t) => Some(t),
            Err(e) if is_cap_error(&e) => {
                skip_reason.get_or_insert_with(|| e.to_string());
                None
            }
            Err(e) => {
                internal.get_or_insert_with(|| e.to_string());
                None
            }
        }
    };

    let eligible = oracles
        .eligible
        .then(|| unwrap_oracle(eligible_table(spec, caps)))
        .flatten();
    let hochster = oracles
        .hochster
        .then(|| unwrap_oracle(hochster_table(spec, caps, modular_check)))
        .flatten();

    if let Some(message) = internal {
        return report(
            InstanceStatus::Fail {
                mismatch: MismatchDetail::Internal { message },
            },
            0,
            0,
        );
    }
    if let Some(reason) = skip_reason {
        return report(InstanceStatus::Skipped { reason }, 0, 0);
    }

    let mut cells = 0;
    let mut nonzero = 0;
    for i in 0..=n {
        for j in i..=n {
            cells += 1;
            let value = formula(spec, i, j);
            if !value.is_zero() {
                nonzero += 1;
            }
            let eligible_value = eligible.as_ref().filter(|_| j < n).map(|t| t.get(i, j));
            let hochster_value = hochster.as_ref().map(|t| t.get(i, j));
            let agree = eligible_value.as_ref().is_none_or(|v| *v == value)
                && hochster_value.as_ref().is_none_or(|v| *v == value);
            if !agree {
                return report(
                    InstanceStatus::Fail {
                        mismatch: MismatchDetail::Cell {
                            i,
                            j,
                            formula: value.to_string(),
                            eligible: eligible_value.map(|v| v.to_string()),
                            hochster: hochster_value.map(|v| v.to_string()),
                        },
                    },
                    cells,
                    nonzero,
                );
            }
            let predicted = nonzero_predicate(spec, i, j);
            if predicted != !value.is_zero() {
                return report(
                    InstanceStatus::Fail {
                        mismatch: MismatchDetail::Predicate {
                            i,
                            j,
                            value: value.to_string(),
                            predicate: predicted,
                        },
                    },
                    cells,
                    nonzero,
                );
            }
        }
    }

    // Oracle entries outside the comparison grid would silently escape the
    // cell loop; there must be none.
    for table in [&eligible, &hochster].into_iter().flatten() {
        if let Some((i, j, v)) = table.entries().find(|&(i, j, _)| j > n || i > j) {
            return report(
                InstanceStatus::Fail {
                    mismatch: MismatchDetail::Internal {
                        message: format!(
                            "{} produced out-of-grid entry ({i}, {j}) = {v}",
                            table.provenance()
                        ),
                    },
                },
                cells,
                nonzero,
            );
        }
    }

    if spec.kind() == GraphKind::Line {
        let (table_pd, table_reg) = pd_reg_from_table(&betti_table(spec));
        let (closed_pd, closed_reg) = (pd_line(n, spec.t()), reg_line(n, spec.t()));
        if (closed_pd, closed_reg) != (table_pd, table_reg) {
            return report(
                InstanceStatus::Fail {
                    mismatch: MismatchDetail::PdReg {
                        closed_pd,
                        closed_reg,
                        table_pd,
                        table_reg,
                    },
                },
                cells,
                nonzero,
            );
        }
    }

    report(InstanceStatus::Pass, cells, nonzero)
}

/// Runs a sweep against the standard formulas.
pub fn run_sweep(config: &SweepConfig) -> VerificationReport {
    run_sweep_against(&formulas::betti, config)
}

/// Runs a sweep with an injectable formula. Instances are verified
/// concurrently but reported in deterministic (kind, t, n) order.
pub fn run_sweep_against<F>(formula: &F, config: &SweepConfig) -> VerificationReport
where
    F: Fn(&PathFamilySpec, usize, usize) -> Count + Sync,
{
    let start = Instant::now();
    let instances: Vec<InstanceReport> = config
        .instances()
        .par_iter()
        .map(|spec| {
            verify_instance_against(
                formula,
                spec,
                config.oracles,
                &config.caps,
                config.modular_check,
            )
        })
        .collect();
    let passed = instances
        .iter()
        .filter(|r| matches!(r.status, InstanceStatus::Pass))
        .count();
    let failed = instances
        .iter()
        .filter(|r| matches!(r.status, InstanceStatus::Fail { .. }))
        .count();
    let skipped = instances
        .iter()
        .filter(|r| matches!(r.status, InstanceStatus::Skipped { .. }))
        .count();
    VerificationReport {
        instances,
        passed,
        failed,
        skipped,
        total_millis: start.elapsed().as_millis(),
    }
}
