//! Witnesses that the strip-augmented complex has no factor system.
//!
//! The base `w1`-geodesic `F` and the geodesic `F'` found by
//! [`overlap_gamma`] both carry strips, so both are combinatorial hyperplanes.
//! In a product of trees the gate projection of `F'` to `F` is the overlap `γ`
//! translated down to the base row, so its diameter is `|γ|`, and every such
//! projection contains the basepoint. A table of growing `n` therefore shows
//! that no pair of constants bounds both the number of factors through a
//! vertex and the diameter of non-factor projections.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antitorus::{commuting_powers_search, overlap_gamma, AntiTorusError, AntiTorusQuery, Budgets, GammaResult};

pub const TABLE_SCHEMA: &str = "cubulate.obstruction-table/v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("w1^{k} and w2^{j} commute: the flat is periodic and no obstruction exists")]
    NotAntiTorus { k: usize, j: usize },
    #[error(transparent)]
    AntiTorus(#[from] AntiTorusError),
}

impl ObstructionError {
    pub fn is_budget(&self) -> bool {
        matches!(self, ObstructionError::AntiTorus(e) if e.is_budget())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub n: usize,
    pub gamma: GammaResult,
    pub diam: usize,
    pub contains_basepoint: bool,
}

/// Diameter of the projection of the `n`-th geodesic `F'` onto `F`.
pub fn projection_diameter(q: &AntiTorusQuery<'_>, n: usize, budgets: &Budgets) -> Result<ProjectionResult, AntiTorusError> {
    let gamma = overlap_gamma(q, n, budgets)?;
    Ok(ProjectionResult {
        n,
        gamma,
        diam: gamma.total_len,
        contains_basepoint: gamma.contains_basepoint(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsUsed {
    /// Commuting-powers search bounds.
    pub k: usize,
    pub j: usize,
    pub i_max: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default)]
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub rows_ok: usize,
    pub max_diam: usize,
    /// `diam(n) >= n·|w1|` on every successful row.
    pub diam_lower_bound_holds: bool,
    pub all_contain_basepoint: bool,
    /// Each `ξ` up to `max_diam` is met or exceeded by some row's diameter
    /// while all of those projections share one vertex.
    pub violates_thresholds_up_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionTable {
    pub schema: String,
    pub w1: String,
    pub w2: String,
    pub w1_len: usize,
    pub bounds_used: BoundsUsed,
    pub rows: Vec<TableRow>,
    pub summary: TableSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest_digest: Option<String>,
}

impl ObstructionTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,diam,L\n");
        for r in &self.rows {
            match &r.projection {
                Some(p) => {
                    let _ = writeln!(out, "{},{},{}", r.n, p.diam, p.gamma.total_len);
                }
                None => {
                    let _ = writeln!(out, "{},,", r.n);
                }
            }
        }
        out
    }
}

/// Rows for `n = 1..=n_max`, after certifying the anti-torus hypothesis up to
/// `(k, j)`. Rows are computed in parallel and assembled in order; a row whose
/// search fails is flagged rather than aborting the table.
pub fn obstruction_table(
    q: &AntiTorusQuery<'_>,
    n_max: usize,
    (k, j): (usize, usize),
    budgets: &Budgets,
) -> Result<ObstructionTable, ObstructionError> {
    if let Some((k, j)) = commuting_powers_search(q, k, j) {
        return Err(ObstructionError::NotAntiTorus { k, j });
    }
    let rows: Vec<TableRow> = (1..=n_max)
        .into_par_iter()
        .map(|n| match projection_diameter(q, n, budgets) {
            Ok(p) => TableRow { n, projection: Some(p), failure: None, budget_exceeded: false },
            Err(e) => TableRow {
                n,
                projection: None,
                failure: Some(e.to_string()),
                budget_exceeded: e.is_budget(),
            },
        })
        .collect();

    let w1_len = q.w1().len();
    let ok: Vec<&ProjectionResult> = rows.iter().filter_map(|r| r.projection.as_ref()).collect();
    let max_diam = ok.iter().map(|p| p.diam).max().unwrap_or(0);
    let summary = TableSummary {
        rows_ok: ok.len(),
        max_diam,
        diam_lower_bound_holds: ok.iter().all(|p| p.diam >= p.n * w1_len),
        all_contain_basepoint: ok.iter().all(|p| p.contains_basepoint),
        violates_thresholds_up_to: (0..=max_diam)
            .take_while(|&xi| ok.iter().any(|p| p.diam >= xi))
            .last()
            .unwrap_or(0),
    };
    let p = q.complex();
    Ok(ObstructionTable {
        schema: TABLE_SCHEMA.to_string(),
        w1: q.w1().period().display(p).to_string(),
        w2: q.w2().period().display(p).to_string(),
        w1_len,
        bounds_used: BoundsUsed { k, j, i_max: budgets.i_max, k_max: budgets.k_max },
        rows,
        summary,
        manifest_digest: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellSeparationResult {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub crossing_set_size: usize,
    pub facing_triple_free: bool,
    pub triples_checked: u64,
}

/// Hyperplanes crossing a path of `len` edges, indexed by edge position,
/// each given by the side (`false` = west) of every path vertex.
fn crossing_halfspaces(len: usize) -> Vec<Vec<bool>> {
    (0..len).map(|e| (0..=len).map(|v| v > e).collect()).collect()
}

/// Whether hyperplane `b` separates edges `a` and `c` of the path.
fn separates(halfspaces: &[Vec<bool>], a: usize, b: usize, c: usize) -> bool {
    let side = &halfspaces[b];
    let a_side = side[a] && side[a + 1];
    let a_other = !side[a] && !side[a + 1];
    let c_side = side[c] && side[c + 1];
    let c_other = !side[c] && !side[c + 1];
    (a_side && c_other) || (a_other && c_side)
}

/// Checks that no three hyperplanes crossing a path of `len` edges form a
/// facing triple; returns the verdict and the number of triples checked.
pub fn facing_triple_free(len: usize) -> (bool, u64) {
    let hs = crossing_halfspaces(len);
    let mut checked = 0u64;
    let mut ok = true;
    for a in 0..len {
        for b in a + 1..len {
            for c in b + 1..len {
                checked += 1;
                ok &= separates(&hs, a, b, c);
            }
        }
    }
    (ok, checked)
}

/// Well-separation number of the strip hyperplanes `H` and `H'` over `F` and
/// `F'`: the hyperplanes transverse to both are exactly those dual to the
/// edges of `γ × {y}`.
pub fn well_separation(q: &AntiTorusQuery<'_>, n: usize, budgets: &Budgets) -> Result<WellSeparationResult, AntiTorusError> {
    let gamma = overlap_gamma(q, n, budgets)?;
    Ok(well_separation_of(&gamma))
}

pub fn well_separation_of(gamma: &GammaResult) -> WellSeparationResult {
    let l = gamma.total_len;
    let (free, checked) = facing_triple_free(l);
    WellSeparationResult {
        n: gamma.n,
        l,
        crossing_set_size: crossing_halfspaces(l).len(),
        facing_triple_free: free,
        triples_checked: checked,
    }
}
