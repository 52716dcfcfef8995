//! The staircase window: translated flats joined by strips, each level shifted
//! right by `r`, and a certificate that its contact graph admits walls which
//! are moved a bounded distance by arbitrarily many translations.
//!
//! Level `i` consists of a strip row `S_i` (one square high) and, above it, a
//! flat block `R_i` three squares high whose bottom row spans the columns
//! `r·i .. r·i + L`. The strip `S_i` joins `R_{i-1}` to `R_i` and covers the
//! horizontal extent of both, padded by `margin` on each side. The wall `gⁱH`
//! is the horizontal wall running along `S_i`; `H_v` is the vertical wall dual
//! to the last edge `[L-1, L]` of the base row.

mod walls;
mod window;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use walls::{contact_distance, contact_graph, walls, ContactGraph, Wall, Walls};
pub use window::{Cell, CubeWindow, Point, WindowEdge};

use crate::complex::EdgeClass;

pub const CERT_SCHEMA: &str = "cubulate.nonacyl-certificate/v1";

/// Rows per level: one strip row and three flat rows.
const LEVEL_HEIGHT: i64 = 4;
const FLAT_HEIGHT: i64 = 3;
const MAX_CELLS: u128 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StaircaseError {
    #[error("invalid staircase parameters: {0}")]
    InvalidParams(String),
    #[error("malformed window: {0}")]
    Malformed(String),
    #[error("no wall with id {0}")]
    UnknownWall(usize),
    #[error("walls {0} and {1} lie in different components of the window")]
    Unreachable(usize, usize),
    #[error("certificate failed self-check: {0}")]
    CertificateInvalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StairParams {
    #[serde(rename = "L")]
    pub l: usize,
    pub r: usize,
    pub steps: usize,
    pub margin: usize,
}

impl StairParams {
    pub fn new(l: usize, r: usize, steps: usize, margin: usize) -> Result<Self, StaircaseError> {
        let p = Self { l, r, steps, margin };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), StaircaseError> {
        let bad = |m: String| Err(StaircaseError::InvalidParams(m));
        if self.r == 0 || self.r > self.l {
            return bad(format!("need 0 < r <= L, got r = {}, L = {}", self.r, self.l));
        }
        if self.steps < 1 {
            return bad("steps must be at least 1".into());
        }
        if self.margin < 1 {
            return bad("margin must be at least 1".into());
        }
        let cells = self.cell_estimate();
        if cells > MAX_CELLS {
            return bad(format!("window would have about {cells} cells (limit {MAX_CELLS})"));
        }
        Ok(())
    }

    /// `M = ⌈L/r⌉ + 1`.
    pub fn m(&self) -> usize {
        self.l.div_ceil(self.r) + 1
    }

    fn cell_estimate(&self) -> u128 {
        let (l, r, s, m) = (self.l as u128, self.r as u128, self.steps as u128, self.margin as u128);
        (s + 1) * (l + r + 2 * m) + s * FLAT_HEIGHT as u128 * l
    }

    /// Columns `[from, to)` of the strip `S_i`.
    fn strip_columns(&self, i: usize) -> (i64, i64) {
        let (l, r, m, i) = (self.l as i64, self.r as i64, self.margin as i64, i as i64);
        (r * (i - 1) - m, r * i + l + m)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Staircase {
    pub params: StairParams,
    pub window: CubeWindow,
}

/// Synthesizes the window for `params` and validates it.
pub fn build_staircase(params: StairParams) -> Result<Staircase, StaircaseError> {
    params.validate()?;
    let (l, r) = (params.l as i64, params.r as i64);
    let mut w = CubeWindow::new();
    for i in 0..=params.steps {
        let y = LEVEL_HEIGHT * i as i64 - 1;
        let (from, to) = params.strip_columns(i);
        for x in from..to {
            w.add_cell(Point::new(x, y));
        }
        if i < params.steps {
            let x0 = r * i as i64;
            for dy in 0..FLAT_HEIGHT {
                for x in x0..x0 + l {
                    w.add_cell(Point::new(x, y + 1 + dy));
                }
            }
        }
    }
    w.validate()?;
    Ok(Staircase { params, window: w })
}

impl Staircase {
    /// The vertical edge at the west end of the strip `S_i`; its wall is `gⁱH`.
    pub fn strip_edge(&self, i: usize) -> Option<usize> {
        if i > self.params.steps {
            return None;
        }
        let (from, _) = self.params.strip_columns(i);
        self.window.edge_at(Point::new(from, LEVEL_HEIGHT * i as i64 - 1), EdgeClass::Vertical)
    }

    /// The last edge `[L-1, L]` of the base row; its wall is `H_v`.
    pub fn projection_last_edge(&self) -> usize {
        self.window
            .edge_at(Point::new(self.params.l as i64 - 1, 0), EdgeClass::Horizontal)
            .expect("base row is part of every window")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDistance {
    pub i: usize,
    pub distance: usize,
    /// Middle wall of the 2-path from H through the witness to gⁱH.
    pub witness: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCrossings {
    pub wall: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub fn ceil(&self) -> usize {
        self.num.div_ceil(self.den)
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowStats {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub walls: usize,
    pub contact_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAcylCertificate {
    pub schema: String,
    pub params: StairParams,
    pub p: usize,
    #[serde(rename = "M")]
    pub m: usize,
    /// Wall ids of `gⁱH` for `i = 0..=steps`; `family[0]` is `H`.
    pub family: Vec<usize>,
    pub h_v: usize,
    pub family_distances: Vec<FamilyDistance>,
    /// Walls crossing at least one family member.
    pub crossing_counts: Vec<WallCrossings>,
    pub max_crossings: usize,
    pub h_v_crossings: usize,
    pub lower_bound: Ratio,
    pub bfs_distance: usize,
    pub bounds_note: String,
    pub window: WindowStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest_digest: Option<String>,
}

/// Everything derived from a built staircase that the certificate needs.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub staircase: Staircase,
    pub walls: Walls,
    pub contact: ContactGraph,
    pub family: Vec<usize>,
    pub h_v: usize,
    /// Number of family walls crossed, per wall.
    pub crossing_counts: Vec<usize>,
}

pub fn analyze(params: StairParams) -> Result<Analysis, StaircaseError> {
    let staircase = build_staircase(params)?;
    let ws = walls(&staircase.window);
    let contact = contact_graph(&staircase.window, &ws);
    let family: Vec<usize> = (0..=params.steps)
        .map(|i| staircase.strip_edge(i).map(|e| ws.of_edge(e)))
        .collect::<Option<_>>()
        .ok_or_else(|| StaircaseError::Malformed("a strip is missing its west edge".into()))?;
    let h_v = ws.of_edge(staircase.projection_last_edge());
    let crossings = ws.crossings(&staircase.window);
    let crossing_counts = crossings
        .par_iter()
        .map(|set| family.iter().filter(|f| set.contains(f)).count())
        .collect();
    Ok(Analysis { staircase, walls: ws, contact, family, h_v, crossing_counts })
}

/// Builds, checks and returns the certificate for `d(H, gᵖH) ≥ p/M`.
pub fn nonacyl_certificate(params: StairParams, p: usize) -> Result<NonAcylCertificate, StaircaseError> {
    params.validate()?;
    let m = params.m();
    if p < 1 || p > params.steps {
        return Err(StaircaseError::InvalidParams(format!("need 1 <= p <= steps, got p = {p}")));
    }
    if params.steps + 1 < m {
        return Err(StaircaseError::InvalidParams(format!(
            "steps = {} is too small to exhibit M = {m} strips crossed by one wall",
            params.steps
        )));
    }
    let a = analyze(params)?;
    let fail = |m: String| Err(StaircaseError::CertificateInvalid(m));

    let mut distinct = a.family.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != a.family.len() {
        return fail("strip walls are not pairwise distinct".into());
    }

    let h = a.family[0];
    let from_h = a.contact.bfs(h)?;
    let crossings = a.walls.crossings(&a.staircase.window);
    let mut family_distances = Vec::with_capacity(m - 1);
    for i in 1..m {
        let gi = a.family[i];
        let distance = from_h[gi].ok_or(StaircaseError::Unreachable(h, gi))?;
        let witness = a.h_v;
        let genuine = crossings[witness].contains(&h)
            && crossings[witness].contains(&gi)
            && a.contact.adjacent(h, witness)
            && a.contact.adjacent(witness, gi)
            && !a.contact.adjacent(h, gi)
            && h != gi;
        if !genuine || distance != 2 {
            return fail(format!("d(H, g^{i}H) = {distance}, expected a 2-path through wall {witness}"));
        }
        family_distances.push(FamilyDistance { i, distance, witness });
    }

    let max_crossings = a.crossing_counts.iter().copied().max().unwrap_or(0);
    let h_v_crossings = a.crossing_counts[a.h_v];
    if max_crossings != m || h_v_crossings != m {
        return fail(format!("max crossings {max_crossings}, H_v crosses {h_v_crossings}, expected M = {m}"));
    }

    let gp = a.family[p];
    let bfs_distance = from_h[gp].ok_or(StaircaseError::Unreachable(h, gp))?;
    let lower_bound = Ratio { num: p, den: m };
    if bfs_distance * m < p {
        return fail(format!("d(H, g^{p}H) = {bfs_distance} is below {p}/{m}"));
    }

    let crossing_counts = a
        .crossing_counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(wall, &count)| WallCrossings { wall, count })
        .collect();
    let w = &a.staircase.window;
    Ok(NonAcylCertificate {
        schema: CERT_SCHEMA.to_string(),
        params,
        p,
        m,
        family: a.family.clone(),
        h_v: a.h_v,
        family_distances,
        crossing_counts,
        max_crossings,
        h_v_crossings,
        lower_bound,
        bfs_distance,
        bounds_note: format!(
            "bfs_distance is measured inside a finite window with margin {}; the bound p/M only uses the \
             crossing counts, which every wall of the window satisfies",
            params.margin
        ),
        window: WindowStats {
            vertices: w.vertices().len(),
            edges: w.edges().len(),
            squares: w.cells().len(),
            walls: a.walls.len(),
            contact_edges: a.contact.edge_count(),
        },
        manifest_digest: None,
    })
}
