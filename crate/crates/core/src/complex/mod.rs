//! VH square-complex presentations.
//!
//! A presentation lists oriented, labeled edges split into a horizontal and a
//! vertical class, plus squares recorded as `(bottom, right, top, left)` with
//! the boundary relation `bottom · right = left · top` read from the south-west
//! corner to the north-east corner. Each square is stored once; the corner
//! table holds all four of its placements in the plane (identity, east-west
//! flip, north-south flip and the half turn), keyed by the germs leaving the
//! south-west corner.
//!
//! A presentation is *complete* (CSC) when every pair of germs
//! (horizontal, vertical) leaving a vertex is the south-west corner of exactly
//! one placement. Its universal cover is then a product of two trees.

mod census;
mod parse;

pub use census::{canonical_form, enumerate_csc, CensusError, CensusOptions};
pub use parse::{parse_complex, serialize_complex};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Horizontal,
    Vertical,
}

impl EdgeClass {
    pub fn other(self) -> Self {
        match self {
            EdgeClass::Horizontal => EdgeClass::Vertical,
            EdgeClass::Vertical => EdgeClass::Horizontal,
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::Horizontal => f.write_str("horizontal"),
            EdgeClass::Vertical => f.write_str("vertical"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A named edge of the quotient complex together with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub name: String,
    pub class: EdgeClass,
    pub tail: usize,
    pub head: usize,
}

/// An edge label traversed in a chosen direction.
///
/// `index` points into the horizontal or vertical label list of the owning
/// presentation, depending on `class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub class: EdgeClass,
    pub index: u32,
    pub sign: Sign,
}

impl OrientedEdge {
    pub fn new(class: EdgeClass, index: u32, sign: Sign) -> Self {
        Self { class, index, sign }
    }

    pub fn pos(class: EdgeClass, index: u32) -> Self {
        Self::new(class, index, Sign::Pos)
    }

    pub fn inverse(self) -> Self {
        Self { sign: self.sign.flip(), ..self }
    }

    /// Dense index within the class: `2 * index + (sign == Neg)`.
    pub fn germ(self) -> usize {
        2 * self.index as usize + usize::from(self.sign == Sign::Neg)
    }

    pub fn from_germ(class: EdgeClass, germ: usize) -> Self {
        let sign = if germ & 1 == 1 { Sign::Neg } else { Sign::Pos };
        Self::new(class, (germ >> 1) as u32, sign)
    }
}

/// A square recorded as `(bottom, right, top, left)`; horizontal sides read
/// west to east, vertical sides south to north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Square {
    pub bottom: OrientedEdge,
    pub right: OrientedEdge,
    pub top: OrientedEdge,
    pub left: OrientedEdge,
}

/// The four class-preserving symmetries of a square in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Identity,
    FlipEastWest,
    FlipNorthSouth,
    HalfTurn,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Identity,
        Symmetry::FlipEastWest,
        Symmetry::FlipNorthSouth,
        Symmetry::HalfTurn,
    ];
}

impl Square {
    pub fn new(bottom: OrientedEdge, right: OrientedEdge, top: OrientedEdge, left: OrientedEdge) -> Self {
        Self { bottom, right, top, left }
    }

    pub fn transformed(&self, sym: Symmetry) -> Square {
        let Square { bottom: b, right: r, top: t, left: l } = *self;
        match sym {
            Symmetry::Identity => *self,
            Symmetry::FlipEastWest => Square::new(b.inverse(), l, t.inverse(), r),
            Symmetry::FlipNorthSouth => Square::new(t, r.inverse(), b, l.inverse()),
            Symmetry::HalfTurn => Square::new(t.inverse(), l.inverse(), b.inverse(), r.inverse()),
        }
    }

    pub fn placements(&self) -> [(Symmetry, Square); 4] {
        Symmetry::ALL.map(|s| (s, self.transformed(s)))
    }

    /// Smallest of the four placements; two squares describe the same 2-cell
    /// iff their canonical placements agree.
    pub fn canonical(&self) -> Square {
        self.placements().iter().map(|(_, s)| *s).min().unwrap()
    }

    pub fn sw_corner(&self) -> (OrientedEdge, OrientedEdge) {
        (self.bottom, self.left)
    }
}

/// One placement of a stored square, as recorded in the corner table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub square: usize,
    pub symmetry: Symmetry,
    pub cell: Square,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerViolation {
    pub vertex: String,
    pub horizontal: String,
    pub vertical: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_csc: bool,
    pub violations: Vec<CornerViolation>,
    pub corner_count: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: label `{label}` is not {expected} but sits in the {slot} slot")]
    Class {
        line: usize,
        label: String,
        slot: &'static str,
        expected: EdgeClass,
    },
    #[error("line {line}: duplicate label `{name}`")]
    DuplicateLabel { line: usize, name: String },
    #[error("line {line}: square corners do not meet: {reason}")]
    VertexMismatch { line: usize, reason: String },
}

/// An immutable VH square-complex presentation with its corner table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareComplexPresentation {
    vertices: Vec<String>,
    implicit_vertex: bool,
    hedges: Vec<EdgeLabel>,
    vedges: Vec<EdgeLabel>,
    squares: Vec<Square>,
    corners: Vec<Vec<Placement>>,
    step: Option<Vec<(u16, u16)>>,
}

/// Position information attached to a square when it comes from a file.
pub(crate) type SourceLines = Vec<usize>;

impl SquareComplexPresentation {
    /// Single-vertex presentation from label names and squares over them.
    pub fn one_vertex<S: AsRef<str>>(
        hnames: &[S],
        vnames: &[S],
        squares: Vec<Square>,
    ) -> Result<Self, ComplexError> {
        let mk = |n: &S, class| EdgeLabel {
            name: n.as_ref().to_string(),
            class,
            tail: 0,
            head: 0,
        };
        let hedges = hnames.iter().map(|n| mk(n, EdgeClass::Horizontal)).collect();
        let vedges = vnames.iter().map(|n| mk(n, EdgeClass::Vertical)).collect();
        Self::build(vec!["v".to_string()], true, hedges, vedges, squares, None)
    }

    pub fn new(
        vertices: Vec<String>,
        hedges: Vec<EdgeLabel>,
        vedges: Vec<EdgeLabel>,
        squares: Vec<Square>,
    ) -> Result<Self, ComplexError> {
        Self::build(vertices, false, hedges, vedges, squares, None)
    }

    pub(crate) fn build(
        vertices: Vec<String>,
        implicit_vertex: bool,
        hedges: Vec<EdgeLabel>,
        vedges: Vec<EdgeLabel>,
        squares: Vec<Square>,
        lines: Option<&SourceLines>,
    ) -> Result<Self, ComplexError> {
        let line_of = |i: usize| lines.and_then(|l| l.get(i).copied()).unwrap_or(0);

        let mut seen = std::collections::HashSet::new();
        for e in hedges.iter().chain(&vedges) {
            if !seen.insert(e.name.as_str()) {
                return Err(ComplexError::DuplicateLabel { line: 0, name: e.name.clone() });
            }
            if e.tail >= vertices.len() || e.head >= vertices.len() {
                return Err(ComplexError::Parse {
                    line: 0,
                    reason: format!("edge `{}` has an unknown endpoint", e.name),
                });
            }
        }

        let mut p = Self {
            vertices,
            implicit_vertex,
            hedges,
            vedges,
            squares,
            corners: Vec::new(),
            step: None,
        };

        for (i, sq) in p.squares.iter().enumerate() {
            let slots = [
                (sq.bottom, EdgeClass::Horizontal, "bottom"),
                (sq.right, EdgeClass::Vertical, "right"),
                (sq.top, EdgeClass::Horizontal, "top"),
                (sq.left, EdgeClass::Vertical, "left"),
            ];
            for (oe, expected, slot) in slots {
                let count = match oe.class {
                    EdgeClass::Horizontal => p.hedges.len(),
                    EdgeClass::Vertical => p.vedges.len(),
                };
                if oe.index as usize >= count {
                    return Err(ComplexError::Parse {
                        line: line_of(i),
                        reason: format!("square {i} references a missing edge"),
                    });
                }
                if oe.class != expected {
                    return Err(ComplexError::Class {
                        line: line_of(i),
                        label: p.label(oe).name.clone(),
                        slot,
                        expected,
                    });
                }
            }
            let checks = [
                (p.start(sq.bottom), p.start(sq.left), "bottom and left start apart"),
                (p.end(sq.bottom), p.start(sq.right), "bottom does not end where right starts"),
                (p.end(sq.left), p.start(sq.top), "left does not end where top starts"),
                (p.end(sq.top), p.end(sq.right), "top and right end apart"),
            ];
            for (u, v, reason) in checks {
                if u != v {
                    return Err(ComplexError::VertexMismatch {
                        line: line_of(i),
                        reason: reason.to_string(),
                    });
                }
            }
        }

        let hg = 2 * p.hedges.len();
        let vg = 2 * p.vedges.len();
        let mut corners = vec![Vec::new(); hg * vg];
        for (i, sq) in p.squares.iter().enumerate() {
            for (symmetry, cell) in sq.placements() {
                corners[cell.bottom.germ() * vg + cell.left.germ()].push(Placement {
                    square: i,
                    symmetry,
                    cell,
                });
            }
        }
        p.corners = corners;
        if p.report().is_csc {
            p.step = Some(
                p.corners
                    .iter()
                    .map(|c| match c.first() {
                        Some(pl) => (pl.cell.top.germ() as u16, pl.cell.right.germ() as u16),
                        None => (u16::MAX, u16::MAX),
                    })
                    .collect(),
            );
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn has_implicit_vertex(&self) -> bool {
        self.implicit_vertex
    }

    pub fn is_one_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn hedges(&self) -> &[EdgeLabel] {
        &self.hedges
    }

    pub fn vedges(&self) -> &[EdgeLabel] {
        &self.vedges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn edges(&self, class: EdgeClass) -> &[EdgeLabel] {
        match class {
            EdgeClass::Horizontal => &self.hedges,
            EdgeClass::Vertical => &self.vedges,
        }
    }

    pub fn germ_count(&self, class: EdgeClass) -> usize {
        2 * self.edges(class).len()
    }

    pub fn label(&self, oe: OrientedEdge) -> &EdgeLabel {
        &self.edges(oe.class)[oe.index as usize]
    }

    pub fn start(&self, oe: OrientedEdge) -> usize {
        let l = self.label(oe);
        match oe.sign {
            Sign::Pos => l.tail,
            Sign::Neg => l.head,
        }
    }

    pub fn end(&self, oe: OrientedEdge) -> usize {
        self.start(oe.inverse())
    }

    pub fn letter_name(&self, oe: OrientedEdge) -> String {
        let name = &self.label(oe).name;
        match oe.sign {
            Sign::Pos => name.clone(),
            Sign::Neg => format!("-{name}"),
        }
    }

    /// Looks up a label by name, in either class.
    pub fn find_label(&self, name: &str) -> Option<OrientedEdge> {
        for class in [EdgeClass::Horizontal, EdgeClass::Vertical] {
            if let Some(i) = self.edges(class).iter().position(|e| e.name == name) {
                return Some(OrientedEdge::pos(class, i as u32));
            }
        }
        None
    }

    /// Parses `a` or `-a`.
    pub fn parse_letter(&self, token: &str) -> Option<OrientedEdge> {
        match token.strip_prefix('-') {
            Some(rest) => self.find_label(rest).map(OrientedEdge::inverse),
            None => self.find_label(token),
        }
    }

    /// All placements whose south-west corner is `(h, v)`.
    pub fn corner_entries(&self, h: OrientedEdge, v: OrientedEdge) -> &[Placement] {
        let vg = self.germ_count(EdgeClass::Vertical);
        &self.corners[h.germ() * vg + v.germ()]
    }

    /// The unique placement with south-west corner `(h, v)`, if there is exactly one.
    pub fn corner(&self, h: OrientedEdge, v: OrientedEdge) -> Option<&Placement> {
        match self.corner_entries(h, v) {
            [one] => Some(one),
            _ => None,
        }
    }

    pub fn is_csc(&self) -> bool {
        self.step.is_some()
    }

    /// Dense `(top germ, right germ)` lookup; `None` unless the presentation is CSC.
    pub(crate) fn step_table(&self) -> Option<&[(u16, u16)]> {
        self.step.as_deref()
    }

    pub fn report(&self) -> ValidationReport {
        validate_csc(self)
    }

    /// The same complex seen in a mirror exchanging east and west: every
    /// square is replaced by its east-west flip. Horizontal words must be
    /// inverted to be read in the mirrored frame.
    pub fn mirrored(&self) -> Self {
        let squares = self
            .squares
            .iter()
            .map(|s| s.transformed(Symmetry::FlipEastWest))
            .collect();
        Self::build(
            self.vertices.clone(),
            self.implicit_vertex,
            self.hedges.clone(),
            self.vedges.clone(),
            squares,
            None,
        )
        .expect("flipping squares keeps a valid presentation valid")
    }
}

/// Checks the CSC condition: at every vertex each (horizontal germ,
/// vertical germ) pair is the south-west corner of exactly one placement.
///
/// The other three corner types are images of the south-west corners under
/// the square symmetries, so they need no separate count.
pub fn validate_csc(p: &SquareComplexPresentation) -> ValidationReport {
    let hg = p.germ_count(EdgeClass::Horizontal);
    let vg = p.germ_count(EdgeClass::Vertical);
    let mut violations = Vec::new();
    for h in 0..hg {
        let h = OrientedEdge::from_germ(EdgeClass::Horizontal, h);
        for v in 0..vg {
            let v = OrientedEdge::from_germ(EdgeClass::Vertical, v);
            if p.start(h) != p.start(v) {
                continue;
            }
            let count = p.corner_entries(h, v).len();
            if count != 1 {
                violations.push(CornerViolation {
                    vertex: p.vertices[p.start(h)].clone(),
                    horizontal: p.letter_name(h),
                    vertical: p.letter_name(v),
                    count,
                });
            }
        }
    }
    // With no germ pairs at all there is nothing to cover.
    let is_csc = violations.is_empty() && hg > 0 && vg > 0;
    ValidationReport {
        is_csc,
        violations,
        corner_count: 4 * p.squares.len(),
    }
}
