//! Finite square complexes made of unit cells of the integer grid.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::StaircaseError;
use crate::complex::EdgeClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

/// A unit segment; `from` is the west or south end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowEdge {
    pub from: usize,
    pub to: usize,
    pub class: EdgeClass,
}

/// A unit cell with its corners `[sw, se, ne, nw]` and sides
/// `[bottom, right, top, left]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub corners: [usize; 4],
    pub sides: [usize; 4],
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CubeWindow {
    vertices: Vec<Point>,
    edges: Vec<WindowEdge>,
    cells: Vec<Cell>,
    #[serde(skip)]
    vertex_index: BTreeMap<Point, usize>,
    #[serde(skip)]
    edge_index: BTreeMap<(usize, usize), usize>,
    #[serde(skip)]
    cell_index: BTreeMap<Point, usize>,
}

impl CubeWindow {
    pub fn new() -> Self {
        Self::default()
    }

    /// Window made of the unit cells with the given south-west corners.
    pub fn from_cells(corners: impl IntoIterator<Item = Point>) -> Self {
        let mut w = Self::new();
        for c in corners {
            w.add_cell(c);
        }
        w
    }

    pub fn add_vertex(&mut self, p: Point) -> usize {
        if let Some(&id) = self.vertex_index.get(&p) {
            return id;
        }
        self.vertices.push(p);
        self.vertex_index.insert(p, self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    /// Adds the unit segment from `p` one step east (`Horizontal`) or north.
    pub fn add_edge(&mut self, p: Point, class: EdgeClass) -> usize {
        let q = match class {
            EdgeClass::Horizontal => Point::new(p.x + 1, p.y),
            EdgeClass::Vertical => Point::new(p.x, p.y + 1),
        };
        let from = self.add_vertex(p);
        let to = self.add_vertex(q);
        if let Some(&id) = self.edge_index.get(&(from, to)) {
            return id;
        }
        self.edges.push(WindowEdge { from, to, class });
        self.edge_index.insert((from, to), self.edges.len() - 1);
        self.edges.len() - 1
    }

    /// Adds the unit cell with south-west corner `sw`; adding it twice is a no-op.
    pub fn add_cell(&mut self, sw: Point) -> usize {
        if let Some(&id) = self.cell_index.get(&sw) {
            return id;
        }
        let bottom = self.add_edge(sw, EdgeClass::Horizontal);
        let left = self.add_edge(sw, EdgeClass::Vertical);
        let right = self.add_edge(Point::new(sw.x + 1, sw.y), EdgeClass::Vertical);
        let top = self.add_edge(Point::new(sw.x, sw.y + 1), EdgeClass::Horizontal);
        let corners = [
            sw,
            Point::new(sw.x + 1, sw.y),
            Point::new(sw.x + 1, sw.y + 1),
            Point::new(sw.x, sw.y + 1),
        ]
        .map(|p| self.vertex_index[&p]);
        self.cells.push(Cell { corners, sides: [bottom, right, top, left] });
        self.cell_index.insert(sw, self.cells.len() - 1);
        self.cells.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[WindowEdge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn vertex_id(&self, p: Point) -> Option<usize> {
        self.vertex_index.get(&p).copied()
    }

    /// The unit segment starting at `p` going east or north.
    pub fn edge_at(&self, p: Point, class: EdgeClass) -> Option<usize> {
        let q = match class {
            EdgeClass::Horizontal => Point::new(p.x + 1, p.y),
            EdgeClass::Vertical => Point::new(p.x, p.y + 1),
        };
        let key = (self.vertex_id(p)?, self.vertex_id(q)?);
        self.edge_index.get(&key).copied()
    }

    /// Edge ids incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.from].push(i);
            inc[e.to].push(i);
        }
        inc
    }

    /// Checks that cells and edges reference existing, correctly placed
    /// parts, and that no two cells share a corner (a pair of edges at a
    /// vertex).
    pub fn validate(&self) -> Result<(), StaircaseError> {
        let bad = |m: String| Err(StaircaseError::Malformed(m));
        for (i, e) in self.edges.iter().enumerate() {
            let (Some(a), Some(b)) = (self.vertices.get(e.from), self.vertices.get(e.to)) else {
                return bad(format!("edge {i} has a missing endpoint"));
            };
            let unit = match e.class {
                EdgeClass::Horizontal => b.x == a.x + 1 && b.y == a.y,
                EdgeClass::Vertical => b.x == a.x && b.y == a.y + 1,
            };
            if !unit {
                return bad(format!("edge {i} is not a unit {} segment", e.class));
            }
        }
        let mut corners = BTreeSet::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.sides.iter().any(|&s| s >= self.edges.len()) {
                return bad(format!("cell {i} has a missing side"));
            }
            let [b, r, t, l] = c.sides.map(|s| self.edges[s]);
            let [sw, se, ne, nw] = c.corners;
            let shape_ok = b.class == EdgeClass::Horizontal
                && t.class == EdgeClass::Horizontal
                && l.class == EdgeClass::Vertical
                && r.class == EdgeClass::Vertical
                && (b.from, b.to) == (sw, se)
                && (r.from, r.to) == (se, ne)
                && (t.from, t.to) == (nw, ne)
                && (l.from, l.to) == (sw, nw);
            if !shape_ok {
                return bad(format!("cell {i} sides do not close up"));
            }
            let [sb, sr, st, sl] = c.sides;
            for (v, e1, e2) in [(sw, sb, sl), (se, sb, sr), (ne, st, sr), (nw, st, sl)] {
                if !corners.insert((v, e1, e2)) {
                    return bad(format!("two cells share the corner of cell {i} at vertex {v}"));
                }
            }
        }
        Ok(())
    }
}
