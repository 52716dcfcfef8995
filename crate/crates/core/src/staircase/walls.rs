//! Walls (hyperplanes) of a finite square complex and its contact graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::window::CubeWindow;
use super::StaircaseError;
use crate::complex::EdgeClass;
use crate::unionfind::UnionFind;

/// A wall is a class of edges under "opposite sides of a cell". Its
/// `orientation` is the direction the wall runs in, so a wall dual to
/// vertical edges is horizontal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub id: usize,
    pub dual_edges: Vec<usize>,
    pub orientation: EdgeClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Walls {
    pub walls: Vec<Wall>,
    /// Wall id of every edge.
    pub edge_wall: Vec<usize>,
}

impl Walls {
    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn of_edge(&self, edge: usize) -> usize {
        self.edge_wall[edge]
    }

    /// For each wall, the walls it crosses (shares a cell with, transversally).
    pub fn crossings(&self, w: &CubeWindow) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); self.walls.len()];
        for c in w.cells() {
            let across = self.edge_wall[c.sides[0]];
            let along = self.edge_wall[c.sides[3]];
            out[across].insert(along);
            out[along].insert(across);
        }
        out
    }
}

/// Partitions the edges of `w` into walls. Wall ids follow the smallest edge
/// id they contain.
pub fn walls(w: &CubeWindow) -> Walls {
    let mut uf = UnionFind::new(w.edges().len());
    for c in w.cells() {
        let [b, r, t, l] = c.sides;
        uf.union(b, t);
        uf.union(l, r);
    }
    let mut root_id = vec![usize::MAX; w.edges().len()];
    let mut edge_wall = vec![0; w.edges().len()];
    let mut list: Vec<Wall> = Vec::new();
    for (e, edge) in w.edges().iter().enumerate() {
        let root = uf.find(e);
        if root_id[root] == usize::MAX {
            root_id[root] = list.len();
            list.push(Wall {
                id: list.len(),
                dual_edges: Vec::new(),
                orientation: edge.class.other(),
            });
        }
        let id = root_id[root];
        list[id].dual_edges.push(e);
        edge_wall[e] = id;
    }
    Walls { walls: list, edge_wall }
}

/// Walls are adjacent when their carriers meet, i.e. some dual edges of the
/// two walls share a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactGraph {
    pub adjacency: Vec<Vec<usize>>,
}

pub fn contact_graph(w: &CubeWindow, walls: &Walls) -> ContactGraph {
    let mut adj = vec![BTreeSet::new(); walls.len()];
    for incident in w.incidence() {
        let here: BTreeSet<usize> = incident.iter().map(|&e| walls.of_edge(e)).collect();
        for &a in &here {
            for &b in &here {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    ContactGraph { adjacency: adj.into_iter().map(|s| s.into_iter().collect()).collect() }
}

impl ContactGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.binary_search(&b).is_ok())
    }

    /// Hop counts from `source`; `None` for unreachable walls.
    pub fn bfs(&self, source: usize) -> Result<Vec<Option<usize>>, StaircaseError> {
        if source >= self.len() {
            return Err(StaircaseError::UnknownWall(source));
        }
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    pub fn to_dot(&self, walls: &Walls) -> String {
        let mut out = String::from("graph contact {\n");
        for w in &walls.walls {
            let shape = match w.orientation {
                EdgeClass::Horizontal => "box",
                EdgeClass::Vertical => "ellipse",
            };
            let _ = writeln!(out, "  w{} [shape={shape}];", w.id);
        }
        for (a, ns) in self.adjacency.iter().enumerate() {
            for &b in ns.iter().filter(|&&b| b > a) {
                let _ = writeln!(out, "  w{a} -- w{b};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first distance between two walls of a connected window.
pub fn contact_distance(g: &ContactGraph, a: usize, b: usize) -> Result<usize, StaircaseError> {
    if b >= g.len() {
        return Err(StaircaseError::UnknownWall(b));
    }
    g.bfs(a)?[b].ok_or(StaircaseError::Unreachable(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::window::Point;

    #[test]
    fn single_square_has_two_crossing_walls() {
        let w = CubeWindow::from_cells([Point::new(0, 0)]);
        let ws = walls(&w);
        assert_eq!(ws.len(), 2);
        assert!(ws.walls.iter().all(|x| x.dual_edges.len() == 2));
        let g = contact_graph(&w, &ws);
        assert_eq!(contact_distance(&g, 0, 1).unwrap(), 1);
        assert_eq!(ws.crossings(&w)[0].len(), 1);
    }

    #[test]
    fn strip_of_k_squares() {
        for k in 1..8 {
            let w = CubeWindow::from_cells((0..k).map(|x| Point::new(x, 0)));
            let ws = walls(&w);
            let vertical = ws.walls.iter().filter(|x| x.orientation == EdgeClass::Vertical).count();
            let horizontal = ws.walls.iter().filter(|x| x.orientation == EdgeClass::Horizontal).count();
            assert_eq!((vertical, horizontal), (k as usize, 1));
        }
    }

    #[test]
    fn unknown_and_unreachable() {
        let w = CubeWindow::from_cells([Point::new(0, 0), Point::new(5, 5)]);
        let ws = walls(&w);
        let g = contact_graph(&w, &ws);
        assert_eq!(contact_distance(&g, 0, 99).unwrap_err(), StaircaseError::UnknownWall(99));
        let far = ws.of_edge(w.edge_at(Point::new(5, 5), EdgeClass::Horizontal).unwrap());
        assert!(matches!(contact_distance(&g, 0, far), Err(StaircaseError::Unreachable(..))));
    }
}
