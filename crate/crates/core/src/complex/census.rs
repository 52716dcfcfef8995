//! Census of one-vertex CSC presentations with small edge counts.
//!
//! Squares are found by exact cover of the corner pairs: the smallest
//! uncovered pair `(h, v)` must be the south-west corner of some square
//! `(h, r, t, v)`, and that square covers the four pairs of its placements.
//! Every set of squares is reached exactly once. Results are then reduced
//! modulo relabeling and inversion of edges within each class.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::{EdgeClass, OrientedEdge, Square, SquareComplexPresentation};

const HNAMES: [&str; 3] = ["a", "b", "c"];
const VNAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Work limit across all workers: one unit per search node plus one per
    /// relabeling tried when canonicalizing a complete presentation.
    pub node_budget: u64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { node_budget: 20_000_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("edge counts ({h}, {v}) out of range: at most 3 per class")]
    OutOfRange { h: usize, v: usize },
    #[error("census search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
}

type RawSquare = [u8; 4];

fn placements(s: RawSquare) -> [RawSquare; 4] {
    let [b, r, t, l] = s;
    [
        [b, r, t, l],
        [b ^ 1, l, t ^ 1, r],
        [t, r ^ 1, b, l ^ 1],
        [t ^ 1, l ^ 1, b ^ 1, r ^ 1],
    ]
}

fn canonical_square(s: RawSquare) -> RawSquare {
    placements(s).into_iter().min().unwrap()
}

/// Germ maps for every permutation and inversion pattern of `n` labels.
fn relabelings(n: usize) -> Vec<Vec<u8>> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in &perms {
        for flips in 0..(1u32 << n) {
            out.push(
                (0..2 * n)
                    .map(|g| {
                        let label = g >> 1;
                        let flip = ((flips >> label) & 1) as usize;
                        (2 * p[label] + ((g & 1) ^ flip)) as u8
                    })
                    .collect(),
            );
        }
    }
    out
}

fn canonical_raw(squares: &[RawSquare], hmaps: &[Vec<u8>], vmaps: &[Vec<u8>]) -> Vec<RawSquare> {
    let mut best: Option<Vec<RawSquare>> = None;
    let mut buf = Vec::with_capacity(squares.len());
    for hm in hmaps {
        for vm in vmaps {
            buf.clear();
            buf.extend(squares.iter().map(|&[b, r, t, l]| {
                canonical_square([
                    hm[b as usize],
                    vm[r as usize],
                    hm[t as usize],
                    vm[l as usize],
                ])
            }));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    best.unwrap_or_default()
}

fn to_raw(s: &Square) -> RawSquare {
    [s.bottom.germ(), s.right.germ(), s.top.germ(), s.left.germ()].map(|g| g as u8)
}

fn from_raw(s: RawSquare) -> Square {
    let h = |g: u8| OrientedEdge::from_germ(EdgeClass::Horizontal, g as usize);
    let v = |g: u8| OrientedEdge::from_germ(EdgeClass::Vertical, g as usize);
    Square::new(h(s[0]), v(s[1]), h(s[2]), v(s[3]))
}

/// Canonical representative of a one-vertex presentation's squares under
/// relabeling and inversion of edges within each class. Two one-vertex
/// presentations are isomorphic as labeled VH-complexes up to those moves iff
/// their canonical forms agree.
pub fn canonical_form(p: &SquareComplexPresentation) -> Vec<Square> {
    let hmaps = relabelings(p.hedges().len());
    let vmaps = relabelings(p.vedges().len());
    let raw: Vec<RawSquare> = p.squares().iter().map(to_raw).collect();
    canonical_raw(&raw, &hmaps, &vmaps).into_iter().map(from_raw).collect()
}

struct Search<'a> {
    hg: usize,
    vg: usize,
    used: Vec<bool>,
    squares: Vec<RawSquare>,
    found: BTreeSet<Vec<RawSquare>>,
    hmaps: &'a [Vec<u8>],
    vmaps: &'a [Vec<u8>],
    nodes: &'a AtomicU64,
    budget: u64,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    /// Covers the four corners of `s`; returns false (and changes nothing) if
    /// any of them is taken or two coincide.
    fn place(&mut self, s: RawSquare) -> bool {
        let keys = placements(s).map(|p| p[0] as usize * self.vg + p[3] as usize);
        for i in 0..4 {
            if self.used[keys[i]] || keys[..i].contains(&keys[i]) {
                return false;
            }
        }
        for k in keys {
            self.used[k] = true;
        }
        self.squares.push(s);
        true
    }

    fn unplace(&mut self) {
        let s = self.squares.pop().unwrap();
        for p in placements(s) {
            self.used[p[0] as usize * self.vg + p[3] as usize] = false;
        }
    }

    fn run(&mut self) {
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.abort.store(true, Ordering::Relaxed);
            return;
        }
        let Some(free) = self.used.iter().position(|u| !u) else {
            // Canonicalizing tries every relabeling; charge for it.
            let cost = (self.hmaps.len() * self.vmaps.len()) as u64;
            if self.nodes.fetch_add(cost, Ordering::Relaxed) + cost > self.budget {
                self.abort.store(true, Ordering::Relaxed);
                return;
            }
            self.found.insert(canonical_raw(&self.squares, self.hmaps, self.vmaps));
            return;
        };
        let (h, v) = ((free / self.vg) as u8, (free % self.vg) as u8);
        for t in 0..self.hg as u8 {
            for r in 0..self.vg as u8 {
                if self.place([h, r, t, v]) {
                    self.run();
                    self.unplace();
                }
            }
        }
    }
}

/// Every one-vertex CSC presentation with `h` horizontal and `v` vertical
/// edges, one per relabeling class, in increasing canonical order.
///
/// Horizontal labels are named `a b c`, vertical ones `x y z`.
pub fn enumerate_csc(
    h: usize,
    v: usize,
    opts: &CensusOptions,
) -> Result<Vec<SquareComplexPresentation>, CensusError> {
    if h > 3 || v > 3 {
        return Err(CensusError::OutOfRange { h, v });
    }
    if h == 0 || v == 0 {
        return Ok(Vec::new());
    }
    let (hg, vg) = (2 * h, 2 * v);
    let hmaps = relabelings(h);
    let vmaps = relabelings(v);
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);

    // The corner (a, x) is covered by one of hg * vg first squares; split the
    // search there.
    let firsts: Vec<RawSquare> = (0..hg as u8)
        .flat_map(|t| (0..vg as u8).map(move |r| [0, r, t, 0]))
        .collect();
    let parts: Vec<BTreeSet<Vec<RawSquare>>> = firsts
        .par_iter()
        .map(|&first| {
            let mut s = Search {
                hg,
                vg,
                used: vec![false; hg * vg],
                squares: Vec::new(),
                found: BTreeSet::new(),
                hmaps: &hmaps,
                vmaps: &vmaps,
                nodes: &nodes,
                budget: opts.node_budget,
                abort: &abort,
            };
            if s.place(first) {
                s.run();
            }
            s.found
        })
        .collect();
    if abort.load(Ordering::Relaxed) {
        return Err(CensusError::BudgetExceeded { budget: opts.node_budget });
    }

    let all: BTreeSet<Vec<RawSquare>> = parts.into_iter().flatten().collect();
    Ok(all
        .into_iter()
        .map(|raw| {
            let squares = raw.into_iter().map(from_raw).collect();
            SquareComplexPresentation::one_vertex(&HNAMES[..h], &VNAMES[..v], squares)
                .expect("census squares use declared labels")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_group_orders() {
        assert_eq!(relabelings(1).len(), 2);
        assert_eq!(relabelings(2).len(), 8);
        assert_eq!(relabelings(3).len(), 48);
        for m in relabelings(3) {
            let mut sorted = m.clone();
            sorted.sort();
            assert_eq!(sorted, (0..6).collect::<Vec<u8>>());
            for g in 0..6u8 {
                assert_eq!(m[(g ^ 1) as usize], m[g as usize] ^ 1);
            }
        }
    }

    #[test]
    fn empty_classes_give_empty_census() {
        let o = CensusOptions::default();
        assert!(enumerate_csc(0, 1, &o).unwrap().is_empty());
        assert!(enumerate_csc(2, 0, &o).unwrap().is_empty());
        assert_eq!(enumerate_csc(4, 1, &o).unwrap_err(), CensusError::OutOfRange { h: 4, v: 1 });
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_csc(2, 2, &CensusOptions { node_budget: 10 }).unwrap_err();
        assert!(matches!(err, CensusError::BudgetExceeded { .. }));
    }

    #[test]
    fn census_members_are_csc_and_canonical() {
        let census = enumerate_csc(2, 2, &CensusOptions::default()).unwrap();
        for p in &census {
            assert!(p.is_csc());
            assert_eq!(canonical_form(p), p.squares());
            assert_eq!(p.squares().len(), 4);
        }
    }
}
