//! Shared fixtures and independent oracles for the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use cubulate::complex::{enumerate_csc, parse_complex, CensusOptions, OrientedEdge, Sign, Square};
use cubulate::{EdgeClass, PeriodicWord, SquareComplexPresentation, Word};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load(name: &str) -> SquareComplexPresentation {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    parse_complex(&text).unwrap()
}

pub fn torus() -> SquareComplexPresentation {
    load("torus.sqc")
}

pub fn anti_torus() -> SquareComplexPresentation {
    load("anti_torus.sqc")
}

pub fn census_2_2() -> Vec<SquareComplexPresentation> {
    enumerate_csc(2, 2, &CensusOptions::default()).unwrap()
}

pub fn periodic(p: &SquareComplexPresentation, class: EdgeClass, text: &str) -> PeriodicWord {
    PeriodicWord::new(Word::parse(p, class, text).unwrap()).unwrap()
}

/// Uniform random freely reduced word of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, p: &SquareComplexPresentation, class: EdgeClass, len: usize) -> Word {
    let n = p.edges(class).len() as u32;
    let mut letters: Vec<OrientedEdge> = Vec::with_capacity(len);
    while letters.len() < len {
        let sign = if rng.gen() { Sign::Pos } else { Sign::Neg };
        let e = OrientedEdge::new(class, rng.gen_range(0..n), sign);
        if letters.last().is_some_and(|&last| last == e.inverse()) {
            continue;
        }
        letters.push(e);
    }
    Word::new(class, letters).unwrap()
}

/// Result of the reference development.
pub struct OracleRect {
    pub top: Vec<OrientedEdge>,
    pub right: Vec<OrientedEdge>,
    /// `cells[c][r]`, column from the west, row from the south.
    pub cells: Vec<Vec<Square>>,
}

/// Row-major development that looks every cell up by scanning all squares
/// and all four of their placements. It does not use the corner table.
pub fn oracle_fill(p: &SquareComplexPresentation, bottom: &[OrientedEdge], left: &[OrientedEdge]) -> OracleRect {
    let mut row: Vec<OrientedEdge> = bottom.to_vec();
    let mut right = Vec::with_capacity(left.len());
    let mut cells = vec![Vec::with_capacity(left.len()); bottom.len()];
    for &l in left {
        let mut v = l;
        for (c, h) in row.iter_mut().enumerate() {
            let found: Vec<Square> = p
                .squares()
                .iter()
                .flat_map(|s| s.placements().map(|(_, q)| q))
                .filter(|q| q.bottom == *h && q.left == v)
                .collect();
            assert_eq!(found.len(), 1, "corner ({h:?}, {v:?}) must lie in exactly one square");
            let q = found[0];
            cells[c].push(q);
            *h = q.top;
            v = q.right;
        }
        right.push(v);
    }
    OracleRect { top: row, right, cells }
}

/// Number of CSC classes with one horizontal and one vertical edge, by brute
/// force over all single squares and all relabelings and placements.
pub fn brute_force_census_1_1() -> usize {
    let h = |s: Sign| OrientedEdge::new(EdgeClass::Horizontal, 0, s);
    let v = |s: Sign| OrientedEdge::new(EdgeClass::Vertical, 0, s);
    let signs = [Sign::Pos, Sign::Neg];
    let flip = |e: OrientedEdge, f: bool| if f { e.inverse() } else { e };
    let mut classes = std::collections::BTreeSet::new();
    for sb in signs {
        for sr in signs {
            for st in signs {
                for sl in signs {
                    let sq = Square::new(h(sb), v(sr), h(st), v(sl));
                    let corners: std::collections::BTreeSet<_> =
                        sq.placements().iter().map(|(_, q)| (q.bottom, q.left)).collect();
                    if corners.len() != 4 {
                        continue;
                    }
                    let mut best = None;
                    for fh in [false, true] {
                        for fv in [false, true] {
                            let r = Square::new(flip(sq.bottom, fh), flip(sq.right, fv), flip(sq.top, fh), flip(sq.left, fv));
                            for (_, q) in r.placements() {
                                best = Some(best.map_or(q, |b: Square| b.min(q)));
                            }
                        }
                    }
                    classes.insert(best.unwrap());
                }
            }
        }
    }
    classes.len()
}
