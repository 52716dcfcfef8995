//! Rectangle development in the universal cover.
//!
//! In a CSC presentation the south-west corner of a square determines the
//! square, so a rectangle is determined by its bottom and left words. Cells
//! are filled column by column from the south-west corner: each column takes
//! the current right-hand column as its left side and one bottom letter, and
//! produces one top letter. Columns are never revisited, which makes the top
//! word prefix-stable and lets it be streamed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{EdgeClass, OrientedEdge, Square, SquareComplexPresentation};
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DevelopError {
    #[error("presentation is not a complete square complex")]
    NotCsc,
    #[error("bottom word must be horizontal and left word vertical")]
    WrongClass,
    #[error("boundary words do not form paths from a common corner")]
    NotAPath,
}

/// Whether a rectangle keeps its cell grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellMode {
    #[default]
    BoundaryOnly,
    KeepCells,
}

/// A developed rectangle. `cells[c][r]` is the placed square in column `c`
/// (from the west) and row `r` (from the south), when kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub width: usize,
    pub height: usize,
    pub bottom: Word,
    pub left: Word,
    pub top: Word,
    pub right: Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<Square>>>,
}

fn check_inputs(p: &SquareComplexPresentation, bottom: &Word, left: &Word) -> Result<(), DevelopError> {
    if !p.is_csc() {
        return Err(DevelopError::NotCsc);
    }
    if bottom.class() != EdgeClass::Horizontal || left.class() != EdgeClass::Vertical {
        return Err(DevelopError::WrongClass);
    }
    if !p.is_one_vertex() {
        let path_ok = |w: &Word| w.letters().windows(2).all(|e| p.end(e[0]) == p.start(e[1]));
        if !path_ok(bottom) || !path_ok(left) {
            return Err(DevelopError::NotAPath);
        }
        if let (Some(b), Some(l)) = (bottom.letters().first(), left.letters().first()) {
            if p.start(*b) != p.start(*l) {
                return Err(DevelopError::NotAPath);
            }
        }
    }
    Ok(())
}

/// Fills the rectangle with the given bottom and left words.
pub fn fill_rectangle(
    p: &SquareComplexPresentation,
    bottom: &Word,
    left: &Word,
    mode: CellMode,
) -> Result<Rectangle, DevelopError> {
    check_inputs(p, bottom, left)?;
    let table = p.step_table().ok_or(DevelopError::NotCsc)?;
    let vg = p.germ_count(EdgeClass::Vertical);

    let mut column: Vec<usize> = left.germs().collect();
    let mut top = Vec::with_capacity(bottom.len());
    let mut cells = (mode == CellMode::KeepCells).then(|| Vec::with_capacity(bottom.len()));
    for b in bottom.germs() {
        let mut h = b;
        let mut col_cells = Vec::new();
        for v in column.iter_mut() {
            let (t, r) = table[h * vg + *v];
            if cells.is_some() {
                let hl = OrientedEdge::from_germ(EdgeClass::Horizontal, h);
                let vl = OrientedEdge::from_germ(EdgeClass::Vertical, *v);
                col_cells.push(p.corner(hl, vl).expect("CSC corner").cell);
            }
            h = t as usize;
            *v = r as usize;
        }
        top.push(h);
        if let Some(c) = cells.as_mut() {
            c.push(col_cells);
        }
    }

    Ok(Rectangle {
        width: bottom.len(),
        height: left.len(),
        bottom: bottom.clone(),
        left: left.clone(),
        top: Word::from_germs(EdgeClass::Horizontal, top),
        right: Word::from_germs(EdgeClass::Vertical, column),
        cells,
    })
}

pub fn develop_top(p: &SquareComplexPresentation, bottom: &Word, left: &Word) -> Result<Word, DevelopError> {
    Ok(fill_rectangle(p, bottom, left, CellMode::BoundaryOnly)?.top)
}

/// Side opposite the left word. Computed row by row from the south, so the
/// right word grows as the left word does.
pub fn develop_right(p: &SquareComplexPresentation, bottom: &Word, left: &Word) -> Result<Word, DevelopError> {
    check_inputs(p, bottom, left)?;
    let table = p.step_table().ok_or(DevelopError::NotCsc)?;
    let vg = p.germ_count(EdgeClass::Vertical);
    let mut row: Vec<usize> = bottom.germs().collect();
    let mut right = Vec::with_capacity(left.len());
    for l in left.germs() {
        let mut v = l;
        for h in row.iter_mut() {
            let (t, r) = table[*h * vg + v];
            *h = t as usize;
            v = r as usize;
        }
        right.push(v);
    }
    Ok(Word::from_germs(EdgeClass::Vertical, right))
}

/// Streams the top word of a rectangle of fixed left side whose bottom word
/// is supplied one letter at a time.
#[derive(Debug, Clone)]
pub struct TopStream<'a> {
    table: &'a [(u16, u16)],
    vg: usize,
    column: Vec<usize>,
    columns: usize,
}

impl<'a> TopStream<'a> {
    pub fn new(p: &'a SquareComplexPresentation, left: &Word) -> Result<Self, DevelopError> {
        if left.class() != EdgeClass::Vertical {
            return Err(DevelopError::WrongClass);
        }
        if !p.is_one_vertex() {
            return Err(DevelopError::NotAPath);
        }
        Ok(Self {
            table: p.step_table().ok_or(DevelopError::NotCsc)?,
            vg: p.germ_count(EdgeClass::Vertical),
            column: left.germs().collect(),
            columns: 0,
        })
    }

    /// Develops one more column with the given bottom letter and returns its
    /// top letter.
    pub fn push(&mut self, bottom: OrientedEdge) -> OrientedEdge {
        let mut h = bottom.germ();
        for v in self.column.iter_mut() {
            let (t, r) = self.table[h * self.vg + *v];
            h = t as usize;
            *v = r as usize;
        }
        self.columns += 1;
        OrientedEdge::from_germ(EdgeClass::Horizontal, h)
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// The current right-hand side.
    pub fn right(&self) -> Word {
        Word::from_germs(EdgeClass::Vertical, self.column.iter().copied())
    }
}
