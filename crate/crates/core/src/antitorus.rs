//! Anti-torus screening and long finite overlaps of `w1`-geodesics with the
//! flat spanned by the two axes.
//!
//! Heights and lengths are measured in edges. The basepoint is the south-west
//! corner of every developed rectangle; the flat's row at height `j·|w2|`
//! is the top side of the rectangle with left side `w2^j`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{EdgeClass, SquareComplexPresentation};
use crate::develop::{fill_rectangle, develop_top, CellMode, DevelopError, TopStream};
use crate::word::{PeriodicWord, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AntiTorusError {
    #[error("presentation is not a complete square complex")]
    NotCsc,
    #[error("anti-torus queries need a one-vertex presentation")]
    MultiVertex,
    #[error("w1 must be horizontal and w2 vertical")]
    WrongClass,
    #[error("budget exceeded: no repeated top word within i_max = {i_max} rows")]
    PigeonholeBudget { i_max: usize },
    #[error("budget exceeded: no mismatch within k_max = {k_max} periods; periodic flat suspected, anti-torus hypothesis may fail")]
    PeriodicFlatSuspected { k_max: usize },
    #[error("soundness check failed: {0}")]
    Unsound(String),
    #[error(transparent)]
    Develop(#[from] DevelopError),
}

impl AntiTorusError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            AntiTorusError::PigeonholeBudget { .. } | AntiTorusError::PeriodicFlatSuspected { .. }
        )
    }
}

/// Search limits. `i_max` caps the number of developed top words in the
/// pigeonhole search, `k_max` the number of `w1` periods scanned for a
/// mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub i_max: usize,
    pub k_max: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self { i_max: 1_000_000, k_max: 10_000 }
    }
}

#[derive(Debug, Clone)]
pub struct AntiTorusQuery<'a> {
    complex: &'a SquareComplexPresentation,
    w1: PeriodicWord,
    w2: PeriodicWord,
}

impl<'a> AntiTorusQuery<'a> {
    pub fn new(
        complex: &'a SquareComplexPresentation,
        w1: PeriodicWord,
        w2: PeriodicWord,
    ) -> Result<Self, AntiTorusError> {
        if !complex.is_csc() {
            return Err(AntiTorusError::NotCsc);
        }
        if !complex.is_one_vertex() {
            return Err(AntiTorusError::MultiVertex);
        }
        if w1.class() != EdgeClass::Horizontal || w2.class() != EdgeClass::Vertical {
            return Err(AntiTorusError::WrongClass);
        }
        Ok(Self { complex, w1, w2 })
    }

    pub fn complex(&self) -> &'a SquareComplexPresentation {
        self.complex
    }

    pub fn w1(&self) -> &PeriodicWord {
        &self.w1
    }

    pub fn w2(&self) -> &PeriodicWord {
        &self.w2
    }
}

/// Smallest `(k, j)` in lexicographic order, `1 <= k <= k_max`,
/// `1 <= j <= j_max`, whose rectangle on `w1^k` and `w2^j` closes up into a
/// torus relation. `None` certifies the anti-torus hypothesis up to the bounds.
pub fn commuting_powers_search(q: &AntiTorusQuery<'_>, k_max: usize, j_max: usize) -> Option<(usize, usize)> {
    let p = q.complex;
    for k in 1..=k_max {
        let bottom = q.w1.pow(k);
        // Stack blocks of height |w2|; the right side accumulates block by block.
        let mut top = bottom.clone();
        let mut right = Vec::new();
        for j in 1..=j_max {
            let r = fill_rectangle(p, &top, q.w2.period(), CellMode::BoundaryOnly)
                .expect("query inputs were validated");
            top = r.top;
            right.extend_from_slice(r.right.letters());
            if top == bottom && right.chunks(q.w2.len()).all(|c| c == q.w2.period().letters()) {
                debug_assert_eq!(right.len(), j * q.w2.len());
                return Some((k, j));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicTop {
    /// Vertical exponent with `develop_top(w1^n, w2^j) = w1^n`.
    pub j: usize,
    /// Smallest `i >= 1` with `v_i = v_{i+j}`.
    pub first_repeat: usize,
}

/// Largest number of rows the pigeonhole argument can need: one more than the
/// number of words of length `len` over `germs` letters, saturating.
pub fn pigeonhole_bound(germs: usize, len: usize) -> u128 {
    (germs as u128).checked_pow(len as u32).map_or(u128::MAX, |x| x.saturating_add(1))
}

/// Develops `v_i = develop_top(w1^n, w2^i)` for `i = 1, 2, ...` until some
/// `v_i` repeats as `v_{i+j}`, then checks that `develop_top(w1^n, w2^j)` is
/// `w1^n` again.
pub fn find_periodic_top(q: &AntiTorusQuery<'_>, n: usize, i_max: usize) -> Result<PeriodicTop, AntiTorusError> {
    let p = q.complex;
    let base = q.w1.pow(n);
    let mut seen: HashMap<Box<[u8]>, usize> = HashMap::new();
    let mut v = base.clone();
    let mut i = 0;
    let found = loop {
        if i >= i_max {
            return Err(AntiTorusError::PigeonholeBudget { i_max });
        }
        v = develop_top(p, &v, q.w2.period())?;
        i += 1;
        let key: Box<[u8]> = v.germs().map(|g| g as u8).collect();
        if let Some(&first) = seen.get(&key) {
            break PeriodicTop { j: i - first, first_repeat: first };
        }
        seen.insert(key, i);
    };

    let bound = pigeonhole_bound(p.germ_count(EdgeClass::Horizontal), base.len());
    if ((found.first_repeat + found.j) as u128) > bound {
        return Err(AntiTorusError::Unsound(format!(
            "repeat at row {} exceeds the pigeonhole bound {bound}",
            found.first_repeat + found.j
        )));
    }
    let check = develop_top(p, &base, &q.w2.pow(found.j))?;
    if check != base {
        return Err(AntiTorusError::Unsound(format!(
            "develop_top(w1^{n}, w2^{}) differs from w1^{n}",
            found.j
        )));
    }
    Ok(found)
}

/// The overlap `γ × {y}` of a `w1`-geodesic with the flat, around the
/// basepoint column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub n: usize,
    pub j: usize,
    pub left_len: usize,
    pub right_len: usize,
    pub total_len: usize,
    pub y_offset: usize,
}

impl GammaResult {
    /// Whether the basepoint column lies on `γ`, which runs from
    /// `-left_len` to `right_len`.
    pub fn contains_basepoint(&self) -> bool {
        self.total_len == self.left_len + self.right_len
    }
}

/// Length of the common prefix of `period^∞` and the top row of the quadrant
/// with left side `left` and bottom `period^∞`, scanning at most `limit`
/// columns.
fn ray_overlap(p: &SquareComplexPresentation, period: &PeriodicWord, left: &Word, limit: usize) -> Result<Option<usize>, DevelopError> {
    let mut stream = TopStream::new(p, left)?;
    for c in 0..limit {
        let expected = period.letter(c);
        if stream.push(expected) != expected {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `γ` on the row at height `j·|w2|`. The westward part is read in the
/// mirrored complex, where the westward ray of `w1^∞` is the eastward ray of
/// `w1^{-1}`.
pub fn overlap_at_height(q: &AntiTorusQuery<'_>, n: usize, j: usize, k_max: usize) -> Result<GammaResult, AntiTorusError> {
    let p = q.complex;
    let left = q.w2.pow(j);
    let limit = k_max.saturating_mul(q.w1.len());
    let right_len = ray_overlap(p, &q.w1, &left, limit)?.ok_or(AntiTorusError::PeriodicFlatSuspected { k_max })?;
    let mirror = p.mirrored();
    let left_len = ray_overlap(&mirror, &q.w1.inverse(), &left, limit)?
        .ok_or(AntiTorusError::PeriodicFlatSuspected { k_max })?;
    Ok(GammaResult {
        n,
        j,
        left_len,
        right_len,
        total_len: left_len + right_len,
        y_offset: j * q.w2.len(),
    })
}

/// Finds a `w1`-geodesic meeting the flat in a finite path of length at least
/// `n·|w1|` through the basepoint column.
pub fn overlap_gamma(q: &AntiTorusQuery<'_>, n: usize, budgets: &Budgets) -> Result<GammaResult, AntiTorusError> {
    let top = find_periodic_top(q, n, budgets.i_max)?;
    let g = overlap_at_height(q, n, top.j, budgets.k_max)?;
    if g.right_len < n * q.w1.len() {
        return Err(AntiTorusError::Unsound(format!(
            "overlap {} shorter than w1^{n}",
            g.right_len
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::parse_complex;

    fn query<'a>(p: &'a SquareComplexPresentation, w1: &str, w2: &str) -> AntiTorusQuery<'a> {
        let w1 = PeriodicWord::new(Word::parse(p, EdgeClass::Horizontal, w1).unwrap()).unwrap();
        let w2 = PeriodicWord::new(Word::parse(p, EdgeClass::Vertical, w2).unwrap()).unwrap();
        AntiTorusQuery::new(p, w1, w2).unwrap()
    }

    #[test]
    fn torus_commutes_immediately() {
        let t = parse_complex("hedges: a\nvedges: x\nsquare: a x a x\n").unwrap();
        let q = query(&t, "a", "x");
        assert_eq!(commuting_powers_search(&q, 4, 4), Some((1, 1)));
        assert_eq!(find_periodic_top(&q, 2, 10).unwrap(), PeriodicTop { j: 1, first_repeat: 1 });
        assert_eq!(
            overlap_gamma(&q, 1, &Budgets { i_max: 10, k_max: 50 }).unwrap_err(),
            AntiTorusError::PeriodicFlatSuspected { k_max: 50 }
        );
    }

    #[test]
    fn klein_bottle_needs_even_powers() {
        let k = parse_complex("hedges: a\nvedges: x\nsquare: a x -a x\n").unwrap();
        let q = query(&k, "a", "x");
        assert_eq!(commuting_powers_search(&q, 4, 4), Some((1, 2)));
        assert_eq!(find_periodic_top(&q, 3, 10).unwrap().j, 2);
    }

    #[test]
    fn budgets_and_bad_queries() {
        let t = parse_complex("hedges: a\nvedges: x\nsquare: a x a x\n").unwrap();
        let q = query(&t, "a", "x");
        assert_eq!(
            find_periodic_top(&q, 1, 0).unwrap_err(),
            AntiTorusError::PigeonholeBudget { i_max: 0 }
        );
        let w = PeriodicWord::new(Word::parse(&t, EdgeClass::Horizontal, "a").unwrap()).unwrap();
        assert_eq!(AntiTorusQuery::new(&t, w.clone(), w.clone()).unwrap_err(), AntiTorusError::WrongClass);
        let bad = parse_complex("hedges: a\nvedges: x\n").unwrap();
        let x = PeriodicWord::new(Word::parse(&bad, EdgeClass::Vertical, "x").unwrap()).unwrap();
        assert_eq!(AntiTorusQuery::new(&bad, w, x).unwrap_err(), AntiTorusError::NotCsc);
    }

    #[test]
    fn pigeonhole_bound_saturates() {
        assert_eq!(pigeonhole_bound(4, 3), 65);
        assert_eq!(pigeonhole_bound(6, 200), u128::MAX);
    }
}
