mod common;

use std::sync::OnceLock;

use common::{oracle_fill, random_word};
use cubulate::complex::{parse_complex, serialize_complex};
use cubulate::develop::{develop_right, develop_top, fill_rectangle, CellMode, TopStream};
use cubulate::{EdgeClass, SquareComplexPresentation, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complexes() -> &'static [SquareComplexPresentation] {
    static ALL: OnceLock<Vec<SquareComplexPresentation>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut v = vec![common::torus(), common::anti_torus()];
        v.extend(common::census_2_2());
        v
    })
}

fn words(idx: usize, seed: u64, nb: usize, nl: usize) -> (&'static SquareComplexPresentation, Word, Word) {
    let p = &complexes()[idx % complexes().len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_word(&mut rng, p, EdgeClass::Horizontal, nb);
    let l = random_word(&mut rng, p, EdgeClass::Vertical, nl);
    (p, b, l)
}

fn split(w: &Word, k: usize) -> (Word, Word) {
    let (x, y) = w.letters().split_at(k);
    (Word::new(w.class(), x.to_vec()).unwrap(), Word::new(w.class(), y.to_vec()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_row_major_oracle(idx in 0usize..200, seed: u64, nb in 0usize..25, nl in 0usize..25) {
        let (p, b, l) = words(idx, seed, nb, nl);
        let rect = fill_rectangle(p, &b, &l, CellMode::KeepCells).unwrap();
        let oracle = oracle_fill(p, b.letters(), l.letters());
        prop_assert_eq!(rect.top.letters(), &oracle.top[..]);
        prop_assert_eq!(rect.right.letters(), &oracle.right[..]);
        prop_assert_eq!(rect.cells.unwrap(), oracle.cells);
    }

    #[test]
    fn lengths_and_prefixes(idx in 0usize..200, seed: u64, nb in 1usize..41, nl in 1usize..41, cut in 0usize..41) {
        let (p, b, l) = words(idx, seed, nb, nl);
        let rect = fill_rectangle(p, &b, &l, CellMode::BoundaryOnly).unwrap();
        prop_assert_eq!((rect.top.len(), rect.right.len()), (nb, nl));
        let kb = cut.min(nb);
        let top = develop_top(p, &split(&b, kb).0, &l).unwrap();
        prop_assert_eq!(top.letters(), &rect.top.letters()[..kb]);
        let kl = cut.min(nl);
        let right = develop_right(p, &b, &split(&l, kl).0).unwrap();
        prop_assert_eq!(right.letters(), &rect.right.letters()[..kl]);
    }

    #[test]
    fn compositionality(idx in 0usize..200, seed: u64, nb in 1usize..41, nl in 1usize..41, cb in 0usize..41, cl in 0usize..41) {
        let (p, b, l) = words(idx, seed, nb, nl);
        let whole = fill_rectangle(p, &b, &l, CellMode::BoundaryOnly).unwrap();

        let (b1, b2) = split(&b, cb.min(nb));
        let west = fill_rectangle(p, &b1, &l, CellMode::BoundaryOnly).unwrap();
        let east = fill_rectangle(p, &b2, &west.right, CellMode::BoundaryOnly).unwrap();
        let top: Vec<_> = west.top.letters().iter().chain(east.top.letters()).copied().collect();
        prop_assert_eq!(&top[..], whole.top.letters());
        prop_assert_eq!(&east.right, &whole.right);

        let (l1, l2) = split(&l, cl.min(nl));
        let south = fill_rectangle(p, &b, &l1, CellMode::BoundaryOnly).unwrap();
        let north = fill_rectangle(p, &south.top, &l2, CellMode::BoundaryOnly).unwrap();
        let right: Vec<_> = south.right.letters().iter().chain(north.right.letters()).copied().collect();
        prop_assert_eq!(&right[..], whole.right.letters());
        prop_assert_eq!(&north.top, &whole.top);
    }

    #[test]
    fn streamed_top_agrees(idx in 0usize..200, seed: u64, nb in 0usize..41, nl in 0usize..41) {
        let (p, b, l) = words(idx, seed, nb, nl);
        let mut stream = TopStream::new(p, &l).unwrap();
        let streamed: Vec<_> = b.letters().iter().map(|&e| stream.push(e)).collect();
        let rect = fill_rectangle(p, &b, &l, CellMode::BoundaryOnly).unwrap();
        prop_assert_eq!(&streamed[..], rect.top.letters());
        prop_assert_eq!(stream.right(), rect.right);
    }

    #[test]
    fn inverse_rectangle_develops_back(idx in 0usize..200, seed: u64, nb in 1usize..30, nl in 1usize..30) {
        // Reflecting a developed rectangle east-west gives the rectangle with
        // bottom `b⁻¹` and left side the old right side.
        let (p, b, l) = words(idx, seed, nb, nl);
        let rect = fill_rectangle(p, &b, &l, CellMode::BoundaryOnly).unwrap();
        let back = fill_rectangle(p, &b.inverse(), &rect.right, CellMode::BoundaryOnly).unwrap();
        prop_assert_eq!(back.top, rect.top.inverse());
        prop_assert_eq!(back.right, l);
    }

    #[test]
    fn serialize_round_trip(idx in 0usize..200) {
        let p = &complexes()[idx % complexes().len()];
        let again = parse_complex(&serialize_complex(p)).unwrap();
        prop_assert_eq!(again.squares(), p.squares());
        prop_assert_eq!(again.hedges(), p.hedges());
        prop_assert_eq!(again.vedges(), p.vedges());
    }
}

#[test]
fn develop_is_deterministic() {
    let (p, b, l) = words(7, 42, 40, 40);
    let a = fill_rectangle(p, &b, &l, CellMode::KeepCells).unwrap();
    let c = fill_rectangle(p, &b, &l, CellMode::KeepCells).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
}
