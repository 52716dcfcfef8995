//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::time::Instant;

use common::{oracle_fill, periodic, random_word};
use cubulate::antitorus::{commuting_powers_search, find_periodic_top, overlap_gamma, AntiTorusError};
use cubulate::develop::{develop_top, fill_rectangle, CellMode, Rectangle};
use cubulate::obstruction::{facing_triple_free, obstruction_table, well_separation_of, ObstructionError};
use cubulate::staircase::{contact_distance, nonacyl_certificate, StairParams};
use cubulate::{AntiTorusQuery, Budgets, EdgeClass, SquareComplexPresentation, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture_query(p: &SquareComplexPresentation) -> AntiTorusQuery<'_> {
    AntiTorusQuery::new(p, periodic(p, EdgeClass::Horizontal, "a b"), periodic(p, EdgeClass::Vertical, "x")).unwrap()
}

fn fill(p: &SquareComplexPresentation, b: &Word, l: &Word) -> Rectangle {
    fill_rectangle(p, b, l, CellMode::BoundaryOnly).unwrap()
}

fn cut(w: &Word, k: usize) -> (Word, Word) {
    let (x, y) = w.letters().split_at(k);
    (Word::new(w.class(), x.to_vec()).unwrap(), Word::new(w.class(), y.to_vec()).unwrap())
}

/// Length preservation, prefix stability and both compositionality laws.
fn criterion_1() -> Outcome {
    let mut complexes = vec![common::torus()];
    complexes.extend(common::census_2_2());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for p in &complexes {
        for _ in 0..1000 {
            let nb = rng.gen_range(1..=40);
            let nl = rng.gen_range(1..=40);
            let b = random_word(&mut rng, p, EdgeClass::Horizontal, nb);
            let l = random_word(&mut rng, p, EdgeClass::Vertical, nl);
            let whole = fill(p, &b, &l);
            ensure!(whole.top.len() == nb && whole.right.len() == nl, "length changed");

            let kb = rng.gen_range(0..=nb);
            let (b1, b2) = cut(&b, kb);
            let west = fill(p, &b1, &l);
            ensure!(west.top.letters() == &whole.top.letters()[..kb], "top not prefix-stable");
            let east = fill(p, &b2, &west.right);
            ensure!(east.top.letters() == &whole.top.letters()[kb..], "horizontal law: top");
            ensure!(east.right == whole.right, "horizontal law: right");

            let kl = rng.gen_range(0..=nl);
            let (l1, l2) = cut(&l, kl);
            let south = fill(p, &b, &l1);
            ensure!(south.right.letters() == &whole.right.letters()[..kl], "right not prefix-stable");
            let north = fill(p, &south.top, &l2);
            ensure!(north.right.letters() == &whole.right.letters()[kl..], "vertical law: right");
            ensure!(north.top == whole.top, "vertical law: top");
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs over {} complexes, exact equality", complexes.len()))
}

fn criterion_2() -> Outcome {
    let p = common::anti_torus();
    let q = fixture_query(&p);
    let budgets = Budgets::default();
    let mut worst = 0.0f64;
    let mut js = Vec::new();
    for n in 1..=8 {
        let t0 = Instant::now();
        let top = find_periodic_top(&q, n, budgets.i_max).map_err(|e| format!("n={n}: {e}"))?;
        let base = q.w1().pow(n);
        ensure!(develop_top(&p, &base, &q.w2().pow(top.j)).unwrap() == base, "n={n}: v_j != w1^n");
        let g = overlap_gamma(&q, n, &budgets).map_err(|e| format!("n={n}: {e}"))?;
        ensure!(g.total_len >= n * q.w1().len(), "n={n}: |gamma| = {} < n|w1|", g.total_len);
        ensure!(g.contains_basepoint(), "n={n}: basepoint not in gamma");
        worst = worst.max(t0.elapsed().as_secs_f64());
        js.push(top.j);
        ensure!(worst < 60.0, "n={n} took {worst:.1}s");
    }
    Ok(format!("n=1..8, j = {js:?}, slowest n {worst:.2}s (< 60s)"))
}

fn criterion_3() -> Outcome {
    let p = common::anti_torus();
    let q = fixture_query(&p);
    let t = obstruction_table(&q, 8, (16, 16), &Budgets::default()).map_err(|e| e.to_string())?;
    ensure!(t.rows.len() == 8 && t.summary.rows_ok == 8, "only {} of 8 rows", t.summary.rows_ok);
    let mut last = 0;
    for r in &t.rows {
        let pr = r.projection.as_ref().unwrap();
        ensure!(pr.diam >= r.n * t.w1_len, "n={}: diam {} < {}", r.n, pr.diam, r.n * t.w1_len);
        ensure!(pr.diam > last, "n={}: diam not increasing", r.n);
        ensure!(pr.contains_basepoint, "n={}: basepoint missing", r.n);
        last = pr.diam;
    }
    ensure!(t.summary.diam_lower_bound_holds && t.summary.all_contain_basepoint, "summary flags");
    let diams: Vec<usize> = t.rows.iter().map(|r| r.projection.unwrap().diam).collect();
    Ok(format!("diam = {diams:?}, all through the basepoint, anti-torus certified to (16,16)"))
}

fn criterion_4() -> Outcome {
    let p = common::anti_torus();
    let q = fixture_query(&p);
    let t = obstruction_table(&q, 8, (16, 16), &Budgets::default()).map_err(|e| e.to_string())?;
    for r in &t.rows {
        let g = r.projection.unwrap().gamma;
        let w = well_separation_of(&g);
        let l = g.total_len as u64;
        ensure!(w.crossing_set_size == g.total_len, "n={}: crossing set size", r.n);
        ensure!(w.facing_triple_free, "n={}: facing triple", r.n);
        ensure!(w.triples_checked == l * l.saturating_sub(1) * l.saturating_sub(2) / 6, "n={}: triple count", r.n);
    }
    for l in 0..=60u64 {
        let (ok, checked) = facing_triple_free(l as usize);
        ensure!(ok && checked == l * l.saturating_sub(1) * l.saturating_sub(2) / 6, "L={l}");
    }
    Ok("every row: crossing set = |gamma|, all C(L,3) triples separated; L <= 60 swept".into())
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for (l, r) in [(4usize, 2usize), (6, 2), (10, 3)] {
        let m = l.div_ceil(r) + 1;
        let params = StairParams::new(l, r, 3 * m, 2).map_err(|e| e.to_string())?;
        ensure!(params.m() == m, "M formula");
        let c = nonacyl_certificate(params, 3 * m).map_err(|e| format!("(L={l}, r={r}): {e}"))?;
        ensure!(c.m == m, "(L={l}, r={r}): M = {}", c.m);
        ensure!(c.window.squares <= 100_000, "window too large");
        ensure!(c.family_distances.len() == m - 1, "family distances");
        let a = cubulate::staircase::analyze(params).unwrap();
        for i in 1..m {
            let d = contact_distance(&a.contact, a.family[0], a.family[i]).unwrap();
            ensure!(d == 2, "(L={l}, r={r}): d(H, g^{i}H) = {d}");
        }
        ensure!(a.crossing_counts.iter().all(|&k| k <= m), "a wall crosses more than M");
        ensure!(a.crossing_counts[a.h_v] == m && c.max_crossings == m, "H_v does not cross exactly M");
        ensure!(c.bfs_distance * m >= 3 * m, "BFS below p/M");
        summary.push(format!("(L={l},r={r}): M={m} d={} >= {}/{}", c.bfs_distance, 3 * m, m));
    }
    Ok(summary.join("; "))
}

fn criterion_6() -> Outcome {
    let p = common::torus();
    let q = AntiTorusQuery::new(&p, periodic(&p, EdgeClass::Horizontal, "a"), periodic(&p, EdgeClass::Vertical, "x"))
        .unwrap();
    ensure!(commuting_powers_search(&q, 16, 16) == Some((1, 1)), "commuting search");
    match overlap_gamma(&q, 1, &Budgets::default()) {
        Err(AntiTorusError::PeriodicFlatSuspected { .. }) => {}
        other => return Err(format!("overlap_gamma: {other:?}")),
    }
    match obstruction_table(&q, 8, (16, 16), &Budgets::default()) {
        Err(ObstructionError::NotAntiTorus { k: 1, j: 1 }) => {}
        other => return Err(format!("obstruction_table produced {other:?}")),
    }
    let anti = common::anti_torus();
    ensure!(commuting_powers_search(&fixture_query(&anti), 16, 16).is_none(), "fixture commutes");
    Ok("torus: (1,1), periodic flat, no table; fixture: no commuting powers".into())
}

fn criterion_7() -> Outcome {
    let complexes = common::census_2_2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..10_000 {
        let p = &complexes[rng.gen_range(0..complexes.len())];
        let nb = rng.gen_range(0..=30);
        let nl = rng.gen_range(0..=30);
        let b = random_word(&mut rng, p, EdgeClass::Horizontal, nb);
        let l = random_word(&mut rng, p, EdgeClass::Vertical, nl);
        let rect = fill_rectangle(p, &b, &l, CellMode::KeepCells).unwrap();
        let oracle = oracle_fill(p, b.letters(), l.letters());
        ensure!(rect.top.letters() == &oracle.top[..], "rectangle {k}: top differs");
        ensure!(rect.right.letters() == &oracle.right[..], "rectangle {k}: right differs");
        ensure!(rect.cells.as_ref() == Some(&oracle.cells), "rectangle {k}: cells differ");
    }
    Ok("10000 rectangles, top/right/cells identical to the row-major oracle".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("development laws", criterion_1),
        ("periodic top and overlap", criterion_2),
        ("obstruction table", criterion_3),
        ("well-separation", criterion_4),
        ("staircase certificate", criterion_5),
        ("torus control", criterion_6),
        ("oracle equivalence", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.2}s] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
