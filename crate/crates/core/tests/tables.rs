use std::time::Duration;

use uksat::hypercore::{complement_hypergraph, complementary_hypergraph};
use uksat::search::{classify_cell, existence_table, CellStatus, Provenance, TableBudget};
use uksat::verify::verify_uniquely_saturated;

fn budget() -> TableBudget {
    TableBudget { time: Some(Duration::from_secs(120)), threads: 1, symmetry: true, ..Default::default() }
}

fn glyphs(k: usize, ell: usize, ss: std::ops::RangeInclusive<usize>) -> Vec<String> {
    let t = existence_table(k, ell..=ell, ss, &budget()).unwrap();
    t.cells.iter().map(|c| c.glyph()).collect()
}

#[test]
fn graphs_small_window() {
    // rows n = r + 1 .. r + 4, columns r = 3 .. 5
    assert_eq!(glyphs(2, 1, 1..=3), ["N:search", "N:bound", "N:bound"]);
    assert_eq!(glyphs(2, 2, 1..=3), ["Y:search", "N:search", "N:bound"]);
    assert_eq!(glyphs(2, 3, 1..=3), ["N:search", "Y:search", "N:search"]);
    assert_eq!(glyphs(2, 4, 1..=3), ["N:search", "N:search", "Y:search"]);
}

#[test]
fn four_uniform_first_row() {
    assert_eq!(
        glyphs(4, 1, 1..=7),
        ["Y:thm3.2", "Y:thm5.1", "Y:thm5.1", "Y:thm5.1", "N:thm5.1", "N:thm5.1", "N:thm5.1"]
    );
}

#[test]
fn three_uniform_rows() {
    assert_eq!(glyphs(3, 1, 1..=4), ["N:search", "Y:thm5.1", "N:thm5.1", "N:thm5.1"]);
    assert_eq!(glyphs(3, 2, 1..=5), ["N:search", "Y:thm4.5", "Y:thm4.5", "Y:thm4.5", "Y:thm4.5"]);
}

#[test]
fn five_and_six_uniform_first_rows_switch_at_the_near_complete_limit() {
    let row = existence_table(5, 1..=1, 1..=7, &budget()).unwrap();
    let exists: Vec<usize> = row.cells.iter().filter(|c| c.status == CellStatus::Exists).map(|c| c.r).collect();
    assert_eq!(exists, (6..=11).collect::<Vec<_>>());
    let row = existence_table(6, 1..=1, 1..=10, &budget()).unwrap();
    let exists: Vec<usize> = row.cells.iter().filter(|c| c.status == CellStatus::Exists).map(|c| c.r).collect();
    assert_eq!(exists, (7..=15).collect::<Vec<_>>());
    assert_eq!(row.cells.last().unwrap().status, CellStatus::NotExists);
}

#[test]
fn three_uniform_seven_vertex_cell_is_found_by_search() {
    // r = 4, n = 7: a toroidal triangulation (the Császár polyhedron)
    let cell = classify_cell(3, 3, 1, &budget()).unwrap();
    assert_eq!((cell.status, cell.provenance), (CellStatus::Exists, Provenance::Search));
    let rr = cell.certificate.unwrap();
    let h = complementary_hypergraph(&rr).unwrap();
    assert!(verify_uniquely_saturated(&h, 4).unwrap().is_ok());
    // the non-edges are the 14 faces of a 7-vertex torus triangulation
    let faces = complement_hypergraph(&h);
    assert_eq!(faces.edge_count(), 14);
    for v in 1..=7 {
        assert_eq!(faces.degree(v), 6, "vertex {v} lies on six faces");
        for u in v + 1..=7 {
            let both = faces.edges().iter().filter(|e| e.contains(u) && e.contains(v)).count();
            assert_eq!(both, 2, "pair {{{v},{u}}} lies on two faces");
        }
    }
}

#[test]
fn monotonicity_report_and_tsv_layout() {
    let t = existence_table(2, 1..=4, 1..=3, &budget()).unwrap();
    // rows 3 and 4 open with a non-existence at r = 3
    assert_eq!(t.rows_monotone(), [(1, true), (2, true), (3, false), (4, false)]);
    let tsv = t.to_tsv();
    assert!(tsv.starts_with("# k=2\nn-r\\r\t3\t4\t5\n1\t"));
}
