use jackgraph::graph::{dim_recursive, dims_from, kingman_kappa, WeightedGraphView};
use jackgraph::partition::enumerate_up_to;
use jackgraph::rational::{int, ratio};
use jackgraph::{Partition, Rational};

/// Standard fillings of `ν / μ` counted by brute force over all orderings of
/// the skew cells.
fn skew_tableaux(mu: &Partition, nu: &Partition) -> usize {
    let cells: Vec<_> = nu.cells().filter(|c| !mu.contains_cell(*c)).collect();
    let k = cells.len();
    let mut order: Vec<usize> = (0..k).collect();
    let mut count = 0;
    loop {
        // order[i] is the label of cells[i]
        let label = |r: usize, c: usize| cells.iter().position(|x| x.row == r && x.col == c).map(|i| order[i]);
        let ok = cells.iter().enumerate().all(|(i, x)| {
            let right = label(x.row, x.col + 1).is_none_or(|l| l > order[i]);
            let below = label(x.row + 1, x.col).is_none_or(|l| l > order[i]);
            right && below
        });
        count += usize::from(ok);
        if !next_permutation(&mut order) {
            break;
        }
    }
    count
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[test]
fn theta_one_counts_skew_tableaux() {
    let view = WeightedGraphView::jack(int(1)).unwrap();
    for nu in enumerate_up_to(6) {
        for mu in enumerate_up_to(nu.size()) {
            let want = if mu.is_subset_of(&nu) { skew_tableaux(&mu, &nu) } else { 0 };
            assert_eq!(dim_recursive(&mu, &nu, &view).unwrap(), int(want as i64), "{mu} in {nu}");
        }
    }
}

#[test]
fn coherence_identity() {
    for t in [ratio(1, 3), ratio(1, 2), int(1), int(2)] {
        let view = WeightedGraphView::jack(t.clone()).unwrap();
        let dims = dims_from(&Partition::empty(), 8, &view).unwrap();
        for nu in enumerate_up_to(8).into_iter().filter(|n| !n.is_empty()) {
            let s: Rational = nu.cocovers().iter().map(|l| &dims[l] * view.kappa(l, &nu).unwrap()).sum();
            assert_eq!(s / &dims[&nu], int(1), "{nu}");
        }
    }
}

#[test]
fn kingman_view_matches_zero_limit() {
    let view = WeightedGraphView::kingman();
    for lam in enumerate_up_to(7) {
        for nu in lam.covers() {
            let k = view.kappa(&lam, &nu).unwrap();
            assert_eq!(k, jackgraph::jack::pieri_kappa_at_zero(&lam, &nu).unwrap());
            assert_eq!(k, int(kingman_kappa(&lam, &nu).unwrap() as i64));
        }
    }
    // Kingman dimensions: dim(∅, ν) counts weighted paths; for ν = (1^n) it is n!
    let dims = dims_from(&Partition::empty(), 6, &view).unwrap();
    assert_eq!(dims[&Partition::column(5)], int(120));
}

#[test]
fn zero_theta_is_rejected_by_the_jack_view() {
    assert!(WeightedGraphView::jack(int(0)).is_err());
    assert!(WeightedGraphView::jack(int(-1)).is_err());
}
