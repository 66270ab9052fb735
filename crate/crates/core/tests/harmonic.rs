use std::collections::BTreeMap;

use jackgraph::boundary::{moments_of, recover_thoma_from_moments, thoma_grid};
use jackgraph::harmonic::{harmonic_from_measure, level_distribution, AtomicMeasure};
use jackgraph::rational::{int, ratio};
use jackgraph::{Partition, Rational};

/// φ on levels <= 4, as a comparable key.
fn profile(m: &AtomicMeasure, t: &Rational) -> BTreeMap<Partition, Rational> {
    harmonic_from_measure(m.clone(), t).unwrap().materialize(4)
}

#[test]
fn distinct_two_atom_measures_give_distinct_functions() {
    let grid: Vec<_> = thoma_grid(50).into_iter().step_by(5).collect();
    for t in [ratio(1, 2), int(2)] {
        let mut seen: Vec<(String, BTreeMap<Partition, Rational>)> = Vec::new();
        for i in 0..grid.len() {
            for j in i + 1..grid.len() {
                for w in [ratio(1, 2), ratio(1, 3)] {
                    let m = AtomicMeasure::new([(grid[i].clone(), w.clone()), (grid[j].clone(), int(1) - &w)]).unwrap();
                    let label = format!("{w}@{} + rest@{}", grid[i], grid[j]);
                    let f = profile(&m, &t);
                    if let Some((other, _)) = seen.iter().find(|(_, g)| *g == f) {
                        panic!("{label} and {other} agree on levels <= 4");
                    }
                    seen.push((label, f));
                }
            }
        }
    }
}

#[test]
fn moment_form_and_uniqueness() {
    for t in [ratio(1, 2), int(1), int(2)] {
        for w in thoma_grid(50) {
            for (j, m) in moments_of(&w, &t, 6).iter().enumerate() {
                let k = j + 2;
                let direct: Rational = w.alpha().iter().map(|a| jackgraph::rational::pow(a, k)).sum::<Rational>()
                    + jackgraph::rational::pow(&-t.clone(), k - 1)
                        * w.beta().iter().map(|b| jackgraph::rational::pow(b, k)).sum::<Rational>();
                assert_eq!(*m, direct);
            }
            assert_eq!(recover_thoma_from_moments(&moments_of(&w, &t, 14), &t, 3).unwrap(), w);
        }
    }
}

#[test]
fn mixtures_normalize_up_to_level_8() {
    let g = thoma_grid(50);
    let m =
        AtomicMeasure::new([(g[7].clone(), ratio(1, 5)), (g[33].clone(), ratio(3, 10)), (g[48].clone(), ratio(1, 2))])
            .unwrap();
    for t in [ratio(1, 2), int(1), int(2)] {
        let phi = harmonic_from_measure(m.clone(), &t).unwrap();
        let values = phi.materialize(8);
        for n in 0..=8 {
            let d = level_distribution(|l| values[l].clone(), n, &t, n <= 6).unwrap();
            assert_eq!(d.total(), int(1), "n = {n}");
        }
    }
}
