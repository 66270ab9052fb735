use jackgraph::partition::{enumerate, enumerate_up_to};
use jackgraph::rational::ratio;
use jackgraph::Partition;
use proptest::prelude::*;

fn partition_of_at_most(n: usize) -> impl Strategy<Value = Partition> {
    // random composition of a random size, sorted
    (1..=n).prop_flat_map(|size| {
        proptest::collection::vec(1..=size, 1..=size).prop_map(move |raw| {
            let mut left = size;
            let mut parts = Vec::new();
            for x in raw {
                if left == 0 {
                    break;
                }
                let x = x.min(left);
                parts.push(x);
                left -= x;
            }
            if left > 0 {
                parts.push(left);
            }
            Partition::from_unsorted(parts)
        })
    })
}

#[test]
fn split_preserves_size() {
    for t in [ratio(1, 3), ratio(1, 2), ratio(1, 1), ratio(2, 1)] {
        for nu in enumerate_up_to(10) {
            let (a, b) = nu.split_positive_negative(&t).unwrap();
            assert_eq!(a.iter().sum::<usize>() + b.iter().sum::<usize>(), nu.size(), "{nu}");
        }
    }
}

#[test]
fn covers_and_cocovers_are_dual() {
    for lam in enumerate_up_to(8) {
        for mu in lam.covers() {
            assert!(mu.cocovers().contains(&lam));
        }
        for mu in lam.cocovers() {
            assert!(mu.covers().contains(&lam));
        }
    }
}

#[test]
fn frobenius_round_trip_exhaustive() {
    for nu in enumerate_up_to(10) {
        assert_eq!(Partition::from_frobenius(&nu.frobenius()).unwrap(), nu);
    }
}

#[test]
fn enumeration_counts() {
    // p(n) by the pentagonal-number recurrence
    let mut pn = vec![1i64];
    for n in 1..=15i64 {
        let mut s = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s += sign * pn[(n - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                s += sign * pn[(n - g2) as usize];
            }
        }
        pn.push(s);
    }
    for (n, count) in pn.iter().enumerate() {
        assert_eq!(enumerate(n).len() as i64, *count, "n = {n}");
    }
}

proptest! {
    #[test]
    fn rectangle_bound(nu in partition_of_at_most(400)) {
        let (a, b) = nu.split_positive_negative(&ratio(1, 1)).unwrap();
        prop_assert!(a.len() * b.len() <= nu.size());
    }

    #[test]
    fn frobenius_round_trip(nu in partition_of_at_most(60)) {
        prop_assert_eq!(Partition::from_frobenius(&nu.frobenius()).unwrap(), nu);
    }

    #[test]
    fn conjugation_is_an_involution(nu in partition_of_at_most(60)) {
        prop_assert_eq!(nu.conjugate().conjugate(), nu.clone());
        prop_assert_eq!(nu.conjugate().size(), nu.size());
    }

    #[test]
    fn every_cover_adds_one_box(nu in partition_of_at_most(40)) {
        for mu in nu.covers() {
            prop_assert_eq!(mu.size(), nu.size() + 1);
            prop_assert!(nu.is_subset_of(&mu));
            prop_assert!(nu.added_cell(&mu).is_some());
        }
        prop_assert_eq!(nu.covers().len(), nu.addable_cells().len());
    }

    #[test]
    fn parse_display_round_trip(nu in partition_of_at_most(30)) {
        prop_assert_eq!(nu.to_string().parse::<Partition>().unwrap(), nu);
    }
}
