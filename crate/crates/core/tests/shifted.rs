use jackgraph::jack::hook_products;
use jackgraph::partition::{enumerate, enumerate_up_to};
use jackgraph::rational::{int, ratio};
use jackgraph::shifted::{pstar_eval, ptilde_eval, shifted_jack, shifted_schur_at};
use jackgraph::Rational;

fn thetas() -> Vec<Rational> {
    vec![ratio(1, 3), ratio(1, 2), int(1), int(2)]
}

#[test]
fn interpolation_is_well_posed_up_to_degree_5() {
    for t in [ratio(1, 2), int(2)] {
        for mu in enumerate_up_to(5) {
            let f = shifted_jack(&mu, &t).unwrap();
            assert_eq!(f.eval(&mu), hook_products(&mu, &t).h, "{mu}");
        }
    }
}

#[test]
fn vanishing_beyond_the_defining_range() {
    for t in thetas() {
        for mu in enumerate_up_to(3) {
            let f = shifted_jack(&mu, &t).unwrap();
            for lam in enumerate_up_to(mu.size() + 2) {
                if !mu.is_subset_of(&lam) {
                    assert_eq!(f.eval(&lam), int(0), "P*_{mu}({lam}) at theta {t}");
                } else {
                    assert!(f.eval(&lam) > int(0), "P*_{mu}({lam}) should be positive");
                }
            }
        }
    }
}

#[test]
fn theta_one_matches_the_determinant() {
    for mu in enumerate_up_to(4) {
        let f = shifted_jack(&mu, &int(1)).unwrap();
        for lam in enumerate_up_to(7) {
            let vars = mu.len().max(lam.len()).max(1);
            assert_eq!(f.eval(&lam), shifted_schur_at(&mu, &lam, vars).unwrap(), "{mu} at {lam}");
            // more variables give the same value (stability)
            assert_eq!(f.eval(&lam), shifted_schur_at(&mu, &lam, vars + 2).unwrap());
        }
    }
}

#[test]
fn both_generator_families_count_boxes_in_degree_one() {
    for t in thetas() {
        for nu in enumerate(5) {
            let x: Vec<Rational> = nu.parts().iter().map(|&v| int(v as i64)).collect();
            assert_eq!(pstar_eval(1, &x, &t), ptilde_eval(1, &nu, &t));
        }
    }
}
