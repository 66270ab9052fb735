//! Jack polynomials `P_μ(x; θ)`, their Pieri multiplicities and hook products.
//!
//! `P_μ` is built by Gram–Schmidt over the monomial basis of each degree,
//! processed in increasing lexicographic order (a linear extension of
//! dominance), under `(p_μ, p_λ)_θ = δ z_λ θ^{-l(λ)}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::linalg::RationalFunction;
use crate::partition::{Cell, Partition};
use crate::rational::{int, pow, require_positive, Rational};
use crate::symfunc::{transition, Basis, SymFunc};

/// One Jack polynomial with its monomial expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct JackBasisElement {
    pub index: Partition,
    pub theta: Rational,
    pub expansion: SymFunc,
}

/// `H = Π (a + θ l + 1)` and `H' = Π (a + θ l + θ)` over the boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub h: Rational,
    pub h_prime: Rational,
}

/// All `P_λ`, `λ ⊢ n`, for one `θ`, stored as coefficient rows over the
/// degree-`n` partitions in reverse lexicographic order.
struct JackLevel {
    powersum: Vec<Vec<Rational>>,
    monomial: Vec<Vec<Rational>>,
}

fn build_level(n: usize, theta: &Rational) -> JackLevel {
    let t = transition(n);
    let k = t.parts.len();
    if theta.is_zero() {
        // P_λ(x; 0) = m_λ
        let monomial =
            (0..k).map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        let powersum = (0..k).map(|i| (0..k).map(|j| t.m_to_p.get(i, j).clone()).collect()).collect();
        return JackLevel { powersum, monomial };
    }
    let weights: Vec<Rational> = t.parts.iter().map(|l| l.z() / pow(theta, l.len())).collect();
    let dot = |u: &[Rational], v: &[Rational]| -> Rational {
        u.iter()
            .zip(v)
            .zip(&weights)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), w)| a * b * w)
            .sum()
    };
    let mut powersum: Vec<Vec<Rational>> = vec![Vec::new(); k];
    let mut norms: Vec<Rational> = vec![Rational::zero(); k];
    // revlex index k-1 is (1^n), the dominance minimum
    for i in (0..k).rev() {
        let mut v: Vec<Rational> = (0..k).map(|j| t.m_to_p.get(i, j).clone()).collect();
        for j in i + 1..k {
            let c = dot(&v, &powersum[j]) / &norms[j];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(&powersum[j]) {
                    *x -= &c * y;
                }
            }
        }
        norms[i] = dot(&v, &v);
        assert!(!norms[i].is_zero(), "degenerate Jack norm at theta = {theta}");
        powersum[i] = v;
    }
    let monomial =
        powersum.iter().map(|v| (0..k).map(|j| (0..k).map(|i| &v[i] * t.p_to_m.get(i, j)).sum()).collect()).collect();
    JackLevel { powersum, monomial }
}

type Cache<K, V> = OnceLock<RwLock<HashMap<K, Arc<V>>>>;

fn level(n: usize, theta: &Rational) -> Arc<JackLevel> {
    static CACHE: Cache<(usize, Rational), JackLevel> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, theta.clone());
    if let Some(l) = cache.read().unwrap().get(&key) {
        return l.clone();
    }
    // computed outside the lock; a concurrent duplicate is harmless
    let l = Arc::new(build_level(n, theta));
    cache.write().unwrap().entry(key).or_insert(l).clone()
}

fn row_to_symfunc(basis: Basis, n: usize, row: &[Rational]) -> SymFunc {
    let t = transition(n);
    SymFunc::from_terms(basis, t.parts.iter().cloned().zip(row.iter().cloned()))
}

/// `P_μ(·; θ)`; at `θ = 0` this is the monomial function `m_μ`.
pub fn jack_p(mu: &Partition, theta: &Rational) -> Result<JackBasisElement> {
    if theta.is_negative() {
        return domain(format!("Jack polynomials need theta >= 0, got {theta}"));
    }
    let n = mu.size();
    let l = level(n, theta);
    let i = transition(n).index[mu];
    Ok(JackBasisElement {
        index: mu.clone(),
        theta: theta.clone(),
        expansion: row_to_symfunc(Basis::Monomial, n, &l.monomial[i]),
    })
}

/// `P_μ(·; θ)` in the power-sum basis. Panics for `θ < 0`.
pub fn jack_p_powersum(mu: &Partition, theta: &Rational) -> SymFunc {
    assert!(!theta.is_negative(), "Jack basis needs theta >= 0, got {theta}");
    let n = mu.size();
    let l = level(n, theta);
    let i = transition(n).index[mu];
    row_to_symfunc(Basis::PowerSum, n, &l.powersum[i])
}

fn cover_cell(lambda: &Partition, nu: &Partition) -> Result<Cell> {
    lambda.added_cell(nu).ok_or_else(|| Error::Domain(format!("{lambda} -> {nu} is not an edge of the Young graph")))
}

/// Linear factors `(c0 + c1 θ)` of the numerator and denominator of `κ_θ(λ, ν)`.
type Factors = Vec<[i64; 2]>;

fn kappa_factors(lambda: &Partition, nu: &Partition) -> Result<(Factors, Factors)> {
    let j = cover_cell(lambda, nu)?.col;
    let mut num = Vec::new();
    let mut den = Vec::new();
    for i in 1..=lambda.column_len(j) {
        let (a, l) = lambda.arm_leg(Cell::new(i, j))?;
        let (a, l) = (a as i64, l as i64);
        num.push([a, l + 2]);
        num.push([a + 1, l]);
        den.push([a + 1, l + 1]);
        den.push([a, l + 1]);
    }
    Ok((num, den))
}

/// Edge multiplicity of the Jack graph: the coefficient of `P_ν` in `p_1 P_λ`,
/// a product over the boxes of `λ` in the column receiving the new box.
pub fn pieri_kappa(lambda: &Partition, nu: &Partition, theta: &Rational) -> Result<Rational> {
    require_positive(theta, "pieri_kappa")?;
    let (num, den) = kappa_factors(lambda, nu)?;
    let eval = |f: &[i64; 2]| int(f[0]) + int(f[1]) * theta;
    let n: Rational = num.iter().map(eval).product();
    let d: Rational = den.iter().map(eval).product();
    Ok(n / d)
}

/// `κ_θ(λ, ν)` as an explicit rational function of `θ`.
pub fn pieri_kappa_function(lambda: &Partition, nu: &Partition) -> Result<RationalFunction> {
    let (num, den) = kappa_factors(lambda, nu)?;
    let expand = |fs: &[[i64; 2]]| {
        fs.iter().fold(vec![Rational::one()], |acc, f| {
            let mut out = vec![Rational::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                out[k] += c * int(f[0]);
                out[k + 1] += c * int(f[1]);
            }
            out
        })
    };
    Ok(RationalFunction { num: expand(&num), den: expand(&den) })
}

/// `lim_{θ→0} κ_θ(λ, ν)`, cancelling the vanishing factors of boxes with zero arm.
/// Errors if the limit is infinite.
pub fn pieri_kappa_at_zero(lambda: &Partition, nu: &Partition) -> Result<Rational> {
    let (num, den) = kappa_factors(lambda, nu)?;
    // lowest-order term of a product of linear factors
    let lowest =
        |fs: &[[i64; 2]]| {
            fs.iter().fold((0usize, Rational::one()), |(v, c), f| {
                if f[0] != 0 {
                    (v, c * int(f[0]))
                } else {
                    (v + 1, c * int(f[1]))
                }
            })
        };
    let (vn, cn) = lowest(&num);
    let (vd, cd) = lowest(&den);
    if cn.is_zero() {
        return Ok(Rational::zero());
    }
    match vn.cmp(&vd) {
        std::cmp::Ordering::Equal => Ok(cn / cd),
        std::cmp::Ordering::Greater => Ok(Rational::zero()),
        std::cmp::Ordering::Less => Err(Error::Domain(format!("kappa({lambda}, {nu}) diverges as theta -> 0"))),
    }
}

pub fn hook_products(mu: &Partition, theta: &Rational) -> HookData {
    let mut h = Rational::one();
    let mut h_prime = Rational::one();
    for c in mu.cells() {
        let (a, l) = mu.arm_leg(c).expect("cell of mu");
        let (a, l) = (int(a as i64), int(l as i64));
        h *= &a + theta * &l + int(1);
        h_prime *= &a + theta * &l + theta;
    }
    HookData { h, h_prime }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaJMethod {
    /// `H'(λ)/H'(ν) · κ_θ(λ, ν)`.
    Ratio,
    /// Telescoped product over the corners of `λ`.
    Corners,
}

/// Pieri coefficient for the integral form `J_μ = H'(μ) P_μ`.
pub fn pieri_kappa_j(lambda: &Partition, nu: &Partition, theta: &Rational, method: KappaJMethod) -> Result<Rational> {
    require_positive(theta, "pieri_kappa_j")?;
    let star = cover_cell(lambda, nu)?;
    match method {
        KappaJMethod::Ratio => {
            let k = pieri_kappa(lambda, nu, theta)?;
            Ok(hook_products(lambda, theta).h_prime / hook_products(nu, theta).h_prime * k)
        }
        KappaJMethod::Corners => {
            // corner points (x, y) = (rows above, columns to the left);
            // minima of the profile sit at addable boxes, maxima at removable ones
            let at = |c: Cell, shift: usize| (int((c.row - shift) as i64), int((c.col - shift) as i64));
            let (sx, sy) = at(star, 1);
            let r = |(x, y): (Rational, Rational)| (y - &sy) - theta * (x - &sx);
            let outer: Rational = lambda.removable_cells().into_iter().map(|c| r(at(c, 0))).product();
            let inner: Rational =
                lambda.addable_cells().into_iter().filter(|&c| c != star).map(|c| r(at(c, 1))).product();
            Ok(outer / inner / theta)
        }
    }
}

/// Coefficients of a homogeneous `f` in the Jack basis, by peeling off the
/// dominance-maximal monomial term with the unitriangular `P_λ`.
pub fn expand_in_jack(f: &SymFunc, theta: &Rational, degree: usize) -> Result<BTreeMap<Partition, Rational>> {
    require_positive(theta, "expand_in_jack")?;
    let mut rest = f.to_monomial();
    if let Some(bad) = rest.terms().keys().find(|k| k.size() != degree) {
        return domain(format!("expand_in_jack: term {bad} is not of degree {degree}"));
    }
    let t = transition(degree);
    let l = level(degree, theta);
    let mut out = BTreeMap::new();
    for (i, lam) in t.parts.iter().enumerate() {
        let c = rest.coeff(lam);
        if c.is_zero() {
            continue;
        }
        let p = row_to_symfunc(Basis::Monomial, degree, &l.monomial[i]);
        rest = rest.sub(&p.scale(&c))?;
        out.insert(lam.clone(), c);
    }
    if !rest.is_zero() {
        return Err(Error::Internal(format!("Jack expansion left a remainder {rest}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate, p};
    use crate::rational::ratio;
    use crate::symfunc::{multiply, scalar_product_theta};

    fn thetas() -> Vec<Rational> {
        vec![ratio(1, 3), ratio(1, 2), int(1), int(2), ratio(5, 2)]
    }

    #[test]
    fn columns_do_not_depend_on_theta() {
        for n in 0..=5 {
            for t in thetas() {
                assert_eq!(
                    jack_p(&Partition::column(n), &t).unwrap().expansion,
                    SymFunc::monomial(Partition::column(n))
                );
            }
        }
    }

    /// Independent oracle for degree 2: Gram–Schmidt done by hand on
    /// m_(2) = p_2, m_(1,1) = (p_1^2 - p_2)/2 gives the coefficient 2θ/(1+θ).
    #[test]
    fn p2_against_hand_gram_schmidt() {
        for t in thetas() {
            let m2 = SymFunc::powersum(p(&[2]));
            let m11 = SymFunc::from_terms(Basis::PowerSum, [(p(&[1, 1]), ratio(1, 2)), (p(&[2]), ratio(-1, 2))]);
            let c = -scalar_product_theta(&m2, &m11, &t).unwrap() / scalar_product_theta(&m11, &m11, &t).unwrap();
            let expected = int(2) * &t / (int(1) + &t);
            assert_eq!(c, expected);
            let got = jack_p(&p(&[2]), &t).unwrap().expansion;
            assert_eq!(got, SymFunc::from_terms(Basis::Monomial, [(p(&[2]), int(1)), (p(&[1, 1]), expected)]));
        }
    }

    #[test]
    fn theta_zero_is_monomial() {
        assert_eq!(jack_p(&p(&[2, 1]), &int(0)).unwrap().expansion, SymFunc::monomial(p(&[2, 1])));
        assert!(jack_p(&p(&[1]), &int(-1)).is_err());
    }

    #[test]
    fn orthogonal_and_unitriangular() {
        for t in [ratio(1, 2), int(2)] {
            for n in 0..=6 {
                let parts = enumerate(n);
                for a in &parts {
                    let pa = jack_p(a, &t).unwrap().expansion;
                    assert_eq!(pa.coeff(a), int(1));
                    for k in pa.terms().keys() {
                        if k != a {
                            assert_eq!(k.dominance(a).unwrap(), crate::partition::Dominance::Below, "{k} in P{a}");
                        }
                    }
                    for b in &parts {
                        if a < b {
                            let pb = jack_p(b, &t).unwrap().expansion;
                            assert_eq!(scalar_product_theta(&pa, &pb, &t).unwrap(), int(0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_examples() {
        for t in thetas() {
            assert_eq!(pieri_kappa(&Partition::empty(), &p(&[1]), &t).unwrap(), int(1));
            for n in 0..6 {
                let k = pieri_kappa(&Partition::column(n), &Partition::column(n + 1), &t).unwrap();
                assert_eq!(k, int(1 + n as i64) / (int(1) + int(n as i64) * &t));
            }
        }
        assert!(pieri_kappa(&p(&[1]), &p(&[3]), &int(1)).is_err());
        assert!(pieri_kappa(&p(&[1]), &p(&[2]), &int(0)).is_err());
    }

    #[test]
    fn hooks() {
        let t = ratio(3, 7);
        assert_eq!(hook_products(&Partition::empty(), &t), HookData { h: int(1), h_prime: int(1) });
        assert_eq!(hook_products(&p(&[1]), &t), HookData { h: int(1), h_prime: t.clone() });
        assert_eq!(hook_products(&p(&[2, 1]), &t).h, int(2) + &t);
        assert_eq!(hook_products(&p(&[2]), &t).h, int(2));
    }

    #[test]
    fn kappa_j_examples() {
        for t in thetas() {
            for m in [KappaJMethod::Ratio, KappaJMethod::Corners] {
                assert_eq!(pieri_kappa_j(&Partition::empty(), &p(&[1]), &t, m).unwrap(), int(1) / &t);
                assert_eq!(pieri_kappa_j(&p(&[1]), &p(&[2]), &t, m).unwrap(), int(1) / (int(1) + &t));
            }
        }
        assert!(pieri_kappa_j(&p(&[1]), &p(&[1]), &int(1), KappaJMethod::Corners).is_err());
    }

    #[test]
    fn pieri_expansions() {
        for t in thetas() {
            let p1 = SymFunc::powersum(p(&[1]));
            let got = expand_in_jack(&p1, &t, 1).unwrap();
            assert_eq!(got, BTreeMap::from([(p(&[1]), int(1))]));
            let sq = multiply(&p1, &p1).unwrap();
            let want = BTreeMap::from([(p(&[2]), int(1)), (p(&[1, 1]), int(2) / (int(1) + &t))]);
            assert_eq!(expand_in_jack(&sq, &t, 2).unwrap(), want);
            let f = multiply(&p1, &jack_p_powersum(&p(&[1]), &t)).unwrap();
            assert_eq!(expand_in_jack(&f, &t, 2).unwrap(), want);
        }
        let mixed = SymFunc::from_terms(Basis::PowerSum, [(p(&[1]), int(1)), (p(&[2]), int(1))]);
        assert!(expand_in_jack(&mixed, &int(1), 2).is_err());
    }

    #[test]
    fn kappa_limit_at_zero() {
        // λ = (1), ν = (1,1): 2/(1+θ) -> 2
        assert_eq!(pieri_kappa_at_zero(&p(&[1]), &p(&[1, 1])).unwrap(), int(2));
        assert_eq!(pieri_kappa_function(&p(&[1]), &p(&[1, 1])).unwrap().limit_at_zero(), Some(int(2)));
        assert_eq!(pieri_kappa_at_zero(&p(&[2, 1]), &p(&[2, 2])).unwrap(), int(2));
    }
}
