//! Shifted symmetric functions, written as polynomials in the generators
//!
//! ```text
//! p̃_m(x) = Σ_i ( (x_i − θ(i−1) ↓ m) − (−θ(i−1) ↓ m) )
//! ```
//!
//! and the shifted Jack polynomials `P*_μ` obtained by interpolation.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::graph::{martin_kernel_finite, WeightedGraphView};
use crate::jack::{hook_products, jack_p_powersum};
use crate::linalg::Matrix;
use crate::partition::{enumerate, enumerate_up_to, theta_content, Partition};
use crate::rational::{falling, int, pow, require_positive, Rational};
use crate::symfunc::{Basis, SymFunc};

/// A polynomial in `p̃_1, p̃_2, …`; each monomial `Π p̃_{k_i}` is keyed by the
/// multiset `{k_i}` written as a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSymFunc {
    theta: Rational,
    coeffs: BTreeMap<Partition, Rational>,
}

impl ShiftedSymFunc {
    pub fn new(theta: Rational, coeffs: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ShiftedSymFunc { theta, coeffs }
    }

    /// The generator `p̃_m`.
    pub fn ptilde(m: usize, theta: Rational) -> Self {
        Self::new(theta, [(Partition::row(m), Rational::one())])
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    /// Filtered degree: the largest total weight of a monomial.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Value at a diagram `ν`, i.e. at `x = (ν_1, ν_2, …)`.
    pub fn eval(&self, nu: &Partition) -> Rational {
        let mut cache: HashMap<usize, Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (idx, c) in &self.coeffs {
            let mut term = c.clone();
            for &k in idx.parts() {
                let v = cache.entry(k).or_insert_with(|| ptilde_eval(k, nu, &self.theta));
                term *= &*v;
            }
            total += term;
        }
        total
    }

    /// Top-degree part with `p̃_m` replaced by `p_m`.
    pub fn leading_term(&self) -> SymFunc {
        let d = self.degree();
        SymFunc::from_terms(
            Basis::PowerSum,
            self.coeffs.iter().filter(|(k, _)| k.size() == d).map(|(k, c)| (k.clone(), c.clone())),
        )
    }
}

/// `p̃_m(ν)`; the terms for rows past `l(ν)` vanish.
pub fn ptilde_eval(m: usize, nu: &Partition, theta: &Rational) -> Rational {
    (1..=nu.len())
        .map(|i| {
            let shift = theta * int(i as i64 - 1);
            falling(&(int(nu.part(i) as i64) - &shift), m) - falling(&-shift, m)
        })
        .sum()
}

/// `S_m = m Σ_{b∈ν} (c_θ(b) ↓ m−1)`.
pub fn content_sum(nu: &Partition, theta: &Rational, m: usize) -> Result<Rational> {
    if m == 0 {
        return domain("content_sum needs m >= 1");
    }
    let s: Rational = nu.cells().map(|b| falling(&theta_content(b, theta), m - 1)).sum();
    Ok(s * int(m as i64))
}

/// The generator family `p*_m(x) = Σ_j ((x_j − θ j)^m − (−θ j)^m)`, evaluated at a finite sequence.
pub fn pstar_eval(m: usize, x: &[Rational], theta: &Rational) -> Rational {
    x.iter()
        .enumerate()
        .map(|(j, xj)| {
            let s = theta * int(j as i64 + 1);
            pow(&(xj - &s), m) - pow(&-s, m)
        })
        .sum()
}

fn monomial_eval(idx: &Partition, values: &[Rational]) -> Rational {
    idx.parts().iter().map(|&k| values[k].clone()).product()
}

fn ptilde_values(nu: &Partition, theta: &Rational, up_to: usize) -> Vec<Rational> {
    // index 0 is unused
    (0..=up_to).map(|k| if k == 0 { Rational::one() } else { ptilde_eval(k, nu, theta) }).collect()
}

fn build_shifted_jack(mu: &Partition, theta: &Rational) -> Result<ShiftedSymFunc> {
    let m = mu.size();
    let top = jack_p_powersum(mu, theta);
    let lower: Vec<Partition> = enumerate_up_to(m.saturating_sub(1));
    let lower = if m == 0 { Vec::new() } else { lower };
    // unknowns: coefficients of p̃-monomials of weight < m; equations: vanishing on |λ| < m
    let mut rows = Vec::with_capacity(lower.len());
    let mut rhs = Vec::with_capacity(lower.len());
    for lam in &lower {
        let vals = ptilde_values(lam, theta, m);
        rows.push(lower.iter().map(|idx| monomial_eval(idx, &vals)).collect::<Vec<_>>());
        let t: Rational = top.terms().iter().map(|(idx, c)| c * monomial_eval(idx, &vals)).sum();
        rhs.push(-t);
    }
    let sol = if lower.is_empty() { Vec::new() } else { Matrix::from_rows(rows).solve(&rhs)? };
    let f = ShiftedSymFunc::new(
        theta.clone(),
        top.terms().iter().map(|(k, c)| (k.clone(), c.clone())).chain(lower.into_iter().zip(sol)),
    );
    let h = hook_products(mu, theta).h;
    let at_mu = f.eval(mu);
    if at_mu != h {
        return Err(Error::Internal(format!("P*_{mu}({mu}) = {at_mu}, expected H = {h}")));
    }
    for lam in enumerate(m) {
        if lam != *mu && !f.eval(&lam).is_zero() {
            return Err(Error::Internal(format!("P*_{mu} does not vanish at {lam}")));
        }
    }
    Ok(f)
}

/// The shifted Jack polynomial `P*_μ`: leading term `P_μ`, vanishing at every
/// other diagram with at most `|μ|` boxes, and `P*_μ(μ) = H(μ)`.
pub fn shifted_jack(mu: &Partition, theta: &Rational) -> Result<Arc<ShiftedSymFunc>> {
    require_positive(theta, "shifted_jack")?;
    type Cache = OnceLock<RwLock<HashMap<(Partition, Rational), Arc<ShiftedSymFunc>>>>;
    static CACHE: Cache = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (mu.clone(), theta.clone());
    if let Some(f) = cache.read().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let f = Arc::new(build_shifted_jack(mu, theta)?);
    Ok(cache.write().unwrap().entry(key).or_insert(f).clone())
}

/// `K(μ, ν) = P*_μ(ν) / (n ↓ m)` with `n = |ν|`, `m = |μ|`; zero for `n < m`.
pub fn martin_kernel_shifted(mu: &Partition, nu: &Partition, theta: &Rational) -> Result<Rational> {
    let (m, n) = (mu.size(), nu.size());
    if n < m {
        return Ok(Rational::zero());
    }
    let f = shifted_jack(mu, theta)?;
    Ok(f.eval(nu) / falling(&int(n as i64), m))
}

/// Both sides of `dim(μ,ν)/dim(ν) = P*_μ(ν)/(n↓m)`: the left from the
/// branching graph, the right from the interpolation polynomial.
pub fn dimension_formula_check(mu: &Partition, nu: &Partition, theta: &Rational) -> Result<(Rational, Rational)> {
    require_positive(theta, "dimension_formula_check")?;
    if nu.size() < mu.size() {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let view = WeightedGraphView::jack(theta.clone())?;
    let lhs = martin_kernel_finite(mu, nu, &view)?;
    let rhs = martin_kernel_shifted(mu, nu, theta)?;
    Ok((lhs, rhs))
}

/// Shifted Schur polynomial as a ratio of determinants of falling factorials
/// `(x_i + n − i ↓ μ_j + n − j)` over `(x_i + n − i ↓ n − j)`, `n = len(x)`.
pub fn shifted_schur_det(mu: &Partition, x: &[Rational]) -> Result<Rational> {
    let n = x.len();
    if n < mu.len() {
        return domain(format!("need at least l(mu) = {} variables, got {n}", mu.len()));
    }
    let shifted: Vec<Rational> = (0..n).map(|i| &x[i] + int((n - 1 - i) as i64)).collect();
    let build = |exps: &dyn Fn(usize) -> usize| {
        Matrix::from_rows(shifted.iter().map(|s| (0..n).map(|j| falling(s, exps(j))).collect()).collect())
    };
    let den = build(&|j| n - 1 - j).determinant();
    if den.is_zero() {
        return domain("shifted arguments x_i + n - i coincide; denominator vanishes");
    }
    let num = build(&|j| mu.part(j + 1) + n - 1 - j).determinant();
    Ok(num / den)
}

/// Convenience for evaluating the determinant at a diagram, padded to `n` variables.
pub fn shifted_schur_at(mu: &Partition, lambda: &Partition, n: usize) -> Result<Rational> {
    let x: Vec<Rational> = (1..=n).map(|i| int(lambda.part(i) as i64)).collect();
    if lambda.len() > n {
        return domain("diagram longer than the number of variables");
    }
    shifted_schur_det(mu, &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::p;
    use crate::rational::ratio;

    fn thetas() -> Vec<Rational> {
        vec![ratio(1, 3), ratio(1, 2), int(1), int(2)]
    }

    #[test]
    fn ptilde_examples() {
        for t in thetas() {
            for nu in enumerate_up_to(6) {
                assert_eq!(ptilde_eval(1, &nu, &t), int(nu.size() as i64));
            }
            for m in 1..=4 {
                assert_eq!(ptilde_eval(m, &Partition::empty(), &t), int(0));
            }
            assert_eq!(ptilde_eval(2, &p(&[2]), &t), int(2));
        }
    }

    #[test]
    fn content_sum_examples() {
        for t in thetas() {
            assert_eq!(content_sum(&p(&[2]), &t, 2).unwrap(), int(2));
            assert_eq!(content_sum(&Partition::empty(), &t, 3).unwrap(), int(0));
            assert_eq!(content_sum(&p(&[3, 1]), &t, 1).unwrap(), int(4));
        }
        assert!(content_sum(&p(&[1]), &int(1), 0).is_err());
    }

    #[test]
    fn generators_share_leading_term() {
        // p*_m and p̃_m differ by lower-degree terms: their difference over n^m vanishes for long rows
        let t = int(1);
        let f = ShiftedSymFunc::ptilde(3, t.clone());
        assert_eq!(f.degree(), 3);
        assert_eq!(f.leading_term(), SymFunc::powersum(p(&[3])));
        let x = [int(5), int(2)];
        assert_eq!(pstar_eval(1, &x, &t), int(7));
    }

    #[test]
    fn small_shifted_jacks() {
        for t in thetas() {
            let f = shifted_jack(&p(&[1]), &t).unwrap();
            assert_eq!(*f, ShiftedSymFunc::ptilde(1, t.clone()));
            let f = shifted_jack(&p(&[2]), &t).unwrap();
            assert_eq!(f.eval(&p(&[2])), int(2));
            for mu in enumerate_up_to(4) {
                let f = shifted_jack(&mu, &t).unwrap();
                assert_eq!(f.leading_term(), jack_p_powersum(&mu, &t));
                for lam in enumerate_up_to(mu.size()) {
                    let v = f.eval(&lam);
                    if lam == mu {
                        assert_eq!(v, hook_products(&mu, &t).h);
                    } else {
                        assert_eq!(v, int(0), "P*_{mu}({lam})");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_formula_examples() {
        let t = ratio(1, 2);
        for nu in enumerate_up_to(5).into_iter().skip(1) {
            let (l, r) = dimension_formula_check(&p(&[1]), &nu, &t).unwrap();
            assert_eq!((l, r), (int(1), int(1)));
        }
        let (l, r) = dimension_formula_check(&p(&[1]), &p(&[2, 1]), &int(1)).unwrap();
        assert_eq!((l, r), (int(1), int(1)));
        assert_eq!(dimension_formula_check(&p(&[2]), &p(&[1]), &t).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn schur_det_examples() {
        assert_eq!(shifted_schur_det(&Partition::empty(), &[int(3), int(1)]).unwrap(), int(1));
        for x in [vec![int(2), int(7)], vec![ratio(1, 2), int(3), int(-4)], vec![int(4), int(4), int(4)]] {
            let sum: Rational = x.iter().sum();
            assert_eq!(shifted_schur_det(&p(&[1]), &x).unwrap(), sum);
        }
        // x_1 + 1 = x_2
        assert!(shifted_schur_det(&p(&[1]), &[int(0), int(1)]).is_err());
        assert!(shifted_schur_det(&p(&[1, 1]), &[int(1)]).is_err());
    }
}
