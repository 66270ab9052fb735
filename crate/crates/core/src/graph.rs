//! The Young graph with edge multiplicities: dimension functions, the finite
//! Martin kernel and the harmonicity defect.

use std::collections::HashMap;

use num::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::jack::{hook_products, pieri_kappa};
use crate::partition::Partition;
use crate::rational::{factorial, int, require_positive, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// Jack multiplicities `κ_θ`, `θ > 0`.
    Jack(Rational),
    /// Kingman multiplicities `m_k(ν)`; the `θ = 0` member of the family.
    Kingman,
}

/// The Young graph together with a rule assigning multiplicities to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraphView {
    rule: Multiplicity,
}

impl WeightedGraphView {
    pub fn jack(theta: Rational) -> Result<Self> {
        require_positive(&theta, "Jack graph")?;
        Ok(WeightedGraphView { rule: Multiplicity::Jack(theta) })
    }

    pub fn kingman() -> Self {
        WeightedGraphView { rule: Multiplicity::Kingman }
    }

    pub fn rule(&self) -> &Multiplicity {
        &self.rule
    }

    /// `θ` of the view; zero for Kingman.
    pub fn theta(&self) -> Rational {
        match &self.rule {
            Multiplicity::Jack(t) => t.clone(),
            Multiplicity::Kingman => Rational::zero(),
        }
    }

    /// Multiplicity of the edge `λ ↗ ν`.
    pub fn kappa(&self, lambda: &Partition, nu: &Partition) -> Result<Rational> {
        match &self.rule {
            Multiplicity::Jack(t) => pieri_kappa(lambda, nu, t),
            Multiplicity::Kingman => Ok(int(kingman_kappa(lambda, nu)? as i64)),
        }
    }
}

/// `m_k(ν)` where `k` is the length of the row of `ν` holding the box `ν \ λ`.
pub fn kingman_kappa(lambda: &Partition, nu: &Partition) -> Result<usize> {
    let c = lambda
        .added_cell(nu)
        .ok_or_else(|| Error::Domain(format!("{lambda} -> {nu} is not an edge of the Young graph")))?;
    Ok(nu.multiplicity(nu.part(c.row)))
}

/// `dim(μ, λ)` for every `λ ⊇ μ` with `|λ| <= max_size`, by pushing weights
/// forward level by level from `μ`.
pub fn dims_from(mu: &Partition, max_size: usize, view: &WeightedGraphView) -> Result<HashMap<Partition, Rational>> {
    dims_within(mu, max_size, view, |_| true)
}

fn dims_within(
    mu: &Partition,
    max_size: usize,
    view: &WeightedGraphView,
    keep: impl Fn(&Partition) -> bool,
) -> Result<HashMap<Partition, Rational>> {
    let mut all = HashMap::new();
    let mut frontier: HashMap<Partition, Rational> = HashMap::from([(mu.clone(), Rational::one())]);
    for _ in mu.size()..max_size {
        let mut next: HashMap<Partition, Rational> = HashMap::new();
        for (lam, d) in &frontier {
            for nu in lam.covers() {
                if keep(&nu) {
                    let w = d * view.kappa(lam, &nu)?;
                    *next.entry(nu).or_insert_with(Rational::zero) += w;
                }
            }
        }
        all.extend(frontier);
        frontier = next;
    }
    all.extend(frontier);
    Ok(all)
}

/// Weighted count of saturated chains from `μ` to `ν`; zero unless `μ ⊆ ν`.
pub fn dim_recursive(mu: &Partition, nu: &Partition, view: &WeightedGraphView) -> Result<Rational> {
    if !mu.is_subset_of(nu) {
        return Ok(Rational::zero());
    }
    let dims = dims_within(mu, nu.size(), view, |l| l.is_subset_of(nu))?;
    Ok(dims.get(nu).cloned().unwrap_or_else(Rational::zero))
}

/// Sums path weights over every explicitly enumerated chain `μ ↗ … ↗ ν`.
/// Exponential; meant as an oracle for small diagrams.
pub fn dim_paths(mu: &Partition, nu: &Partition, view: &WeightedGraphView) -> Result<Rational> {
    fn go(
        cur: &Partition,
        nu: &Partition,
        weight: Rational,
        view: &WeightedGraphView,
        acc: &mut Rational,
    ) -> Result<()> {
        if cur == nu {
            *acc += weight;
            return Ok(());
        }
        for next in cur.covers() {
            if next.is_subset_of(nu) {
                let k = view.kappa(cur, &next)?;
                go(&next, nu, &weight * k, view, acc)?;
            }
        }
        Ok(())
    }
    let mut acc = Rational::zero();
    if mu.is_subset_of(nu) {
        go(mu, nu, Rational::one(), view, &mut acc)?;
    }
    Ok(acc)
}

/// `dim_θ ν = |ν|! / H(ν)`.
pub fn dim_hook(nu: &Partition, theta: &Rational) -> Result<Rational> {
    require_positive(theta, "dim_hook")?;
    Ok(factorial(nu.size()) / hook_products(nu, theta).h)
}

/// `K(μ, ν) = dim(μ, ν) / dim(∅, ν)`.
pub fn martin_kernel_finite(mu: &Partition, nu: &Partition, view: &WeightedGraphView) -> Result<Rational> {
    let d = dim_recursive(&Partition::empty(), nu, view)?;
    if !d.is_positive() {
        return domain(format!("dim({nu}) = {d} is not positive"));
    }
    Ok(dim_recursive(mu, nu, view)? / d)
}

/// `Σ_{λ↗ν} κ(λ, ν) φ(ν) − φ(λ)`; zero exactly where `φ` is harmonic at `λ`.
pub fn harmonicity_defect(
    phi: impl Fn(&Partition) -> Rational,
    lambda: &Partition,
    view: &WeightedGraphView,
) -> Result<Rational> {
    let mut s = -phi(lambda);
    for nu in lambda.covers() {
        s += view.kappa(lambda, &nu)? * phi(&nu);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimMethod {
    Hook,
    Recursive,
    Paths,
}

/// `dim(μ, ν)` in the Jack graph by the requested route. The hook route only
/// applies to `μ = ∅`.
pub fn dim_with(mu: &Partition, nu: &Partition, theta: &Rational, method: DimMethod) -> Result<Rational> {
    let view = WeightedGraphView::jack(theta.clone())?;
    match method {
        DimMethod::Hook if mu.is_empty() => dim_hook(nu, theta),
        DimMethod::Hook => domain("the hook formula computes dim(∅, ν) only; use --method recursive"),
        DimMethod::Recursive => dim_recursive(mu, nu, &view),
        DimMethod::Paths => dim_paths(mu, nu, &view),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate, enumerate_up_to, p};
    use crate::rational::ratio;

    fn jack(t: Rational) -> WeightedGraphView {
        WeightedGraphView::jack(t).unwrap()
    }

    #[test]
    fn dimension_examples() {
        let v = jack(ratio(2, 3));
        assert_eq!(dim_recursive(&p(&[2, 1]), &p(&[2, 1]), &v).unwrap(), int(1));
        assert_eq!(dim_recursive(&p(&[2]), &p(&[1, 1]), &v).unwrap(), int(0));
        assert_eq!(dim_recursive(&Partition::empty(), &p(&[1, 1]), &v).unwrap(), int(2) / (int(1) + ratio(2, 3)));
    }

    #[test]
    fn hook_examples() {
        for t in [ratio(1, 3), int(2)] {
            assert_eq!(dim_hook(&Partition::empty(), &t).unwrap(), int(1));
            assert_eq!(dim_hook(&p(&[2]), &t).unwrap(), int(1));
            for n in 1..=6 {
                let want = factorial(n) / (0..n).map(|k| int(1) + int(k as i64) * &t).product::<Rational>();
                assert_eq!(dim_hook(&Partition::column(n), &t).unwrap(), want);
            }
        }
        assert!(dim_hook(&p(&[1]), &int(0)).is_err());
    }

    #[test]
    fn kernel_examples() {
        for t in [ratio(1, 2), int(3)] {
            let v = jack(t);
            for nu in enumerate_up_to(5) {
                assert_eq!(martin_kernel_finite(&Partition::empty(), &nu, &v).unwrap(), int(1));
                if !nu.is_empty() {
                    assert_eq!(martin_kernel_finite(&p(&[1]), &nu, &v).unwrap(), int(1));
                }
            }
        }
        assert_eq!(martin_kernel_finite(&p(&[2]), &p(&[2, 2]), &jack(int(1))).unwrap(), ratio(1, 2));
    }

    #[test]
    fn kingman_examples() {
        assert_eq!(kingman_kappa(&p(&[1]), &p(&[1, 1])).unwrap(), 2);
        assert_eq!(kingman_kappa(&p(&[2, 1]), &p(&[2, 2])).unwrap(), 2);
        assert_eq!(kingman_kappa(&p(&[2, 2]), &p(&[3, 2])).unwrap(), 1);
        assert!(kingman_kappa(&p(&[2]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn defect_examples() {
        for t in [ratio(1, 2), int(1), int(2)] {
            let v = jack(t.clone());
            let d = harmonicity_defect(|_| int(1), &p(&[1]), &v).unwrap();
            assert_eq!(d, int(2) / (int(1) + &t));
            // Green function away from its pole
            let pole = p(&[3, 2, 1]);
            let phi = |l: &Partition| dim_recursive(l, &pole, &v).unwrap();
            for l in enumerate_up_to(5) {
                assert_eq!(harmonicity_defect(phi, &l, &v).unwrap(), int(0), "at {l}");
            }
        }
    }

    #[test]
    fn paths_agree_with_recursion_small() {
        let v = jack(ratio(1, 2));
        for nu in enumerate(5) {
            assert_eq!(
                dim_paths(&Partition::empty(), &nu, &v).unwrap(),
                dim_recursive(&Partition::empty(), &nu, &v).unwrap()
            );
        }
    }
}
