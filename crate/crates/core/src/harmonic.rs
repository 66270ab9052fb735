//! Harmonic functions of the Jack graph built from finite atomic measures on
//! the Thoma simplex, their level distributions and convergence diagnostics.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::boundary::{embed_omega, martin_kernel_boundary, theta_extend_eval, ThomaPoint};
use crate::error::{domain, Error, Result};
use crate::graph::{dim_hook, dim_recursive, WeightedGraphView};
use crate::jack::jack_p_powersum;
use crate::partition::{enumerate, enumerate_up_to, Partition};
use crate::rational::{require_positive, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: ThomaPoint,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

/// Probability measure with finitely many atoms; weights positive, summing to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom>", into = "Vec<Atom>")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<Vec<Atom>> for AtomicMeasure {
    type Error = Error;
    fn try_from(atoms: Vec<Atom>) -> Result<Self> {
        AtomicMeasure::new(atoms.into_iter().map(|a| (a.point, a.weight)))
    }
}

impl From<AtomicMeasure> for Vec<Atom> {
    fn from(m: AtomicMeasure) -> Self {
        m.atoms
    }
}

impl AtomicMeasure {
    pub fn new(atoms: impl IntoIterator<Item = (ThomaPoint, Rational)>) -> Result<Self> {
        let atoms: Vec<Atom> = atoms.into_iter().map(|(point, weight)| Atom { point, weight }).collect();
        if atoms.is_empty() {
            return domain("a measure needs at least one atom");
        }
        if let Some(a) = atoms.iter().find(|a| !a.weight.is_positive()) {
            return domain(format!("atom weight {} at {} is not positive", a.weight, a.point));
        }
        let total: Rational = atoms.iter().map(|a| &a.weight).sum();
        if !total.is_one() {
            return domain(format!("atom weights sum to {total}, not 1"));
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn dirac(point: ThomaPoint) -> Self {
        AtomicMeasure { atoms: vec![Atom { point, weight: Rational::one() }] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `∫ f dM`.
    pub fn integrate(&self, f: impl Fn(&ThomaPoint) -> Rational) -> Rational {
        self.atoms.iter().map(|a| &a.weight * f(&a.point)).sum()
    }
}

/// `φ(μ) = ∫ K(μ, ω) M(dω)`.
#[derive(Clone, Debug)]
pub struct HarmonicFunction {
    measure: AtomicMeasure,
    theta: Rational,
}

impl HarmonicFunction {
    pub fn measure(&self) -> &AtomicMeasure {
        &self.measure
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn value(&self, mu: &Partition) -> Rational {
        let p = jack_p_powersum(mu, &self.theta);
        self.measure.integrate(|w| theta_extend_eval(&p, w, &self.theta))
    }

    /// Values on every diagram with at most `max_level` boxes.
    pub fn materialize(&self, max_level: usize) -> BTreeMap<Partition, Rational> {
        use rayon::prelude::*;
        enumerate_up_to(max_level)
            .into_par_iter()
            .map(|mu| {
                let v = self.value(&mu);
                (mu, v)
            })
            .collect()
    }
}

pub fn harmonic_from_measure(measure: AtomicMeasure, theta: &Rational) -> Result<HarmonicFunction> {
    require_positive(theta, "harmonic_from_measure")?;
    Ok(HarmonicFunction { measure, theta: theta.clone() })
}

/// `M_n(λ) = dim_θ(λ) φ(λ)` on the diagrams with `n` boxes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelDistribution {
    pub n: usize,
    #[serde(serialize_with = "serialize_masses")]
    pub masses: BTreeMap<Partition, Rational>,
}

fn serialize_masses<S: serde::Serializer>(
    m: &BTreeMap<Partition, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (lam, v) in m.iter().rev() {
        seq.serialize_element(&serde_json::json!({
            "lambda": lam,
            "mass": crate::rational::format_rational(v),
            "decimal": crate::rational::to_f64(v),
        }))?;
    }
    seq.end()
}

impl LevelDistribution {
    pub fn total(&self) -> Rational {
        self.masses.values().sum()
    }
}

/// Builds `M_n` from the hook-formula dimensions; with `cross_check` each
/// dimension is also recomputed by the branching recursion.
pub fn level_distribution(
    phi: impl Fn(&Partition) -> Rational,
    n: usize,
    theta: &Rational,
    cross_check: bool,
) -> Result<LevelDistribution> {
    let view = WeightedGraphView::jack(theta.clone())?;
    let mut masses = BTreeMap::new();
    for lam in enumerate(n) {
        let d = dim_hook(&lam, theta)?;
        if cross_check {
            let r = dim_recursive(&Partition::empty(), &lam, &view)?;
            if r != d {
                return Err(Error::Internal(format!("dim({lam}): hook {d} but recursion {r}")));
            }
        }
        let m = d * phi(&lam);
        if m.is_negative() {
            return Err(Error::NotHarmonic(format!("negative mass {m} at {lam}")));
        }
        masses.insert(lam, m);
    }
    Ok(LevelDistribution { n, masses })
}

/// One row of the pushforward table: `∫ p_m(·|θ)` for `m = 2..=4` under the
/// image of `M_n` and under `M`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushforwardRow {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub transported: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub target: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub gap: Vec<Rational>,
}

pub const PUSHFORWARD_MAX_MOMENT: usize = 4;

pub fn pushforward_convergence(
    measure: &AtomicMeasure,
    theta: &Rational,
    n_list: &[usize],
) -> Result<Vec<PushforwardRow>> {
    let phi = harmonic_from_measure(measure.clone(), theta)?;
    let ms = 2..=PUSHFORWARD_MAX_MOMENT;
    let target: Vec<Rational> = ms.clone().map(|m| measure.integrate(|w| w.extended_powersum(m, theta))).collect();
    let mut rows = Vec::new();
    for &n in n_list {
        if n == 0 {
            return domain("the empty diagram has no image in the Thoma simplex; use n >= 1");
        }
        let dist = level_distribution(|l| phi.value(l), n, theta, false)?;
        let mut transported = vec![Rational::zero(); target.len()];
        for (lam, mass) in &dist.masses {
            if mass.is_zero() {
                continue;
            }
            let w = embed_omega(lam)?;
            for (slot, m) in transported.iter_mut().zip(ms.clone()) {
                *slot += mass * w.extended_powersum(m, theta);
            }
        }
        let gap = transported.iter().zip(&target).map(|(a, b)| (a - b).abs()).collect();
        rows.push(PushforwardRow { n, transported, target: target.clone(), gap });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    pub omega: ThomaPoint,
    #[serde(with = "crate::rational::serde_str")]
    pub theta: Rational,
    pub checked: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub min_value: Rational,
    pub argmin: Partition,
    /// Diagrams with a negative kernel value; empty when positivity holds.
    pub negatives: Vec<Partition>,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.negatives.is_empty()
    }
}

/// Evaluates `K(μ, ω)` for every `|μ| <= n_max`, recording the minimum.
pub fn positivity_scan(omega: &ThomaPoint, theta: &Rational, n_max: usize) -> Result<PositivityReport> {
    require_positive(theta, "positivity_scan")?;
    let mut min: Option<(Rational, Partition)> = None;
    let mut negatives = Vec::new();
    let diagrams = enumerate_up_to(n_max);
    for mu in &diagrams {
        let v = martin_kernel_boundary(mu, omega, theta)?.value;
        if v.is_negative() {
            negatives.push(mu.clone());
        }
        if min.as_ref().is_none_or(|(m, _)| v < *m) {
            min = Some((v, mu.clone()));
        }
    }
    let (min_value, argmin) = min.expect("the empty diagram is always scanned");
    Ok(PositivityReport {
        omega: omega.clone(),
        theta: theta.clone(),
        checked: diagrams.len(),
        min_value,
        argmin,
        negatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::harmonicity_defect;
    use crate::partition::p;
    use crate::rational::{factorial, int, ratio};

    fn point(alpha: &[(i64, i64)], beta: &[(i64, i64)]) -> ThomaPoint {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| ratio(a, b)).collect();
        ThomaPoint::new(f(alpha), f(beta)).unwrap()
    }

    #[test]
    fn measure_validation() {
        let w = ThomaPoint::gamma_vertex();
        assert!(AtomicMeasure::new([(w.clone(), ratio(1, 2))]).is_err());
        assert!(AtomicMeasure::new([(w.clone(), int(2)), (w.clone(), int(-1))]).is_err());
        assert!(AtomicMeasure::new(Vec::new()).is_err());
        let m = AtomicMeasure::new([(w.clone(), ratio(1, 3)), (point(&[(1, 2)], &[]), ratio(2, 3))]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<AtomicMeasure>(&s).unwrap(), m);
    }

    #[test]
    fn mixture_is_harmonic_and_normalized() {
        for t in [ratio(1, 2), int(1), int(2)] {
            let view = WeightedGraphView::jack(t.clone()).unwrap();
            let m = AtomicMeasure::new([
                (point(&[(1, 2)], &[(1, 4)]), ratio(1, 2)),
                (point(&[], &[(1, 3), (1, 3)]), ratio(1, 2)),
            ])
            .unwrap();
            let phi = harmonic_from_measure(m, &t).unwrap();
            let values = phi.materialize(5);
            assert_eq!(values[&Partition::empty()], int(1));
            for lam in enumerate_up_to(4) {
                assert_eq!(harmonicity_defect(|l| values[l].clone(), &lam, &view).unwrap(), int(0));
            }
            for n in 0..=5 {
                assert_eq!(level_distribution(|l| values[l].clone(), n, &t, true).unwrap().total(), int(1));
            }
        }
    }

    #[test]
    fn plancherel_and_single_row() {
        let t = int(1);
        let phi = harmonic_from_measure(AtomicMeasure::dirac(ThomaPoint::gamma_vertex()), &t).unwrap();
        let view = WeightedGraphView::jack(t.clone()).unwrap();
        for n in 0..=6 {
            let dist = level_distribution(|l| phi.value(l), n, &t, false).unwrap();
            for (lam, m) in &dist.masses {
                let d = dim_recursive(&Partition::empty(), lam, &view).unwrap();
                assert_eq!(*m, &d * &d / factorial(n));
            }
        }
        let t = ratio(3, 2);
        let phi = harmonic_from_measure(AtomicMeasure::dirac(point(&[(1, 1)], &[])), &t).unwrap();
        let dist = level_distribution(|l| phi.value(l), 4, &t, false).unwrap();
        assert_eq!(dist.masses[&p(&[4])], int(1));
        assert!(dist.masses.iter().filter(|(l, _)| l.len() > 1).all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn pushforward_examples() {
        let t = ratio(1, 2);
        let rows = pushforward_convergence(&AtomicMeasure::dirac(point(&[(1, 1)], &[])), &t, &[1, 2, 4, 8]).unwrap();
        // n = 1: the only diagram embeds at β = (1)
        assert_eq!(rows[0].transported, vec![-t.clone(), t.clone() * &t, -(t.clone() * &t * &t)]);
        for w in rows.windows(2) {
            assert!(w[1].gap[0] < w[0].gap[0]);
        }
        assert!(pushforward_convergence(&AtomicMeasure::dirac(ThomaPoint::gamma_vertex()), &t, &[0]).is_err());
    }

    #[test]
    fn positivity_examples() {
        let r = positivity_scan(&ThomaPoint::gamma_vertex(), &int(2), 5).unwrap();
        assert!(r.passed());
        assert!(r.min_value >= int(0));
        assert_eq!(martin_kernel_boundary(&p(&[1]), &point(&[(1, 3)], &[(1, 5)]), &int(2)).unwrap().value, int(1));
    }
}
