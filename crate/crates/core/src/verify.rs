//! Identity suites over bounded ranges of diagrams, each reporting the first
//! counterexample exactly.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{martin_kernel_boundary, thoma_grid, ThomaPoint};
use crate::error::{Error, Result};
use crate::graph::{dim_hook, dim_paths, dims_from, harmonicity_defect, kingman_kappa, WeightedGraphView};
use crate::harmonic::{harmonic_from_measure, level_distribution, AtomicMeasure};
use crate::jack::{
    expand_in_jack, jack_p, jack_p_powersum, pieri_kappa, pieri_kappa_at_zero, pieri_kappa_j, KappaJMethod,
};
use crate::partition::{enumerate, enumerate_up_to, Partition};
use crate::rational::{format_rational, int, ratio, Rational};
use crate::shifted::{content_sum, dimension_formula_check, ptilde_eval, shifted_jack, shifted_schur_at};
use crate::symfunc::{multiply, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Pieri,
    Hook,
    Corners,
    DimensionFormula,
    KingmanLimit,
    Positivity,
    Harmonicity,
    Normalization,
    ContentSum,
    SchurDet,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Pieri,
        Suite::Hook,
        Suite::Corners,
        Suite::DimensionFormula,
        Suite::KingmanLimit,
        Suite::Positivity,
        Suite::Harmonicity,
        Suite::Normalization,
        Suite::ContentSum,
        Suite::SchurDet,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Pieri => "pieri",
            Suite::Hook => "hook",
            Suite::Corners => "corners",
            Suite::DimensionFormula => "dimension-formula",
            Suite::KingmanLimit => "kingman-limit",
            Suite::Positivity => "positivity",
            Suite::Harmonicity => "harmonicity",
            Suite::Normalization => "normalization",
            Suite::ContentSum => "content-sum",
            Suite::SchurDet => "schur-det",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// A failed check with both sides rendered exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub mu: Option<Partition>,
    pub nu: Option<Partition>,
    pub theta: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max: usize,
    pub thetas: Vec<String>,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Equal,
    /// `lhs >= rhs`.
    AtLeast,
}

struct Check {
    name: &'static str,
    mu: Option<Partition>,
    nu: Option<Partition>,
    theta: Option<Rational>,
    lhs: Rational,
    rhs: Rational,
    relation: Relation,
}

impl Check {
    fn eq(
        name: &'static str,
        mu: Option<&Partition>,
        nu: Option<&Partition>,
        theta: Option<&Rational>,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        Check { name, mu: mu.cloned(), nu: nu.cloned(), theta: theta.cloned(), lhs, rhs, relation: Relation::Equal }
    }

    fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.lhs == self.rhs,
            Relation::AtLeast => self.lhs >= self.rhs,
        }
    }

    fn counterexample(&self) -> Counterexample {
        Counterexample {
            check: self.name.to_string(),
            mu: self.mu.clone(),
            nu: self.nu.clone(),
            theta: self.theta.as_ref().map(format_rational),
            lhs: format_rational(&self.lhs),
            rhs: format_rational(&self.rhs),
        }
    }
}

/// Every edge `λ ↗ ν` with `|ν| <= max`.
fn edges(max: usize) -> Vec<(Partition, Partition)> {
    enumerate_up_to(max.saturating_sub(1))
        .into_iter()
        .filter(|l| l.size() < max)
        .flat_map(|l| l.covers().into_iter().map(move |n| (l.clone(), n)))
        .collect()
}

/// Measures with one to three atoms drawn from the sample grid.
pub fn sample_measures() -> Vec<AtomicMeasure> {
    let g = thoma_grid(50);
    let dirac = |i: usize| AtomicMeasure::dirac(g[i].clone());
    let mix = |parts: &[(usize, Rational)]| {
        AtomicMeasure::new(parts.iter().map(|(i, w)| (g[*i].clone(), w.clone()))).unwrap()
    };
    vec![
        dirac(0),
        dirac(1),
        dirac(2),
        dirac(30),
        mix(&[(5, ratio(1, 2)), (40, ratio(1, 2))]),
        mix(&[(12, ratio(1, 3)), (25, ratio(2, 3))]),
        mix(&[(3, ratio(1, 6)), (20, ratio(1, 3)), (45, ratio(1, 2))]),
        mix(&[(0, ratio(1, 4)), (1, ratio(1, 4)), (2, ratio(1, 2))]),
    ]
}

fn run_checks(checks: Vec<Check>) -> (usize, Option<Counterexample>) {
    let first = checks.iter().find(|c| !c.holds()).map(Check::counterexample);
    (checks.len(), first)
}

fn par_flat<T: Sync, F>(items: &[T], f: F) -> Result<Vec<Check>>
where
    F: Fn(&T) -> Result<Vec<Check>> + Sync + Send,
{
    let nested: Vec<Vec<Check>> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn theta_pairs<T: Clone>(thetas: &[Rational], xs: &[T]) -> Vec<(Rational, T)> {
    thetas.iter().flat_map(|t| xs.iter().map(move |x| (t.clone(), x.clone()))).collect()
}

/// Runs `suite` over diagrams with at most `max` boxes (the suites that need
/// one more level go to `max + 1`) and each `θ` in `thetas`.
pub fn run_suite(suite: Suite, max: usize, thetas: &[Rational]) -> Result<SuiteReport> {
    if thetas.is_empty() {
        return Err(Error::Domain("at least one theta is required".into()));
    }
    for t in thetas {
        crate::rational::require_positive(t, suite.name())?;
    }
    let mut notes = Vec::new();
    let checks = match suite {
        Suite::Pieri => {
            let work = theta_pairs(thetas, &enumerate_up_to(max));
            par_flat(&work, |(t, lam)| {
                let f = multiply(&SymFunc::powersum(crate::partition::p(&[1])), &jack_p_powersum(lam, t))?;
                let exp = expand_in_jack(&f, t, lam.size() + 1)?;
                let covers = lam.covers();
                let mut out = Vec::new();
                for nu in &covers {
                    let got = exp.get(nu).cloned().unwrap_or_else(Rational::zero);
                    out.push(Check::eq(
                        "jack coefficient of p1*P_lambda",
                        Some(lam),
                        Some(nu),
                        Some(t),
                        got,
                        pieri_kappa(lam, nu, t)?,
                    ));
                }
                for (nu, c) in exp.iter().filter(|(nu, _)| !covers.contains(nu)) {
                    out.push(Check::eq(
                        "coefficient off the covers",
                        Some(lam),
                        Some(nu),
                        Some(t),
                        c.clone(),
                        Rational::zero(),
                    ));
                }
                Ok(out)
            })?
        }
        Suite::Hook => par_flat(thetas, |t| {
            let view = WeightedGraphView::jack(t.clone())?;
            let dims = dims_from(&Partition::empty(), max, &view)?;
            let mut out = Vec::new();
            for nu in enumerate_up_to(max) {
                let rec = dims[&nu].clone();
                out.push(Check::eq("hook = recursion", None, Some(&nu), Some(t), dim_hook(&nu, t)?, rec.clone()));
                if nu.size() <= max.min(6) {
                    out.push(Check::eq(
                        "paths = recursion",
                        None,
                        Some(&nu),
                        Some(t),
                        dim_paths(&Partition::empty(), &nu, &view)?,
                        rec,
                    ));
                }
            }
            Ok(out)
        })?,
        Suite::Corners => {
            let work = theta_pairs(thetas, &edges(max));
            par_flat(&work, |(t, (lam, nu))| {
                Ok(vec![Check::eq(
                    "corner product = hook ratio",
                    Some(lam),
                    Some(nu),
                    Some(t),
                    pieri_kappa_j(lam, nu, t, KappaJMethod::Corners)?,
                    pieri_kappa_j(lam, nu, t, KappaJMethod::Ratio)?,
                )])
            })?
        }
        Suite::DimensionFormula => {
            let mus = enumerate_up_to(max.min(4));
            let work: Vec<(Rational, Partition, Partition)> = theta_pairs(thetas, &mus)
                .into_iter()
                .flat_map(|(t, mu)| enumerate_up_to(max).into_iter().map(move |nu| (t.clone(), mu.clone(), nu)))
                .collect();
            par_flat(&work, |(t, mu, nu)| {
                let (lhs, rhs) = dimension_formula_check(mu, nu, t)?;
                let mut out = vec![Check::eq(
                    "dim(mu,nu)/dim(nu) = P*_mu(nu)/(n falling m)",
                    Some(mu),
                    Some(nu),
                    Some(t),
                    lhs,
                    rhs,
                )];
                if *t == int(1) {
                    let vars = mu.len().max(nu.len()).max(1);
                    out.push(Check::eq(
                        "interpolation = determinant",
                        Some(mu),
                        Some(nu),
                        Some(t),
                        shifted_jack(mu, t)?.eval(nu),
                        shifted_schur_at(mu, nu, vars)?,
                    ));
                }
                Ok(out)
            })?
        }
        Suite::KingmanLimit => {
            notes.push(
                "theta-independent: kappa at theta -> 0 against Kingman, and kappa at theta = 1 against 1".into(),
            );
            par_flat(&edges(max), |(lam, nu)| {
                Ok(vec![
                    Check::eq(
                        "kappa at theta -> 0 = m_k(nu)",
                        Some(lam),
                        Some(nu),
                        None,
                        pieri_kappa_at_zero(lam, nu)?,
                        int(kingman_kappa(lam, nu)? as i64),
                    ),
                    Check::eq(
                        "kappa at theta = 1",
                        Some(lam),
                        Some(nu),
                        Some(&int(1)),
                        pieri_kappa(lam, nu, &int(1))?,
                        int(1),
                    ),
                ])
            })?
        }
        Suite::Positivity => {
            let grid = thoma_grid(50);
            let work = theta_pairs(thetas, &grid);
            let mus = enumerate_up_to(max);
            let checks = par_flat(&work, |(t, w): &(Rational, ThomaPoint)| {
                mus.iter()
                    .map(|mu| {
                        let v = martin_kernel_boundary(mu, w, t)?.value;
                        Ok(Check {
                            name: "K(mu, omega) >= 0",
                            mu: Some(mu.clone()),
                            nu: None,
                            theta: Some(t.clone()),
                            lhs: v,
                            rhs: Rational::zero(),
                            relation: Relation::AtLeast,
                        })
                    })
                    .collect()
            })?;
            if let Some(c) = checks.iter().min_by(|a, b| a.lhs.cmp(&b.lhs)) {
                notes.push(format!(
                    "minimum {} at mu = {} over {} grid points",
                    format_rational(&c.lhs),
                    c.mu.as_ref().unwrap(),
                    grid.len()
                ));
            }
            checks
        }
        Suite::Harmonicity => {
            let work = theta_pairs(thetas, &sample_measures());
            par_flat(&work, |(t, m)| {
                let view = WeightedGraphView::jack(t.clone())?;
                let phi = harmonic_from_measure(m.clone(), t)?;
                let values = phi.materialize(max + 1);
                let mut out = vec![Check::eq(
                    "phi(empty) = 1",
                    Some(&Partition::empty()),
                    None,
                    Some(t),
                    values[&Partition::empty()].clone(),
                    int(1),
                )];
                for lam in enumerate_up_to(max) {
                    let d = harmonicity_defect(|l| values[l].clone(), &lam, &view)?;
                    out.push(Check::eq("harmonicity defect", Some(&lam), None, Some(t), d, Rational::zero()));
                }
                Ok(out)
            })?
        }
        Suite::Normalization => {
            let work = theta_pairs(thetas, &sample_measures());
            let mut checks = par_flat(&work, |(t, m)| {
                let phi = harmonic_from_measure(m.clone(), t)?;
                let values = phi.materialize(max);
                (0..=max)
                    .map(|n| {
                        let dist = level_distribution(|l| values[l].clone(), n, t, false)?;
                        Ok(Check::eq("sum of M_n", Some(&Partition::row(n)), None, Some(t), dist.total(), int(1)))
                    })
                    .collect()
            })?;
            if thetas.contains(&int(1)) {
                let t = int(1);
                let phi = harmonic_from_measure(AtomicMeasure::dirac(ThomaPoint::gamma_vertex()), &t)?;
                for n in 0..=max {
                    let dist = level_distribution(|l| phi.value(l), n, &t, false)?;
                    for (lam, mass) in &dist.masses {
                        let d = dim_hook(lam, &t)?;
                        checks.push(Check::eq(
                            "Plancherel mass",
                            Some(lam),
                            None,
                            Some(&t),
                            mass.clone(),
                            &d * &d / crate::rational::factorial(n),
                        ));
                    }
                }
            }
            checks
        }
        Suite::ContentSum => {
            let work = theta_pairs(thetas, &enumerate_up_to(max));
            par_flat(&work, |(t, nu)| {
                (1..=5)
                    .map(|m| {
                        Ok(Check::eq(
                            "content sum = ptilde",
                            None,
                            Some(nu),
                            Some(t),
                            content_sum(nu, t, m)?,
                            ptilde_eval(m, nu, t),
                        ))
                    })
                    .collect()
            })?
        }
        Suite::SchurDet => {
            notes.push("runs at theta = 1 regardless of --theta".into());
            let t = int(1);
            let mut checks = par_flat(&enumerate_up_to(max.min(5)), |mu| {
                Ok(vec![Check::eq_sym(
                    "P_mu(theta=1) = Jacobi-Trudi",
                    mu,
                    &jack_p(mu, &t)?.expansion,
                    &jacobi_trudi(mu)?,
                )])
            })?;
            let pairs: Vec<(Partition, Partition)> = enumerate_up_to(max.min(4))
                .into_iter()
                .flat_map(|mu| enumerate_up_to(max).into_iter().map(move |nu| (mu.clone(), nu)))
                .collect();
            checks.extend(par_flat(&pairs, |(mu, nu)| {
                let vars = mu.len().max(nu.len()).max(1);
                Ok(vec![Check::eq(
                    "interpolation = determinant",
                    Some(mu),
                    Some(nu),
                    Some(&t),
                    shifted_jack(mu, &t)?.eval(nu),
                    shifted_schur_at(mu, nu, vars)?,
                )])
            })?);
            checks
        }
    };
    let (count, counterexample) = run_checks(checks);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        max,
        thetas: thetas.iter().map(format_rational).collect(),
        checks: count,
        passed: counterexample.is_none(),
        counterexample,
        notes,
    })
}

impl Check {
    /// Compares two symmetric functions term by term; on mismatch reports the
    /// first differing coefficient.
    fn eq_sym(name: &'static str, mu: &Partition, a: &SymFunc, b: &SymFunc) -> Self {
        let a = a.to_monomial();
        let b = b.to_monomial();
        let keys: std::collections::BTreeSet<&Partition> = a.terms().keys().chain(b.terms().keys()).collect();
        for k in keys {
            let (x, y) = (a.coeff(k), b.coeff(k));
            if x != y {
                return Check::eq(name, Some(mu), Some(k), Some(&int(1)), x, y);
            }
        }
        Check::eq(name, Some(mu), None, Some(&int(1)), Rational::zero(), Rational::zero())
    }
}

/// `h_n` in the monomial basis.
fn complete_h(n: usize) -> SymFunc {
    SymFunc::from_terms(crate::symfunc::Basis::Monomial, enumerate(n).into_iter().map(|l| (l, int(1))))
}

/// `det[h_{μ_i − i + j}]` expanded over permutations, in the monomial basis.
pub fn jacobi_trudi(mu: &Partition) -> Result<SymFunc> {
    let l = mu.len();
    let mut total = SymFunc::zero(crate::symfunc::Basis::Monomial);
    if l == 0 {
        return Ok(SymFunc::one(crate::symfunc::Basis::Monomial));
    }
    let mut perm: Vec<usize> = (0..l).collect();
    loop {
        let mut term = SymFunc::one(crate::symfunc::Basis::Monomial);
        let mut ok = true;
        for (i, &j) in perm.iter().enumerate() {
            let k = mu.part(i + 1) as isize - i as isize + j as isize;
            if k < 0 {
                ok = false;
                break;
            }
            term = multiply(&term, &complete_h(k as usize))?;
        }
        if ok {
            let inversions =
                (0..l).flat_map(|a| (a + 1..l).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let sign = if inversions % 2 == 0 { int(1) } else { int(-1) };
            total = total.add(&term.scale(&sign))?;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
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
