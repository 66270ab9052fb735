//! Symmetric functions with exact rational coefficients in the monomial,
//! power-sum and Jack bases.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg::Matrix;
use crate::partition::{enumerate, Partition};
use crate::rational::{format_rational, parse_rational, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    PowerSum,
    /// Jack polynomials `P_λ(·; θ)`.
    Jack(Rational),
}

/// A finitely supported linear combination of basis elements indexed by partitions.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, Rational>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, index: Partition) -> Self {
        let mut f = Self::zero(basis);
        f.terms.insert(index, Rational::one());
        f
    }

    pub fn monomial(index: Partition) -> Self {
        Self::basis_element(Basis::Monomial, index)
    }

    pub fn powersum(index: Partition) -> Self {
        Self::basis_element(Basis::PowerSum, index)
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut f = Self::zero(basis);
        for (k, v) in terms {
            f.add_term(k, v);
        }
        f
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, index: &Partition) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` to the coefficient of `index`, dropping the entry if it cancels.
    pub fn add_term(&mut self, index: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> SymFunc {
        SymFunc::from_terms(self.basis.clone(), self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis {
            return domain("adding symmetric functions in different bases");
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// The common size of all indices, if there is one. The zero function has none.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::size);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    /// Restriction to the indices of size `d`.
    pub fn homogeneous_part(&self, d: usize) -> SymFunc {
        SymFunc::from_terms(
            self.basis.clone(),
            self.terms.iter().filter(|(k, _)| k.size() == d).map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    pub fn to_powersum(&self) -> SymFunc {
        match &self.basis {
            Basis::PowerSum => self.clone(),
            Basis::Monomial => monomial_to_powersum(self),
            Basis::Jack(theta) => {
                let mut out = SymFunc::zero(Basis::PowerSum);
                for (k, v) in &self.terms {
                    let pk = crate::jack::jack_p_powersum(k, theta);
                    for (i, c) in pk.terms() {
                        out.add_term(i.clone(), c * v);
                    }
                }
                out
            }
        }
    }

    pub fn to_monomial(&self) -> SymFunc {
        match &self.basis {
            Basis::Monomial => self.clone(),
            Basis::PowerSum => powersum_to_monomial(self),
            Basis::Jack(_) => powersum_to_monomial(&self.to_powersum()),
        }
    }
}

/// Product in the monomial or power-sum basis.
pub fn multiply(f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
    match (&f.basis, &g.basis) {
        (Basis::PowerSum, Basis::PowerSum) => {
            let mut out = SymFunc::zero(Basis::PowerSum);
            for (a, x) in &f.terms {
                for (b, y) in &g.terms {
                    let mut parts = a.parts().to_vec();
                    parts.extend_from_slice(b.parts());
                    out.add_term(Partition::from_unsorted(parts), x * y);
                }
            }
            Ok(out)
        }
        (Basis::Monomial, Basis::Monomial) => {
            let mut out = SymFunc::zero(Basis::Monomial);
            for (a, x) in &f.terms {
                for (b, y) in &g.terms {
                    for (nu, c) in monomial_product(a, b) {
                        out.add_term(nu, x * y * Rational::from_integer(c.into()));
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::Domain(format!(
            "multiply needs both factors in the monomial or both in the power-sum basis, got {:?} and {:?}",
            f.basis, g.basis
        ))),
    }
}

/// Distinct rearrangements of `parts` (zeros allowed) into exactly `len` slots.
fn distinct_arrangements(parts: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut padded = parts.to_vec();
    if padded.len() > len {
        return Vec::new();
    }
    padded.resize(len, 0);
    let mut values: Vec<usize> = padded.clone();
    values.sort_unstable();
    values.dedup();
    let mut counts: Vec<usize> = values.iter().map(|v| padded.iter().filter(|&&x| x == *v).count()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(values: &[usize], counts: &mut [usize], cur: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..values.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(values[i]);
                go(values, counts, cur, len, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    go(&values, &mut counts, &mut cur, len, &mut out);
    out
}

/// `m_a · m_b = Σ c_ν m_ν` where `c_ν` counts pairs of exponent vectors
/// (a rearrangement of `a`, a rearrangement of `b`) summing to `ν`.
fn monomial_product(a: &Partition, b: &Partition) -> Vec<(Partition, u64)> {
    let n = a.len() + b.len();
    let mut targets: Vec<Partition> = distinct_arrangements(b.parts(), n)
        .into_iter()
        .map(|beta| {
            let s: Vec<usize> = (0..n).map(|i| a.part(i + 1) + beta[i]).collect();
            Partition::from_unsorted(s)
        })
        .collect();
    targets.sort();
    targets.dedup();
    let mut out = Vec::new();
    for nu in targets {
        let len = nu.len();
        let mut count = 0u64;
        for alpha in distinct_arrangements(a.parts(), len) {
            let rest: Option<Vec<usize>> = (0..len).map(|i| nu.part(i + 1).checked_sub(alpha[i])).collect();
            if let Some(rest) = rest {
                if Partition::from_unsorted(rest) == *b {
                    count += 1;
                }
            }
        }
        if count > 0 {
            out.push((nu, count));
        }
    }
    out
}

/// Change-of-basis data between `p_λ` and `m_λ` at one degree.
pub(crate) struct Transition {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// Row `λ`: coefficients of `p_λ` in the monomial basis.
    pub p_to_m: Matrix,
    /// Row `λ`: coefficients of `m_λ` in the power-sum basis.
    pub m_to_p: Matrix,
}

/// Number of maps `f` from the parts of `lambda` to the rows of `mu` with
/// `Σ_{f(i)=j} λ_i = μ_j`; this is the coefficient of `m_μ` in `p_λ`.
fn p_in_m_coefficient(lambda: &Partition, mu: &Partition) -> u64 {
    fn go(parts: &[usize], room: &mut [usize]) -> u64 {
        let Some((&first, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for j in 0..room.len() {
            if room[j] >= first {
                room[j] -= first;
                total += go(rest, room);
                room[j] += first;
            }
        }
        total
    }
    go(lambda.parts(), &mut mu.parts().to_vec())
}

fn build_transition(n: usize) -> Transition {
    let parts = enumerate(n);
    let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let k = parts.len();
    let mut p_to_m = Matrix::zeros(k, k);
    for (i, l) in parts.iter().enumerate() {
        for (j, m) in parts.iter().enumerate() {
            let c = p_in_m_coefficient(l, m);
            if c != 0 {
                p_to_m.set(i, j, Rational::from_integer(c.into()));
            }
        }
    }
    // p_to_m is triangular with nonzero diagonal; invert column by column
    let mut m_to_p = Matrix::zeros(k, k);
    for j in 0..k {
        // solve x^T p_to_m = e_j^T, i.e. m_j = Σ x_i p_i
        let mut x = vec![Rational::zero(); k];
        // p_to_m[i][j'] is nonzero only for j' <= i in revlex order (m dominates p's index)
        for i in (0..k).rev() {
            let mut s = if i == j { Rational::one() } else { Rational::zero() };
            for (l, xl) in x.iter().enumerate().skip(i + 1) {
                if !xl.is_zero() {
                    s -= xl * p_to_m.get(l, i);
                }
            }
            x[i] = s / p_to_m.get(i, i);
        }
        for (i, v) in x.into_iter().enumerate() {
            m_to_p.set(j, i, v);
        }
    }
    Transition { parts, index, p_to_m, m_to_p }
}

pub(crate) fn transition(n: usize) -> Arc<Transition> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Transition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_transition(n));
    cache.write().unwrap().entry(n).or_insert(t).clone()
}

pub fn powersum_to_monomial(f: &SymFunc) -> SymFunc {
    convert(f, Basis::PowerSum, Basis::Monomial, |t| &t.p_to_m)
}

pub fn monomial_to_powersum(f: &SymFunc) -> SymFunc {
    convert(f, Basis::Monomial, Basis::PowerSum, |t| &t.m_to_p)
}

fn convert(f: &SymFunc, from: Basis, to: Basis, pick: fn(&Transition) -> &Matrix) -> SymFunc {
    assert_eq!(f.basis, from, "convert called with wrong source basis");
    let mut out = SymFunc::zero(to);
    for (k, v) in &f.terms {
        let t = transition(k.size());
        let m = pick(&t);
        let i = t.index[k];
        for (j, target) in t.parts.iter().enumerate() {
            let c = m.get(i, j);
            if !c.is_zero() {
                out.add_term(target.clone(), c * v);
            }
        }
    }
    out
}

/// `(p_μ, p_λ)_θ = δ_{μλ} z_λ θ^{-l(λ)}`, extended bilinearly.
pub fn scalar_product_theta(f: &SymFunc, g: &SymFunc, theta: &Rational) -> Result<Rational> {
    if theta.is_zero() {
        return domain("scalar product is undefined at theta = 0");
    }
    let (f, g) = (f.to_powersum(), g.to_powersum());
    let mut acc = Rational::zero();
    for (k, x) in &f.terms {
        if let Some(y) = g.terms.get(k) {
            acc += x * y * k.z() / pow(theta, k.len());
        }
    }
    Ok(acc)
}

/// Specialises to the finitely many variables `x` (all others zero).
pub fn evaluate(f: &SymFunc, x: &[Rational]) -> Rational {
    match &f.basis {
        Basis::PowerSum => f
            .terms
            .iter()
            .map(|(k, c)| {
                k.parts().iter().map(|&m| x.iter().map(|xi| pow(xi, m)).sum::<Rational>()).product::<Rational>() * c
            })
            .sum(),
        Basis::Monomial => f
            .terms
            .iter()
            .map(|(k, c)| {
                distinct_arrangements(k.parts(), x.len())
                    .iter()
                    .map(|exps| exps.iter().zip(x).map(|(&e, xi)| pow(xi, e)).product::<Rational>())
                    .sum::<Rational>()
                    * c
            })
            .sum(),
        Basis::Jack(_) => evaluate(&f.to_monomial(), x),
    }
}

impl fmt::Display for SymFunc {
    /// `m[2] + (2/3)·m[1,1]`; indices in reverse lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::Monomial => "m",
            Basis::PowerSum => "p",
            Basis::Jack(_) => "P",
        };
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_empty() {
                write!(f, "{}", format_rational(c))?;
            } else if c.is_one() {
                write!(f, "{sym}{k}")?;
            } else if c.is_integer() && c.is_positive() {
                write!(f, "{}·{sym}{k}", format_rational(c))?;
            } else {
                write!(f, "({})·{sym}{k}", format_rational(c))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    index: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymFuncRepr {
    basis: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theta: Option<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (basis, theta) = match &self.basis {
            Basis::Monomial => ("monomial", None),
            Basis::PowerSum => ("powersum", None),
            Basis::Jack(t) => ("jack", Some(format_rational(t))),
        };
        SymFuncRepr {
            basis: basis.to_string(),
            theta,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(k, v)| TermRepr { index: k.clone(), coeff: format_rational(v) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SymFuncRepr::deserialize(d)?;
        let basis = match (r.basis.as_str(), r.theta) {
            ("monomial", None) => Basis::Monomial,
            ("powersum", None) => Basis::PowerSum,
            ("jack", Some(t)) => Basis::Jack(parse_rational(&t).map_err(D::Error::custom)?),
            (b, _) => return Err(D::Error::custom(format!("unknown basis tag {b:?}"))),
        };
        let mut f = SymFunc::zero(basis);
        for t in r.terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            if f.terms.insert(t.index, c).is_some() {
                return Err(D::Error::custom("duplicate index"));
            }
        }
        Ok(f)
    }
}
