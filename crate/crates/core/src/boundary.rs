//! Points of the Thoma simplex, embeddings of diagrams into it, θ-extended
//! symmetric functions and the boundary Martin kernel.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::jack::jack_p_powersum;
use crate::linalg::Matrix;
use crate::partition::Partition;
use crate::rational::{format_rational, int, pow, require_positive, to_f64, Rational};
use crate::shifted::ShiftedSymFunc;
use crate::symfunc::SymFunc;

/// `ω = (α; β)` with finitely many nonzero coordinates; `γ = 1 − Σα − Σβ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ThomaRepr", into = "ThomaRepr")]
pub struct ThomaPoint {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ThomaRepr {
    #[serde(with = "crate::rational::serde_str_vec")]
    alpha: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str_vec")]
    beta: Vec<Rational>,
    #[serde(default, skip_deserializing)]
    gamma: String,
}

impl TryFrom<ThomaRepr> for ThomaPoint {
    type Error = Error;
    fn try_from(r: ThomaRepr) -> Result<Self> {
        ThomaPoint::new(r.alpha, r.beta)
    }
}

impl From<ThomaPoint> for ThomaRepr {
    fn from(p: ThomaPoint) -> Self {
        let gamma = format_rational(&p.gamma());
        ThomaRepr { alpha: p.alpha, beta: p.beta, gamma }
    }
}

fn normalise(mut v: Vec<Rational>, name: &str) -> Result<Vec<Rational>> {
    if let Some(bad) = v.iter().find(|x| x.is_negative() || **x > Rational::one()) {
        return domain(format!("{name} coordinate {bad} is outside [0, 1]"));
    }
    v.retain(|x| !x.is_zero());
    v.sort_by(|a, b| b.cmp(a));
    Ok(v)
}

impl ThomaPoint {
    /// Sorts each sequence decreasingly and drops zeros; fails unless every
    /// coordinate is in `[0, 1]` and `Σα + Σβ <= 1`.
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        let p = ThomaPoint { alpha: normalise(alpha, "alpha")?, beta: normalise(beta, "beta")? };
        if p.gamma().is_negative() {
            return domain(format!("coordinates of {p} sum to more than 1"));
        }
        Ok(p)
    }

    /// `α = β = 0`, `γ = 1`.
    pub fn gamma_vertex() -> Self {
        ThomaPoint { alpha: Vec::new(), beta: Vec::new() }
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn gamma(&self) -> Rational {
        Rational::one() - self.alpha.iter().sum::<Rational>() - self.beta.iter().sum::<Rational>()
    }

    /// `p_m(ω | θ)`: 1 for `m = 1`, otherwise `Σ α^m + (−θ)^{m−1} Σ β^m`.
    pub fn extended_powersum(&self, m: usize, theta: &Rational) -> Rational {
        assert!(m >= 1, "power sums start at p_1");
        if m == 1 {
            return Rational::one();
        }
        let a: Rational = self.alpha.iter().map(|x| pow(x, m)).sum();
        let b: Rational = self.beta.iter().map(|x| pow(x, m)).sum();
        a + pow(&-theta, m - 1) * b
    }
}

impl fmt::Display for ThomaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        write!(f, "({}; {}; γ={})", join(&self.alpha), join(&self.beta), format_rational(&self.gamma()))
    }
}

impl FromStr for ThomaPoint {
    type Err = Error;

    /// Parses `"alpha;beta"` with comma-separated rationals on each side, e.g. `"1/2,1/4;1/8"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(';').ok_or_else(|| Error::Parse(format!("expected 'alpha;beta', got {s:?}")))?;
        ThomaPoint::new(parse_list(a)?, parse_list(b)?)
    }
}

/// Parses a comma-separated list of rationals; the empty string is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(crate::rational::parse_rational).collect()
}

/// Frobenius coordinates divided by `n = |ν|`.
pub fn embed_omega(nu: &Partition) -> Result<ThomaPoint> {
    if nu.is_empty() {
        return domain("the empty diagram has no image in the Thoma simplex");
    }
    let n = int(nu.size() as i64);
    let f = nu.frobenius();
    let scale = |v: Vec<usize>| v.into_iter().map(|x| int(x as i64) / &n).collect();
    ThomaPoint::new(scale(f.a), scale(f.b))
}

/// Positive-part row lengths and negative-part column lengths divided by `n`.
pub fn embed_omega_theta(nu: &Partition, theta: &Rational) -> Result<ThomaPoint> {
    if nu.is_empty() {
        return domain("the empty diagram has no image in the Thoma simplex");
    }
    let (a, b) = nu.split_positive_negative(theta)?;
    let n = int(nu.size() as i64);
    let scale = |v: Vec<usize>| v.into_iter().map(|x| int(x as i64) / &n).collect();
    ThomaPoint::new(scale(a), scale(b))
}

/// Applies the homomorphism `p_1 ↦ 1`, `p_m ↦ p_m(ω | θ)` to `f`.
pub fn theta_extend_eval(f: &SymFunc, omega: &ThomaPoint, theta: &Rational) -> Rational {
    let f = f.to_powersum();
    let mut cache: HashMap<usize, Rational> = HashMap::new();
    let mut total = Rational::zero();
    for (idx, c) in f.terms() {
        let mut term = c.clone();
        for &m in idx.parts() {
            term *= &*cache.entry(m).or_insert_with(|| omega.extended_powersum(m, theta));
        }
        total += term;
    }
    total
}

/// `K(μ; ω)` together with its arguments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryKernelValue {
    pub mu: Partition,
    pub omega: ThomaPoint,
    #[serde(with = "crate::rational::serde_str")]
    pub theta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

/// The θ-extension of `P_μ(·; θ)` at `ω`.
pub fn martin_kernel_boundary(mu: &Partition, omega: &ThomaPoint, theta: &Rational) -> Result<BoundaryKernelValue> {
    require_positive(theta, "martin_kernel_boundary")?;
    let value = theta_extend_eval(&jack_p_powersum(mu, theta), omega, theta);
    Ok(BoundaryKernelValue { mu: mu.clone(), omega: omega.clone(), theta: theta.clone(), value })
}

/// Coefficients `h_0..h_n` of `e^{zγ} Π (1 + z β_j) / (1 − z α_j)`.
pub fn extended_h_series(omega: &ThomaPoint, n: usize) -> Vec<Rational> {
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let g = omega.gamma();
    let mut series: Vec<Rational> = (0..=n).map(|k| pow(&g, k) / crate::rational::factorial(k)).collect();
    for a in &omega.alpha {
        let geo: Vec<Rational> = (0..=n).map(|k| pow(a, k)).collect();
        series = mul(&series, &geo);
    }
    for b in &omega.beta {
        let mut lin = vec![Rational::zero(); n + 1];
        lin[0] = Rational::one();
        if n >= 1 {
            lin[1] = b.clone();
        }
        series = mul(&series, &lin);
    }
    series
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let Some(v) = n.to_u128() else {
        return Err(Error::ReconstructionFailed("coefficients too large for rational root search".into()));
    };
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= v {
        if d > 50_000_000 {
            return Err(Error::ReconstructionFailed("coefficients too large for rational root search".into()));
        }
        if v % d == 0 {
            small.push(BigInt::from(d));
            if d * d != v {
                large.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// All rational roots, with multiplicity, of the polynomial with ascending
/// coefficients `coeffs`. Fails if some root is not rational.
fn rational_roots(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    let mut poly = coeffs.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    while poly.len() > 1 {
        if poly[0].is_zero() {
            return Err(Error::ReconstructionFailed("zero node in moment recurrence".into()));
        }
        let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        let mut found = None;
        'search: for q in divisors(&an)? {
            for p in divisors(&a0)? {
                for s in [1, -1] {
                    let r = Rational::new(&p * BigInt::from(s), q.clone());
                    let val = poly.iter().rev().fold(Rational::zero(), |acc, c| acc * &r + c);
                    if val.is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let r = found.ok_or_else(|| Error::ReconstructionFailed("moment recurrence has an irrational root".into()))?;
        // synthetic division by (z - r)
        let deg = poly.len() - 1;
        let mut quot = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for k in (0..deg).rev() {
            carry = &poly[k + 1] + &carry * &r;
            quot[k] = carry.clone();
        }
        roots.push(r);
        poly = quot;
    }
    Ok(roots)
}

/// Recovers `ω` from `φ(p_2), …, φ(p_M)`, assuming at most `k` distinct nonzero
/// values among α and among β. The sequence `q_j = p_{j+2}` is an exponential
/// sum over the nodes `α_i` and `−θ β_i`; the nodes come from the minimal
/// recurrence read off the Hankel matrix, the weights from a Vandermonde system.
pub fn recover_thoma_from_moments(moments: &[Rational], theta: &Rational, k: usize) -> Result<ThomaPoint> {
    require_positive(theta, "recover_thoma_from_moments")?;
    let max_nodes = 2 * k;
    if moments.len() < 2 * max_nodes + 1 {
        return Err(Error::Domain(format!(
            "need at least {} moments p_2..p_M for support size {k}, got {}",
            2 * max_nodes + 1,
            moments.len()
        )));
    }
    let q = moments;
    let hankel = |r: usize| Matrix::from_rows((0..r).map(|i| (0..r).map(|j| q[i + j].clone()).collect()).collect());
    let rank = hankel(max_nodes + 1).rank();
    if rank > max_nodes {
        return Err(Error::ReconstructionFailed(format!("moments need more than {max_nodes} nodes")));
    }
    let r = rank;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    if r > 0 {
        let rhs: Vec<Rational> = (0..r).map(|i| -q[i + r].clone()).collect();
        let c = hankel(r).solve(&rhs).map_err(|_| Error::ReconstructionFailed("degenerate Hankel system".into()))?;
        let mut poly = c;
        poly.push(Rational::one());
        nodes = rational_roots(&poly)?;
        let mut sorted = nodes.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != nodes.len() {
            return Err(Error::ReconstructionFailed("repeated node in moment recurrence".into()));
        }
        let v = Matrix::from_rows((0..r).map(|j| nodes.iter().map(|x| pow(x, j)).collect()).collect());
        let u = v.solve(&q[..r]).map_err(|e| Error::ReconstructionFailed(e.to_string()))?;
        // q_j = Σ w ρ^{j+1}
        weights = u.iter().zip(&nodes).map(|(u, x)| u / x).collect();
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (x, w) in nodes.iter().zip(&weights) {
        let (value, bucket) = if x.is_positive() { (x.clone(), &mut alpha) } else { (-x / theta, &mut beta) };
        let mult = w / &value;
        if !mult.is_integer() || !mult.is_positive() {
            return Err(Error::ReconstructionFailed(format!("node {x} carries non-integral multiplicity {mult}")));
        }
        let times = mult.to_integer().to_usize().unwrap_or(usize::MAX);
        if times > 1_000_000 {
            return Err(Error::ReconstructionFailed(format!("implausible multiplicity {mult}")));
        }
        bucket.extend(std::iter::repeat_n(value, times));
    }
    let omega = ThomaPoint::new(alpha, beta).map_err(|e| Error::ReconstructionFailed(e.to_string()))?;
    for (j, m) in q.iter().enumerate() {
        if omega.extended_powersum(j + 2, theta) != *m {
            return Err(Error::ReconstructionFailed(format!("moment p_{} is not reproduced", j + 2)));
        }
    }
    Ok(omega)
}

/// `φ(p_2), …, φ(p_M)` at `ω`.
pub fn moments_of(omega: &ThomaPoint, theta: &Rational, max_m: usize) -> Vec<Rational> {
    (2..=max_m).map(|m| omega.extended_powersum(m, theta)).collect()
}

/// A deterministic sample of `size` rational points of the simplex: the three
/// vertices first, then points with one nonzero coordinate, then interior
/// points with up to two α and two β coordinates, spread over the candidate list.
pub fn thoma_grid(size: usize) -> Vec<ThomaPoint> {
    let values: Vec<Rational> = [(1, 8), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (2, 3), (3, 4), (1, 1)]
        .iter()
        .map(|&(a, b)| crate::rational::ratio(a, b))
        .collect();
    let mut seqs: Vec<Vec<Rational>> = vec![Vec::new()];
    for (i, a) in values.iter().enumerate() {
        seqs.push(vec![a.clone()]);
        for b in &values[..=i] {
            seqs.push(vec![a.clone(), b.clone()]);
        }
    }
    let vertices = [
        ThomaPoint::gamma_vertex(),
        ThomaPoint { alpha: vec![Rational::one()], beta: Vec::new() },
        ThomaPoint { alpha: Vec::new(), beta: vec![Rational::one()] },
    ];
    let mut edges = Vec::new();
    let mut interior = Vec::new();
    for a in &seqs {
        for b in &seqs {
            let Ok(w) = ThomaPoint::new(a.clone(), b.clone()) else { continue };
            if vertices.contains(&w) {
                continue;
            }
            if w.alpha.len() + w.beta.len() == 1 {
                edges.push(w);
            } else {
                interior.push(w);
            }
        }
    }
    let mut out: Vec<ThomaPoint> = vertices.to_vec();
    out.extend(edges);
    let remaining = size.saturating_sub(out.len());
    if remaining > 0 && !interior.is_empty() {
        let step = (interior.len() / remaining).max(1);
        out.extend(interior.into_iter().step_by(step).take(remaining));
    }
    out.truncate(size);
    out
}

/// Sequences of diagrams with a known limit in the Thoma simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFamily {
    /// `k × k`.
    Square,
    /// `(k)`.
    Row,
    /// `(1^k)`.
    Column,
    /// `(a k) × (b k)`: `a k` rows of length `b k`.
    Rect(usize, usize),
}

impl DiagramFamily {
    pub fn diagram(&self, k: usize) -> Partition {
        match *self {
            DiagramFamily::Square => Partition::rectangle(k, k),
            DiagramFamily::Row => Partition::row(k),
            DiagramFamily::Column => Partition::column(k),
            DiagramFamily::Rect(a, b) => Partition::rectangle(a * k, b * k),
        }
    }

    /// Limit of the embedded points as `k → ∞`.
    pub fn limit(&self) -> ThomaPoint {
        match self {
            DiagramFamily::Row => ThomaPoint { alpha: vec![Rational::one()], beta: Vec::new() },
            DiagramFamily::Column => ThomaPoint { alpha: Vec::new(), beta: vec![Rational::one()] },
            // every Frobenius coordinate is O(k) while n grows like k^2
            DiagramFamily::Square | DiagramFamily::Rect(..) => ThomaPoint::gamma_vertex(),
        }
    }
}

impl FromStr for DiagramFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(DiagramFamily::Square),
            "row" => Ok(DiagramFamily::Row),
            "column" => Ok(DiagramFamily::Column),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["rect", a, b] => {
                        let a = a.parse().map_err(|_| Error::Parse(format!("bad family {s:?}")))?;
                        let b = b.parse().map_err(|_| Error::Parse(format!("bad family {s:?}")))?;
                        if a == 0 || b == 0 {
                            return Err(Error::Parse("rect ratios must be positive".into()));
                        }
                        Ok(DiagramFamily::Rect(a, b))
                    }
                    _ => Err(Error::Parse(format!("unknown family {s:?}; expected square|row|column|rect:a:b"))),
                }
            }
        }
    }
}

/// One row of the asymptotics table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub diagram: Partition,
    /// `F(ν) / n^m`.
    #[serde(with = "crate::rational::serde_str")]
    pub normalized: Rational,
    /// `f(ω_ν(θ) | θ)` with `f = [F]`.
    #[serde(with = "crate::rational::serde_str")]
    pub limit: Rational,
    /// `|normalized − limit|`.
    #[serde(with = "crate::rational::serde_str")]
    pub error: Rational,
    /// `error² · n`, the square of the √n-scaled error.
    #[serde(with = "crate::rational::serde_str")]
    pub scaled_error_sq: Rational,
    pub scaled_error: f64,
}

/// Compares `F(ν)/n^m` with the θ-extension of the leading term at `ω_ν(θ)`.
pub fn asymptotics_experiment(
    f: &ShiftedSymFunc,
    diagrams: &[Partition],
    theta: &Rational,
) -> Result<Vec<AsymptoticsRow>> {
    require_positive(theta, "asymptotics_experiment")?;
    if diagrams.is_empty() {
        return domain("asymptotics experiment needs at least one diagram");
    }
    if diagrams.windows(2).any(|w| w[0].size() >= w[1].size()) || diagrams[0].is_empty() {
        return domain("diagram sizes must be positive and strictly increasing");
    }
    let m = f.degree();
    let lead = f.leading_term();
    let rows: Vec<AsymptoticsRow> = {
        use rayon::prelude::*;
        diagrams
            .par_iter()
            .map(|nu| -> Result<AsymptoticsRow> {
                let n = nu.size();
                let normalized = f.eval(nu) / pow(&int(n as i64), m);
                let limit = theta_extend_eval(&lead, &embed_omega_theta(nu, theta)?, theta);
                let error = (&normalized - &limit).abs();
                let scaled_error_sq = &error * &error * int(n as i64);
                let scaled_error = to_f64(&error) * (n as f64).sqrt();
                Ok(AsymptoticsRow { n, diagram: nu.clone(), normalized, limit, error, scaled_error_sq, scaled_error })
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(rows)
}

/// `max` of the scaled error over the second half of the rows is at most
/// `slack` times its maximum over the first half. Compared exactly on squares.
pub fn scaled_error_bounded(rows: &[AsymptoticsRow], slack: i64) -> bool {
    let half = rows.len() / 2;
    let max = |rs: &[AsymptoticsRow]| rs.iter().map(|r| r.scaled_error_sq.clone()).max().unwrap_or_else(Rational::zero);
    max(&rows[half..]) <= max(&rows[..half]) * int(slack * slack)
}
