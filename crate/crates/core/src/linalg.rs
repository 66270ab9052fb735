//! Dense exact linear algebra over the rationals.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduces in place to row echelon form; returns pivot columns and the
    /// sign of the row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut negate = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                self.swap_rows(pr, r);
                negate = !negate;
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                if self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c) / &pivot;
                for j in c..self.cols {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, negate)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let (pivots, negate) = m.echelon();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let mut det = (0..self.rows).fold(Rational::one(), |acc, i| acc * m.get(i, i));
        if negate {
            det = -det;
        }
        det
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::Domain(format!(
                "solve needs a square system, got {}x{} with rhs {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, bi.clone());
        }
        let (pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular(format!(
                "{n}x{n} system has rank {}",
                pivots.iter().filter(|&&c| c < n).count()
            )));
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut s = aug.get(i, n).clone();
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                s -= aug.get(i, j) * xj;
            }
            x[i] = s / aug.get(i, i);
        }
        Ok(x)
    }
}

/// Rational function `num(t) / den(t)` with coefficient vectors in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
}

fn horner(coeffs: &[Rational], t: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

impl RationalFunction {
    /// Evaluates at `t`; `None` where the denominator vanishes.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = horner(&self.den, t);
        if d.is_zero() {
            None
        } else {
            Some(horner(&self.num, t) / d)
        }
    }

    /// Fits `p/q` with `deg p, deg q <= degree` through samples by solving the
    /// linearised system `p(t_i) - y_i q(t_i) = 0`, normalising the lowest
    /// nonzero denominator coefficient. Returns `None` if no fit of that degree
    /// reproduces every sample.
    pub fn fit(samples: &[(Rational, Rational)], degree: usize) -> Option<Self> {
        let unknowns = 2 * degree + 2;
        // try each normalisation q_k = 1 in turn; one of them is always admissible
        for k in 0..=degree {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (t, y) in samples.iter().take(unknowns - 1) {
                let mut row = Vec::with_capacity(unknowns - 1);
                let mut tp = Rational::one();
                let mut powers = Vec::with_capacity(degree + 1);
                for _ in 0..=degree {
                    powers.push(tp.clone());
                    tp *= t;
                }
                row.extend(powers.iter().cloned());
                for (j, pw) in powers.iter().enumerate() {
                    if j != k {
                        row.push(-(y * pw));
                    }
                }
                rows.push(row);
                rhs.push(y * &powers[k]);
            }
            if rows.len() < unknowns - 1 {
                return None;
            }
            let Ok(sol) = Matrix::from_rows(rows).solve(&rhs) else { continue };
            let num = sol[..=degree].to_vec();
            let mut den = Vec::with_capacity(degree + 1);
            let mut rest = sol[degree + 1..].iter();
            for j in 0..=degree {
                den.push(if j == k { Rational::one() } else { rest.next().unwrap().clone() });
            }
            let f = RationalFunction { num, den };
            if samples.iter().all(|(t, y)| f.eval(t).as_ref() == Some(y)) {
                return Some(f);
            }
        }
        None
    }

    /// Value at `t = 0` after cancelling any common power of `t`.
    pub fn limit_at_zero(&self) -> Option<Rational> {
        let vn = self.num.iter().position(|c| !c.is_zero());
        let vd = self.den.iter().position(|c| !c.is_zero())?;
        match vn {
            None => Some(Rational::zero()),
            Some(vn) if vn > vd => Some(Rational::zero()),
            Some(vn) if vn == vd => Some(&self.num[vn] / &self.den[vd]),
            Some(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant(), int(6));
    }

    #[test]
    fn solves_and_detects_singularity() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).solve(&[int(1), int(2)]), Err(Error::Singular(_))));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rational_fit_recovers_function() {
        // f(t) = (2t) / (1 + t)
        let f = |t: &Rational| (int(2) * t) / (int(1) + t);
        let samples: Vec<_> = (1..=8).map(|k| (ratio(1, k), f(&ratio(1, k)))).collect();
        let fit = (0..=3).find_map(|d| RationalFunction::fit(&samples, d)).unwrap();
        assert_eq!(fit.eval(&int(5)), Some(f(&int(5))));
        assert_eq!(fit.limit_at_zero(), Some(int(0)));
    }
}
