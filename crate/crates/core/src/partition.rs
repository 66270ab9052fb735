//! Integer partitions viewed as Young diagrams.
//!
//! Boxes are addressed 1-based as `(row, col)`. Partitions are stored without
//! trailing zeros, so structural equality is equality of diagrams.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::rational::{int, Rational};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

/// A box `(row, col)` of a Young diagram, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Outcome of comparing two partitions of the same size in dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    /// Every partial sum of the left side is `<=` the right side.
    Below,
    /// Every partial sum of the left side is `>=` the right side.
    Above,
    Incomparable,
}

/// Frobenius coordinates `a_j = ν_j - j`, `b_j = ν'_j - j + 1`, `j = 1..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frobenius {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts, dropping zeros. Fails if the nonzero
    /// parts are not weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single row `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// The single column `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// The `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length `λ_i` (1-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Column length `λ'_j` (1-based).
    pub fn column_len(&self, j: usize) -> usize {
        self.0.iter().take_while(|&&p| p >= j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition((1..=first).map(|j| self.column_len(j)).collect())
    }

    /// `m_j(λ)`: the number of parts equal to `j`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    /// `z_λ = Π_j j^{m_j} m_j!`.
    pub fn z(&self) -> Rational {
        let mut acc = int(1);
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let m = self.0[i..].iter().take_while(|&&p| p == j).count();
            for k in 1..=m {
                acc *= int((j * k) as i64);
            }
            i += m;
        }
        acc
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col <= self.part(c.row)
    }

    /// All boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }

    /// `λ ⊆ ν` as diagrams.
    pub fn is_subset_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Arm and leg of a box: `(λ_i - j, λ'_j - i)`.
    pub fn arm_leg(&self, c: Cell) -> Result<(usize, usize)> {
        if !self.contains_cell(c) {
            return domain(format!("box ({},{}) is not in {}", c.row, c.col, self));
        }
        Ok((self.part(c.row) - c.col, self.column_len(c.col) - c.row))
    }

    pub fn frobenius(&self) -> Frobenius {
        let d = (1..=self.len()).take_while(|&j| self.part(j) >= j).count();
        Frobenius {
            a: (1..=d).map(|j| self.part(j) - j).collect(),
            b: (1..=d).map(|j| self.column_len(j) + 1 - j).collect(),
        }
    }

    /// Rebuilds a diagram from its Frobenius coordinates.
    pub fn from_frobenius(f: &Frobenius) -> Result<Partition> {
        let d = f.a.len();
        if f.b.len() != d {
            return domain("Frobenius sequences must have equal length");
        }
        let strictly_decreasing = |v: &[usize]| v.windows(2).all(|w| w[0] > w[1]);
        if !strictly_decreasing(&f.a) || !strictly_decreasing(&f.b) || f.b.contains(&0) {
            return domain("Frobenius coordinates must be strictly decreasing with b >= 1");
        }
        // rows 1..d come from a, rows below the diagonal from b via the conjugate
        let mut rows: Vec<usize> = (1..=d).map(|j| f.a[j - 1] + j).collect();
        let depth = f.b.first().copied().unwrap_or(0);
        for i in d + 1..=depth {
            // row i (> d) has one box in each column j <= d with b_j + j - 1 >= i, i.e. b_j + j > i
            let len = (1..=d).filter(|&j| f.b[j - 1] + j > i).count();
            rows.push(len);
        }
        let p = Partition::new(rows)?;
        if p.frobenius() != *f {
            return domain("inconsistent Frobenius coordinates");
        }
        Ok(p)
    }

    /// All diagrams obtained by adding one box, ordered by the row of the new box.
    pub fn covers(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 1..=self.len() + 1 {
            if i == 1 || self.part(i) < self.part(i - 1) {
                let mut v = self.0.clone();
                if i > v.len() {
                    v.push(1);
                } else {
                    v[i - 1] += 1;
                }
                out.push(Partition(v));
            }
        }
        out
    }

    /// All diagrams obtained by removing one box.
    pub fn cocovers(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 1..=self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut v = self.0.clone();
                v[i - 1] -= 1;
                if v[i - 1] == 0 {
                    v.pop();
                }
                out.push(Partition(v));
            }
        }
        out
    }

    /// Positions where a box can be added.
    pub fn addable_cells(&self) -> Vec<Cell> {
        (1..=self.len() + 1)
            .filter(|&i| i == 1 || self.part(i) < self.part(i - 1))
            .map(|i| Cell::new(i, self.part(i) + 1))
            .collect()
    }

    /// Boxes whose removal leaves a diagram.
    pub fn removable_cells(&self) -> Vec<Cell> {
        (1..=self.len()).filter(|&i| self.part(i) > self.part(i + 1)).map(|i| Cell::new(i, self.part(i))).collect()
    }

    /// The box `ν \ λ` when `λ ↗ ν`, otherwise `None`.
    pub fn added_cell(&self, bigger: &Partition) -> Option<Cell> {
        if bigger.size() != self.size() + 1 || !self.is_subset_of(bigger) {
            return None;
        }
        (1..=bigger.len()).find(|&i| bigger.part(i) != self.part(i)).map(|i| Cell::new(i, bigger.part(i)))
    }

    pub fn dominance(&self, other: &Partition) -> Result<Dominance> {
        if self.size() != other.size() {
            return domain(format!("dominance needs equal sizes: {self} vs {other}"));
        }
        let n = self.len().max(other.len());
        let (mut le, mut ge) = (true, true);
        let (mut s, mut t) = (0usize, 0usize);
        for i in 1..=n {
            s += self.part(i);
            t += other.part(i);
            le &= s <= t;
            ge &= s >= t;
        }
        Ok(match (le, ge) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Below,
            (false, true) => Dominance::Above,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// Row lengths of the positive part and column lengths of the negative
    /// part of the diagram, where a box is positive iff its θ-content is > 0.
    pub fn split_positive_negative(&self, theta: &Rational) -> Result<(Vec<usize>, Vec<usize>)> {
        if !theta.is_positive() {
            return domain(format!("split needs theta > 0, got {theta}"));
        }
        let mut rows = vec![0usize; self.len()];
        let mut cols = vec![0usize; self.part(1)];
        for c in self.cells() {
            if theta_content(c, theta).is_positive() {
                rows[c.row - 1] += 1;
            } else {
                cols[c.col - 1] += 1;
            }
        }
        rows.retain(|&r| r > 0);
        cols.retain(|&c| c > 0);
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(cols.windows(2).all(|w| w[0] >= w[1]));
        Ok((rows, cols))
    }
}

/// θ-content `(col - 1) - θ (row - 1)` of a box.
pub fn theta_content(c: Cell, theta: &Rational) -> Rational {
    int(c.col as i64 - 1) - theta * int(c.row as i64 - 1)
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn enumerate(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `n` boxes, level by level.
pub fn enumerate_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate).collect()
}

/// Compares sizes first, then reverse lexicographic within a level.
pub fn graded_revlex(a: &Partition, b: &Partition) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| b.cmp(a))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `"[3,3,1]"`, `"[]"`, and also the bare `"3,3,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in {s:?}")));
        }
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.contains(&0) {
            return Err(serde::de::Error::custom("zero part in partition"));
        }
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for literals in tests and examples; panics on bad input.
pub fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn conjugates() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4]).conjugate(), p(&[1, 1, 1, 1]));
        assert_eq!(p(&[3, 3, 1]).conjugate(), p(&[3, 2, 2]));
    }

    #[test]
    fn arm_and_leg() {
        let l = p(&[3, 2]);
        assert_eq!(l.arm_leg(Cell::new(1, 1)).unwrap(), (2, 1));
        assert_eq!(l.arm_leg(Cell::new(1, 3)).unwrap(), (0, 0));
        assert_eq!(l.arm_leg(Cell::new(2, 1)).unwrap(), (1, 0));
        assert!(matches!(l.arm_leg(Cell::new(2, 3)), Err(Error::Domain(_))));
    }

    #[test]
    fn contents() {
        assert_eq!(theta_content(Cell::new(1, 1), &ratio(7, 3)), int(0));
        assert_eq!(theta_content(Cell::new(2, 3), &ratio(1, 2)), ratio(3, 2));
        assert_eq!(theta_content(Cell::new(3, 1), &int(2)), int(-4));
    }

    #[test]
    fn frobenius_examples() {
        let f = p(&[3, 3, 1]).frobenius();
        assert_eq!((f.a.clone(), f.b.clone()), (vec![2, 1], vec![3, 1]));
        assert_eq!(f.a.iter().sum::<usize>() + f.b.iter().sum::<usize>(), 7);
        let f = p(&[1]).frobenius();
        assert_eq!((f.a, f.b), (vec![0], vec![1]));
        let f = p(&[2, 2]).frobenius();
        assert_eq!((f.a, f.b), (vec![1, 0], vec![2, 1]));
        let f = Partition::empty().frobenius();
        assert!(f.a.is_empty() && f.b.is_empty());
    }

    #[test]
    fn frobenius_round_trip() {
        for l in enumerate_up_to(10) {
            let f = l.frobenius();
            assert_eq!(f.a.iter().sum::<usize>() + f.b.iter().sum::<usize>(), l.size());
            assert_eq!(Partition::from_frobenius(&f).unwrap(), l);
        }
        let bad = Frobenius { a: vec![0, 1], b: vec![2, 1] };
        assert!(Partition::from_frobenius(&bad).is_err());
    }

    #[test]
    fn cover_relations() {
        assert_eq!(Partition::empty().covers(), vec![p(&[1])]);
        assert_eq!(p(&[1]).covers(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(p(&[2, 1]).cocovers(), vec![p(&[1, 1]), p(&[2])]);
        for l in enumerate_up_to(8) {
            for m in l.covers() {
                assert!(m.cocovers().contains(&l));
                assert!(l.added_cell(&m).is_some());
            }
            for m in enumerate(l.size() + 1) {
                if m.cocovers().contains(&l) {
                    assert!(l.covers().contains(&m));
                }
            }
        }
        assert_eq!(p(&[2]).added_cell(&p(&[1, 1, 1])), None);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4).len(), 5);
        assert_eq!(enumerate(4)[0], p(&[4]));
        assert_eq!(*enumerate(4).last().unwrap(), p(&[1, 1, 1, 1]));
    }

    /// Independent count via compositions filtered to weakly decreasing ones.
    fn brute_count(n: usize) -> usize {
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        compositions(n).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])).count()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        assert_eq!(brute_count(8), 22);
        for n in 0..=10 {
            let all = enumerate(n);
            assert_eq!(all.len(), brute_count(n));
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(p(&[2, 2]).dominance(&p(&[3, 1])).unwrap(), Dominance::Below);
        assert_eq!(p(&[3, 1]).dominance(&p(&[2, 2])).unwrap(), Dominance::Above);
        assert_eq!(p(&[3, 1, 1, 1]).dominance(&p(&[2, 2, 2])).unwrap(), Dominance::Incomparable);
        assert_eq!(p(&[2, 1]).dominance(&p(&[2, 1])).unwrap(), Dominance::Equal);
        assert!(p(&[2]).dominance(&p(&[2, 1])).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(p(&[2, 2]).split_positive_negative(&int(1)).unwrap(), (vec![1], vec![2, 1]));
        assert_eq!(p(&[3]).split_positive_negative(&int(10)).unwrap(), (vec![2], vec![1]));
        assert_eq!(Partition::empty().split_positive_negative(&int(1)).unwrap(), (vec![], vec![]));
        assert!(p(&[1]).split_positive_negative(&int(0)).is_err());
    }

    #[test]
    fn split_conserves_boxes() {
        for theta in [ratio(1, 3), ratio(1, 2), int(1), int(2)] {
            for l in enumerate_up_to(10) {
                let (a, b) = l.split_positive_negative(&theta).unwrap();
                assert_eq!(a.iter().sum::<usize>() + b.iter().sum::<usize>(), l.size());
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!("[3,3,1]".parse::<Partition>().unwrap(), p(&[3, 3, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 3, 1]).to_string(), "[3,3,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[2,0]".parse::<Partition>().is_err());
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[2]).z(), int(2));
        assert_eq!(p(&[1, 1]).z(), int(2));
        assert_eq!(p(&[2, 1, 1]).z(), int(4));
        assert_eq!(Partition::empty().z(), int(1));
    }
}
