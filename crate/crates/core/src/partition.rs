//! Young diagrams.
//!
//! A [`Partition`] stores row lengths in weakly decreasing order. Rows and
//! columns are 1-indexed and the content of the box in row `r`, column `c`
//! is `c - r`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram given by its row lengths `λ₁ ≥ λ₂ ≥ … ≥ λ_ℓ ≥ 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    rows: Vec<usize>,
}

/// A box of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramBox {
    pub row: usize,
    pub column: usize,
}

impl DiagramBox {
    pub fn new(row: usize, column: usize) -> Self {
        DiagramBox { row, column }
    }

    pub fn content(&self) -> i64 {
        self.column as i64 - self.row as i64
    }
}

/// Contents of the concave (addable) and convex (removable) corners.
///
/// `minima` and `maxima` strictly interlace: `x₁ < y₁ < x₂ < … < y_{d-1} < x_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    pub minima: Vec<i64>,
    pub maxima: Vec<i64>,
}

impl Partition {
    /// Builds a partition, rejecting increasing or zero rows.
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{rows:?} contains a zero row"
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{rows:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { rows })
    }

    /// Builds a partition from rows in any order, dropping zeros.
    pub fn from_unsorted(mut rows: Vec<usize>) -> Self {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Partition { rows }
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Length of row `r` (1-indexed); 0 past the last row.
    pub fn row(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.rows.get(r - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, b: DiagramBox) -> bool {
        b.row >= 1 && b.column >= 1 && b.column <= self.row(b.row)
    }

    /// Iterates over the boxes row by row.
    pub fn boxes(&self) -> impl Iterator<Item = DiagramBox> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |c| DiagramBox::new(i + 1, c)))
    }

    /// Replaces every box by an `s × s` block.
    pub fn dilate(&self, s: usize) -> Result<Partition> {
        if s == 0 {
            return Err(Error::OutOfRange {
                what: "dilation factor",
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        let rows = self
            .rows
            .iter()
            .flat_map(|&r| std::iter::repeat_n(s * r, s))
            .collect();
        Ok(Partition { rows })
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=width)
            .map(|c| self.rows.iter().take_while(|&&r| r >= c).count())
            .collect();
        Partition { rows }
    }

    /// One content value per box, in row-major order.
    pub fn contents(&self) -> Vec<i64> {
        self.boxes().map(|b| b.content()).collect()
    }

    /// Boxes that can be added, ordered by increasing content.
    pub fn addable_boxes(&self) -> Vec<DiagramBox> {
        let l = self.rows.len();
        let mut out: Vec<DiagramBox> = (1..=l + 1)
            .filter(|&r| r == 1 || self.row(r - 1) > self.row(r))
            .map(|r| DiagramBox::new(r, self.row(r) + 1))
            .collect();
        out.reverse();
        out
    }

    /// Boxes that can be removed, ordered by increasing content.
    pub fn removable_boxes(&self) -> Vec<DiagramBox> {
        let l = self.rows.len();
        let mut out: Vec<DiagramBox> = (1..=l)
            .filter(|&r| self.row(r + 1) < self.row(r))
            .map(|r| DiagramBox::new(r, self.row(r)))
            .collect();
        out.reverse();
        out
    }

    /// Contents of the concave and convex corners.
    pub fn corner_coordinates(&self) -> Corners {
        Corners {
            minima: self
                .addable_boxes()
                .iter()
                .map(DiagramBox::content)
                .collect(),
            maxima: self
                .removable_boxes()
                .iter()
                .map(DiagramBox::content)
                .collect(),
        }
    }

    /// Removes the box at the end of row `r`; it must be a removable corner.
    pub fn remove_corner(&self, r: usize) -> Result<Partition> {
        if r == 0 || r > self.rows.len() || self.row(r + 1) == self.row(r) {
            return Err(Error::InvalidPartition(format!(
                "row {r} of {self} does not end in a removable box"
            )));
        }
        let mut rows = self.rows.clone();
        rows[r - 1] -= 1;
        if rows[r - 1] == 0 {
            rows.pop();
        }
        Ok(Partition { rows })
    }

    /// Adds a box at the end of row `r`; it must be an addable corner.
    pub fn add_corner(&self, r: usize) -> Result<Partition> {
        if r == 0 || r > self.rows.len() + 1 || (r > 1 && self.row(r - 1) == self.row(r)) {
            return Err(Error::InvalidPartition(format!(
                "row {r} of {self} does not admit an addable box"
            )));
        }
        let mut rows = self.rows.clone();
        if r > rows.len() {
            rows.push(1);
        } else {
            rows[r - 1] += 1;
        }
        Ok(Partition { rows })
    }

    /// Hook length of a box of the diagram.
    pub fn hook(&self, b: DiagramBox) -> usize {
        debug_assert!(self.contains(b));
        let arm = self.row(b.row) - b.column;
        let leg = self.rows[b.row..]
            .iter()
            .take_while(|&&r| r >= b.column)
            .count();
        arm + leg + 1
    }

    /// The staircase `(k, k-1, …, 1)`.
    pub fn staircase(k: usize) -> Partition {
        Partition {
            rows: (1..=k).rev().collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,1"`; the empty string and `"()"` give the empty diagram.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let rows = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(rows)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                rows: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `n` boxes, by increasing size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn dilation() {
        assert_eq!(p(&[3, 1]).dilate(1).unwrap(), p(&[3, 1]));
        assert_eq!(p(&[3, 1]).dilate(2).unwrap(), p(&[6, 6, 2, 2]));
        assert_eq!(p(&[2]).dilate(3).unwrap(), p(&[6, 6, 6]));
        assert!(p(&[2]).dilate(0).is_err());
    }

    #[test]
    fn dilation_box_count() {
        for lambda in partitions_up_to(8) {
            for s in 1..=5 {
                assert_eq!(lambda.dilate(s).unwrap().size(), s * s * lambda.size());
            }
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        for lambda in partitions_up_to(9) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
        }
    }

    #[test]
    fn corners_of_small_diagrams() {
        let c = p(&[3, 1]).corner_coordinates();
        assert_eq!(c.minima, vec![-2, 0, 3]);
        assert_eq!(c.maxima, vec![-1, 2]);
        let c = Partition::empty().corner_coordinates();
        assert_eq!(c.minima, vec![0]);
        assert!(c.maxima.is_empty());
        let c = p(&[2]).corner_coordinates();
        assert_eq!(c.minima, vec![-1, 2]);
        assert_eq!(c.maxima, vec![1]);
    }

    #[test]
    fn corners_interlace_and_balance() {
        for lambda in partitions_up_to(10) {
            let Corners { minima, maxima } = lambda.corner_coordinates();
            assert_eq!(minima.len(), maxima.len() + 1, "{lambda}");
            let mut merged = Vec::new();
            for i in 0..maxima.len() {
                merged.push(minima[i]);
                merged.push(maxima[i]);
            }
            merged.push(*minima.last().unwrap());
            assert!(merged.windows(2).all(|w| w[0] < w[1]), "{lambda}");
            assert_eq!(minima.iter().sum::<i64>(), maxima.iter().sum::<i64>());
        }
    }

    #[test]
    fn conjugate_reflects_contents_and_corners() {
        for lambda in partitions_up_to(9) {
            let mut a = lambda.contents();
            let mut b: Vec<i64> = lambda.conjugate().contents().iter().map(|c| -c).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
            let c = lambda.corner_coordinates();
            let cc = lambda.conjugate().corner_coordinates();
            let neg = |v: &[i64]| v.iter().rev().map(|x| -x).collect::<Vec<_>>();
            assert_eq!(cc.minima, neg(&c.minima));
            assert_eq!(cc.maxima, neg(&c.maxima));
        }
    }

    #[test]
    fn contents_by_hand() {
        let mut c = p(&[3, 1]).contents();
        c.sort_unstable();
        assert_eq!(c, vec![-1, 0, 1, 2]);
        assert_eq!(p(&[1]).contents(), vec![0]);
        let mut c = p(&[2, 2]).contents();
        c.sort_unstable();
        assert_eq!(c, vec![-1, 0, 0, 1]);
    }

    #[test]
    fn parsing() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!(" 4, 2 ,2".parse::<Partition>().unwrap(), p(&[4, 2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn corner_moves() {
        let l = p(&[3, 1]);
        assert_eq!(l.remove_corner(1).unwrap(), p(&[2, 1]));
        assert_eq!(l.remove_corner(2).unwrap(), p(&[3]));
        assert!(p(&[2, 2]).remove_corner(1).is_err());
        assert_eq!(l.add_corner(3).unwrap(), p(&[3, 1, 1]));
        assert!(p(&[2, 2]).add_corner(2).is_err());
    }

    #[test]
    fn hooks() {
        let l = p(&[3, 1]);
        let h: Vec<usize> = l.boxes().map(|b| l.hook(b)).collect();
        assert_eq!(h, vec![4, 2, 1, 1]);
    }
}
