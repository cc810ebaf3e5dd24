//! Integer boxes and their deterministic (parallel) traversal.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Product of inclusive integer ranges, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBox {
    pub ranges: Vec<(i64, i64)>,
}

impl GridBox {
    pub fn new(ranges: Vec<(i64, i64)>) -> Result<Self> {
        if let Some((lo, hi)) = ranges.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::Precondition(format!("empty range {lo}..{hi}")));
        }
        Ok(GridBox { ranges })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![(lo, hi); dim])
    }

    /// `[0, b)^dim`.
    pub fn quadrant(dim: usize, b: i64) -> Result<Self> {
        Self::cube(dim, 0, b - 1)
    }

    /// `[-b, b]^dim`.
    pub fn symmetric(dim: usize, b: i64) -> Result<Self> {
        Self::cube(dim, -b, b)
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    pub fn count(&self) -> u128 {
        self.ranges.iter().map(|(lo, hi)| (hi - lo + 1) as u128).product()
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim() });
        }
        Ok(())
    }

    /// Visits the points of the sub-box with first coordinate fixed to `first`,
    /// in row-major order (earlier coordinates vary slowest).
    fn for_each_in_slice<F: FnMut(&[i64])>(&self, first: Option<i64>, f: &mut F) {
        let r = self.dim();
        if r == 0 {
            f(&[]);
            return;
        }
        let mut pt: Vec<i64> = self.ranges.iter().map(|(lo, _)| *lo).collect();
        let start = match first {
            Some(v) => {
                pt[0] = v;
                1
            }
            None => 0,
        };
        if start == r {
            f(&pt);
            return;
        }
        loop {
            f(&pt);
            let mut i = r - 1;
            loop {
                if pt[i] < self.ranges[i].1 {
                    pt[i] += 1;
                    break;
                }
                pt[i] = self.ranges[i].0;
                if i == start {
                    return;
                }
                i -= 1;
            }
        }
    }

    /// Sequential row-major traversal.
    pub fn for_each<F: FnMut(&[i64])>(&self, mut f: F) {
        self.for_each_in_slice(None, &mut f);
    }

    /// Folds each slice (fixed first coordinate) in parallel, returning the
    /// per-slice results in ascending order of the first coordinate.
    pub fn par_slices<T, I, F>(&self, init: I, fold: F) -> Vec<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, &[i64]) + Sync,
    {
        if self.dim() == 0 {
            let mut acc = init();
            fold(&mut acc, &[]);
            return vec![acc];
        }
        let (lo, hi) = self.ranges[0];
        (lo..=hi)
            .into_par_iter()
            .map(|v| {
                let mut acc = init();
                self.for_each_in_slice(Some(v), &mut |pt| fold(&mut acc, pt));
                acc
            })
            .collect()
    }

    /// Number of points satisfying `pred`, counted in parallel.
    pub fn par_count<P>(&self, pred: P) -> u64
    where
        P: Fn(&[i64]) -> bool + Sync,
    {
        self.par_slices(|| 0u64, |acc, pt| *acc += u64::from(pred(pt))).into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_order() {
        let b = GridBox::new(vec![(0, 1), (5, 6)]).unwrap();
        let mut seen = vec![];
        b.for_each(|p| seen.push(p.to_vec()));
        assert_eq!(seen, vec![vec![0, 5], vec![0, 6], vec![1, 5], vec![1, 6]]);
        assert_eq!(b.count(), 4);
    }

    #[test]
    fn parallel_slices_cover_box() {
        let b = GridBox::cube(3, -2, 2).unwrap();
        assert_eq!(b.par_count(|_| true), 125);
        let slices = b.par_slices(Vec::new, |acc, p| acc.push(p.to_vec()));
        let flat: Vec<_> = slices.into_iter().flatten().collect();
        let mut seq = vec![];
        b.for_each(|p| seq.push(p.to_vec()));
        assert_eq!(flat, seq);
    }

    #[test]
    fn empty_range_rejected() {
        assert!(GridBox::new(vec![(3, 2)]).is_err());
    }
}
