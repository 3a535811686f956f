//! Deterministic reductions over grid cells.

use rayon::prelude::*;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub(crate) const BLOCK: usize = 1 << 14;

/// Sums `f(i)` for `i in 0..len` in fixed-size blocks, in parallel, then
/// combines the block sums in index order. The result does not depend on the
/// number of worker threads.
pub(crate) fn block_sum<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let blocks = len.div_ceil(BLOCK);
    let partial: Vec<f64> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let end = ((b + 1) * BLOCK).min(len);
            (b * BLOCK..end).map(&f).collect::<CompensatedSum>().value()
        })
        .collect();
    partial.into_iter().collect::<CompensatedSum>().value()
}

/// Like [`block_sum`] but accumulates a vector of `width` sums.
pub(crate) fn block_sum_vec<F>(len: usize, width: usize, f: F) -> Vec<f64>
where
    F: Fn(usize, &mut [CompensatedSum]) + Sync,
{
    let blocks = len.div_ceil(BLOCK);
    let partial: Vec<Vec<CompensatedSum>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let end = ((b + 1) * BLOCK).min(len);
            let mut acc = vec![CompensatedSum::default(); width];
            for i in b * BLOCK..end {
                f(i, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![CompensatedSum::default(); width];
    for block in partial {
        for (t, s) in total.iter_mut().zip(block) {
            t.add(s.value());
        }
    }
    total.into_iter().map(|s| s.value()).collect()
}
