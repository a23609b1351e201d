//! Uniform tensor grids on the torus used for certification and quadrature.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::freq::Freq;
use crate::error::{Error, Result};
use crate::tolerance::max_grid_points;

/// Uniform grid with `counts[j]` nodes `i / counts[j]` along axis `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    counts: Vec<usize>,
}

impl Grid {
    pub fn new(counts: Vec<usize>) -> Grid {
        Grid { counts }
    }

    /// Certification grid: `4(2B+1)` nodes along every axis with bandwidth `B > 0`,
    /// a single node along axes where the data is constant.
    pub fn certification(bandwidth: &[u32]) -> Grid {
        Grid {
            counts: bandwidth
                .iter()
                .map(|&b| if b == 0 { 1 } else { 4 * (2 * b as usize + 1) })
                .collect(),
        }
    }

    /// Same as [`Grid::certification`] but coarsened (largest axis halved first)
    /// until it fits under the process-wide grid cap.
    pub fn certification_capped(bandwidth: &[u32]) -> Grid {
        let mut g = Grid::certification(bandwidth);
        let cap = max_grid_points();
        while g.len() > cap {
            let (j, _) = g
                .counts
                .iter()
                .enumerate()
                .max_by_key(|(_, &c)| c)
                .expect("nonempty grid");
            if g.counts[j] == 1 {
                break;
            }
            g.counts[j] = g.counts[j].div_ceil(2);
        }
        g
    }

    /// Fails instead of coarsening when the grid exceeds the cap.
    pub fn checked(self) -> Result<Grid> {
        let cap = max_grid_points();
        let points = self.len();
        if points > cap {
            return Err(Error::GridCap { points, cap });
        }
        Ok(self)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Visits every node in row-major order.
    pub fn for_each_point(&self, mut f: impl FnMut(&[f64])) {
        let n = self.counts.len();
        let mut idx = vec![0usize; n];
        let mut x = vec![0.0f64; n];
        let total = self.len();
        for _ in 0..total {
            for j in 0..n {
                x[j] = idx[j] as f64 / self.counts[j] as f64;
            }
            f(&x);
            for j in (0..n).rev() {
                idx[j] += 1;
                if idx[j] < self.counts[j] {
                    break;
                }
                idx[j] = 0;
            }
        }
    }

    /// Values of `Σ c_k e^{2πi k·x}` at every node, in [`Grid::for_each_point`]
    /// order, by folding frequencies modulo the node counts and one inverse FFT
    /// per axis. Exact on the grid whatever the bandwidth.
    pub fn synthesize<'a>(&self, coeffs: impl IntoIterator<Item = (&'a Freq, &'a Complex64)>) -> Vec<Complex64> {
        let n = self.counts.len();
        let mut strides = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.counts[j + 1];
        }
        let mut data = vec![Complex64::new(0.0, 0.0); self.len()];
        for (k, c) in coeffs {
            let idx: usize = (0..n)
                .map(|j| (k.get(j) as i64).rem_euclid(self.counts[j] as i64) as usize * strides[j])
                .sum();
            data[idx] += c;
        }
        let mut planner = FftPlanner::new();
        for j in 0..n {
            let len = self.counts[j];
            if len == 1 {
                continue;
            }
            let fft = planner.plan_fft_inverse(len);
            let stride = strides[j];
            let mut line = vec![Complex64::new(0.0, 0.0); len];
            let block = stride * len;
            for base in (0..data.len()).step_by(block) {
                for off in 0..stride {
                    for (i, v) in line.iter_mut().enumerate() {
                        *v = data[base + off + i * stride];
                    }
                    fft.process(&mut line);
                    for (i, v) in line.iter().enumerate() {
                        data[base + off + i * stride] = *v;
                    }
                }
            }
        }
        data
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each_point(|x| out.push(x.to_vec()));
        out
    }
}
