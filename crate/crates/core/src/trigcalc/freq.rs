use std::fmt;

/// Largest supported torus dimension.
pub const MAX_DIM: usize = 10;

/// Frequency vector `k` of the mode `e^{2πi k·x}`.
///
/// Stored in a fixed array so that it is `Copy`; entries past the ambient
/// dimension are zero. The derived order is lexicographic, which fixes the
/// summation order of every Fourier series.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Freq([i16; MAX_DIM]);

impl Freq {
    pub const ZERO: Freq = Freq([0; MAX_DIM]);

    pub fn from_slice(k: &[i32]) -> Freq {
        assert!(k.len() <= MAX_DIM, "torus dimension {} exceeds {}", k.len(), MAX_DIM);
        let mut out = [0i16; MAX_DIM];
        for (o, &v) in out.iter_mut().zip(k) {
            *o = i16::try_from(v).expect("frequency out of range");
        }
        Freq(out)
    }

    /// Unit frequency along `axis`, scaled by `m`.
    pub fn axis(axis: usize, m: i32) -> Freq {
        let mut out = [0i16; MAX_DIM];
        out[axis] = m as i16;
        Freq(out)
    }

    #[inline]
    pub fn get(&self, axis: usize) -> i32 {
        self.0[axis] as i32
    }

    pub fn to_vec(&self, dim: usize) -> Vec<i32> {
        self.0[..dim].iter().map(|&v| v as i32).collect()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    #[inline]
    pub fn add(&self, other: &Freq) -> Freq {
        let mut out = [0i16; MAX_DIM];
        for i in 0..MAX_DIM {
            out[i] = self.0[i] + other.0[i];
        }
        Freq(out)
    }

    #[inline]
    pub fn neg(&self) -> Freq {
        let mut out = [0i16; MAX_DIM];
        for i in 0..MAX_DIM {
            out[i] = -self.0[i];
        }
        Freq(out)
    }

    /// `k·x` for a point of the torus.
    #[inline]
    pub fn dot(&self, x: &[f64]) -> f64 {
        x.iter().enumerate().map(|(i, &xi)| self.0[i] as f64 * xi).sum()
    }
}

impl fmt::Debug for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&v| v != 0).map_or(0, |p| p + 1);
        f.debug_list().entries(self.0[..last.max(1)].iter()).finish()
    }
}
