use crate::error::{usage, Result};

/// Uniform periodic grid on `[0, length)^dim` with `n` cells per axis.
///
/// Cells are stored row-major: in 2D the cell `(ix, iy)` lives at
/// `ix * n + iy`. Cell `i` along an axis sits at coordinate `i * h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    n: usize,
    length: f64,
}

pub const MIN_CELLS: usize = 8;

impl GridSpec {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(usage(format!("grid dimension must be 1 or 2, got {dim}")));
        }
        if n < MIN_CELLS {
            return Err(usage(format!("grid needs at least {MIN_CELLS} cells per axis, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(usage(format!("grid length must be positive and finite, got {length}")));
        }
        Ok(Self { dim, n, length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Cell spacing, identical on every axis.
    pub fn h(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn cells(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Volume of one cell, `h^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.h().powi(self.dim as i32)
    }

    /// Same domain with twice as many cells per axis.
    pub fn refined(&self) -> Self {
        Self { n: 2 * self.n, ..*self }
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.dim, n, self.length)
    }

    /// Per-axis integer index of a cell.
    pub fn multi_index(&self, idx: usize) -> [usize; 2] {
        if self.dim == 1 {
            [idx, 0]
        } else {
            [idx / self.n, idx % self.n]
        }
    }

    /// Physical coordinates of a cell (unused axes are zero).
    pub fn coords(&self, idx: usize) -> [f64; 2] {
        let h = self.h();
        let [i, j] = self.multi_index(idx);
        [i as f64 * h, j as f64 * h]
    }

    /// Index of the cell `off` steps away along `axis`, wrapping periodically.
    #[inline]
    pub fn shift(&self, idx: usize, axis: usize, off: isize) -> usize {
        let n = self.n as isize;
        let wrap = |i: usize| (i as isize + off).rem_euclid(n) as usize;
        if self.dim == 1 {
            wrap(idx)
        } else {
            let (ix, iy) = (idx / self.n, idx % self.n);
            if axis == 0 {
                wrap(ix) * self.n + iy
            } else {
                ix * self.n + wrap(iy)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(3, 16, 1.0).is_err());
        assert!(GridSpec::new(1, 4, 1.0).is_err());
        assert!(GridSpec::new(1, 16, 0.0).is_err());
        assert!(GridSpec::new(2, 16, f64::NAN).is_err());
    }

    #[test]
    fn shift_wraps_on_both_axes() {
        let g = GridSpec::new(2, 8, 1.0).unwrap();
        assert_eq!(g.cells(), 64);
        let corner = 0;
        assert_eq!(g.multi_index(g.shift(corner, 0, -1)), [7, 0]);
        assert_eq!(g.multi_index(g.shift(corner, 1, -1)), [0, 7]);
        assert_eq!(g.shift(g.shift(corner, 1, -1), 1, 1), corner);
        let g1 = GridSpec::new(1, 8, 1.0).unwrap();
        assert_eq!(g1.shift(7, 0, 1), 0);
        assert!((g1.h() - 0.125).abs() < 1e-15);
    }
}
