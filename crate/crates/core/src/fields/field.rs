use std::ops::{Add, Div, Mul, Neg, Sub};

use super::grid::GridSpec;
use crate::error::{usage, Result};

/// One real value per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    values: Vec<f64>,
}

/// `dim` scalar components per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: GridSpec,
    comps: Vec<ScalarField>,
}

/// `dim x dim` components per cell, component `(i, j)` stored at `i * dim + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    grid: GridSpec,
    comps: Vec<ScalarField>,
}

/// Rank-erased field, used by [`super::ops::differentiate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Scalar(ScalarField),
    Vector(VectorField),
    Tensor(TensorField),
}

impl ScalarField {
    /// Checked constructor: length must match the grid and every value must be finite.
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(usage(format!("field has {} values, grid has {} cells", values.len(), grid.cells())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(usage(format!("non-finite value {} at cell {i}", values[i])));
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_vec_unchecked(grid: GridSpec, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.cells());
        Self { grid, values }
    }

    pub fn constant(grid: GridSpec, value: f64) -> Self {
        Self { grid, values: vec![value; grid.cells()] }
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::constant(grid, 0.0)
    }

    /// Samples `f` at every cell coordinate.
    pub fn from_fn(grid: GridSpec, f: impl Fn([f64; 2]) -> f64) -> Self {
        let values = (0..grid.cells()).map(|i| f(grid.coords(i))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Self { grid: self.grid, values }
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Arithmetic mean, summed in storage order.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Discrete L2 norm `sqrt(h^d sum v^2)`.
    pub fn l2(&self) -> f64 {
        (self.grid.cell_volume() * self.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

impl VectorField {
    pub fn new(comps: Vec<ScalarField>) -> Result<Self> {
        let grid = *comps.first().ok_or_else(|| usage("vector field needs components"))?.grid();
        if comps.len() != grid.dim() {
            return Err(usage(format!("vector field has {} components on a {}D grid", comps.len(), grid.dim())));
        }
        if comps.iter().any(|c| *c.grid() != grid) {
            return Err(usage("vector components live on different grids"));
        }
        Ok(Self { grid, comps })
    }

    pub(crate) fn from_comps_unchecked(grid: GridSpec, comps: Vec<ScalarField>) -> Self {
        debug_assert_eq!(comps.len(), grid.dim());
        Self { grid, comps }
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::constant(grid, &[0.0; 2][..grid.dim()])
    }

    pub fn constant(grid: GridSpec, value: &[f64]) -> Self {
        assert_eq!(value.len(), grid.dim());
        let comps = value.iter().map(|&v| ScalarField::constant(grid, v)).collect();
        Self { grid, comps }
    }

    /// Samples a vector-valued function; only the first `dim` entries are used.
    pub fn from_fn(grid: GridSpec, f: impl Fn([f64; 2]) -> [f64; 2]) -> Self {
        let comps = (0..grid.dim()).map(|a| ScalarField::from_fn(grid, |x| f(x)[a])).collect();
        Self { grid, comps }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn comp(&self, axis: usize) -> &ScalarField {
        &self.comps[axis]
    }

    pub fn comps(&self) -> &[ScalarField] {
        &self.comps
    }

    #[inline]
    pub fn at(&self, i: usize) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (a, c) in self.comps.iter().enumerate() {
            out[a] = c.values[i];
        }
        out
    }

    pub fn map_comps(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        Self { grid: self.grid, comps: self.comps.iter().map(f).collect() }
    }

    /// Every component multiplied pointwise by `s`.
    pub fn scale_by(&self, s: &ScalarField) -> Self {
        self.map_comps(|c| c * s)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_comps(|x| x.scale(c))
    }

    /// Pointwise dot product.
    pub fn dot(&self, other: &Self) -> ScalarField {
        let mut out = ScalarField::zeros(self.grid);
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for ((o, x), y) in out.values.iter_mut().zip(&a.values).zip(&b.values) {
                *o += x * y;
            }
        }
        out
    }

    pub fn norm_sq(&self) -> ScalarField {
        self.dot(self)
    }

    /// Pointwise outer product `self ⊗ other`.
    pub fn outer(&self, other: &Self) -> TensorField {
        let d = self.dim();
        let mut comps = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                comps.push(&self.comps[i] * &other.comps[j]);
            }
        }
        TensorField { grid: self.grid, comps }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(ScalarField::max_abs).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(ScalarField::is_finite)
    }
}

impl TensorField {
    pub fn new(grid: GridSpec, comps: Vec<ScalarField>) -> Result<Self> {
        let d = grid.dim();
        if comps.len() != d * d {
            return Err(usage(format!("tensor field needs {} components, got {}", d * d, comps.len())));
        }
        if comps.iter().any(|c| *c.grid() != grid) {
            return Err(usage("tensor components live on different grids"));
        }
        Ok(Self { grid, comps })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        let d = grid.dim();
        Self { grid, comps: vec![ScalarField::zeros(grid); d * d] }
    }

    /// `s * I` pointwise.
    pub fn isotropic(s: &ScalarField) -> Self {
        let grid = *s.grid();
        let d = grid.dim();
        let mut comps = vec![ScalarField::zeros(grid); d * d];
        for a in 0..d {
            comps[a * d + a] = s.clone();
        }
        Self { grid, comps }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn comp(&self, i: usize, j: usize) -> &ScalarField {
        &self.comps[i * self.dim() + j]
    }

    pub fn comps(&self) -> &[ScalarField] {
        &self.comps
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let mut comps = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                comps.push(self.comp(j, i).clone());
            }
        }
        Self { grid: self.grid, comps }
    }

    pub fn trace(&self) -> ScalarField {
        let d = self.dim();
        let mut out = ScalarField::zeros(self.grid);
        for a in 0..d {
            out = &out + self.comp(a, a);
        }
        out
    }

    /// Pointwise double contraction `A : B = sum_ij A_ij B_ij`.
    pub fn contract(&self, other: &Self) -> ScalarField {
        let mut out = ScalarField::zeros(self.grid);
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for ((o, x), y) in out.values.iter_mut().zip(&a.values).zip(&b.values) {
                *o += x * y;
            }
        }
        out
    }

    /// Pointwise matrix-vector product `(T v)_i = sum_j T_ij v_j`.
    pub fn apply(&self, v: &VectorField) -> VectorField {
        let d = self.dim();
        let comps = (0..d)
            .map(|i| {
                let mut acc = ScalarField::zeros(self.grid);
                for j in 0..d {
                    acc = &acc + &(self.comp(i, j) * v.comp(j));
                }
                acc
            })
            .collect();
        VectorField { grid: self.grid, comps }
    }

    pub fn map_comps(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        Self { grid: self.grid, comps: self.comps.iter().map(f).collect() }
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_comps(|x| x.scale(c))
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(ScalarField::max_abs).fold(0.0, f64::max)
    }

    /// Per-cell maximum over components of `|T_ij|`.
    pub fn pointwise_max_abs(&self) -> ScalarField {
        let mut out = ScalarField::zeros(self.grid);
        for c in &self.comps {
            for (o, v) in out.values.iter_mut().zip(&c.values) {
                *o = o.max(v.abs());
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(ScalarField::is_finite)
    }
}

impl Field {
    pub fn rank(&self) -> usize {
        match self {
            Field::Scalar(_) => 0,
            Field::Vector(_) => 1,
            Field::Tensor(_) => 2,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        match self {
            Field::Scalar(f) => f.grid(),
            Field::Vector(f) => f.grid(),
            Field::Tensor(f) => f.grid(),
        }
    }
}

macro_rules! impl_binop {
    ($ty:ident, $tr:ident, $m:ident, $op:tt, $combine:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                $combine(self, rhs, |a, b| a $op b)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

fn zip_scalar(a: &ScalarField, b: &ScalarField, f: impl Fn(f64, f64) -> f64) -> ScalarField {
    a.zip_map(b, f)
}

fn zip_vector(a: &VectorField, b: &VectorField, f: impl Fn(f64, f64) -> f64 + Copy) -> VectorField {
    assert_eq!(a.grid, b.grid, "grid mismatch");
    let comps = a.comps.iter().zip(&b.comps).map(|(x, y)| x.zip_map(y, f)).collect();
    VectorField { grid: a.grid, comps }
}

fn zip_tensor(a: &TensorField, b: &TensorField, f: impl Fn(f64, f64) -> f64 + Copy) -> TensorField {
    assert_eq!(a.grid, b.grid, "grid mismatch");
    let comps = a.comps.iter().zip(&b.comps).map(|(x, y)| x.zip_map(y, f)).collect();
    TensorField { grid: a.grid, comps }
}

impl_binop!(ScalarField, Add, add, +, zip_scalar);
impl_binop!(ScalarField, Sub, sub, -, zip_scalar);
impl_binop!(ScalarField, Mul, mul, *, zip_scalar);
impl_binop!(ScalarField, Div, div, /, zip_scalar);
impl_binop!(VectorField, Add, add, +, zip_vector);
impl_binop!(VectorField, Sub, sub, -, zip_vector);
impl_binop!(TensorField, Add, add, +, zip_tensor);
impl_binop!(TensorField, Sub, sub, -, zip_tensor);

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        self.map(|v| -v)
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(-1.0)
    }
}

impl Neg for &TensorField {
    type Output = TensorField;
    fn neg(self) -> TensorField {
        self.scale(-1.0)
    }
}
