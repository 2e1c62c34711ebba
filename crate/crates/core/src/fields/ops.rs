//! Second-order periodic finite-difference operators.
//!
//! Cell-centred quantities use central differences `(f[i+1] - f[i-1]) / 2h`.
//! The Laplacian and the variable-coefficient elliptic operator use the
//! compact face pair: forward difference onto faces `i+1/2`, backward
//! difference back to cells. Both families telescope, so the domain sum of
//! any divergence vanishes to round-off.

use super::field::{Field, ScalarField, TensorField, VectorField};
use crate::error::{usage, Result};

/// Which operator [`differentiate`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffKind {
    Grad,
    Div,
    DivTensor,
    Laplacian,
    SymGrad,
}

/// Rank-checked entry point over all operators.
pub fn differentiate(kind: DiffKind, f: &Field) -> Result<Field> {
    match (kind, f) {
        (DiffKind::Grad, Field::Scalar(s)) => Ok(Field::Vector(grad(s))),
        (DiffKind::Laplacian, Field::Scalar(s)) => Ok(Field::Scalar(laplacian(s))),
        (DiffKind::Div, Field::Vector(v)) => Ok(Field::Scalar(div(v))),
        (DiffKind::SymGrad, Field::Vector(v)) => Ok(Field::Tensor(sym_grad(v))),
        (DiffKind::DivTensor, Field::Tensor(t)) => Ok(Field::Vector(div_tensor(t))),
        (kind, f) => Err(usage(format!("{kind:?} cannot be applied to a rank-{} field", f.rank()))),
    }
}

fn stencil(f: &ScalarField, axis: usize, op: impl Fn(f64, f64, f64) -> f64) -> ScalarField {
    let g = *f.grid();
    let v = f.values();
    let out = (0..g.cells()).map(|i| op(v[g.shift(i, axis, -1)], v[i], v[g.shift(i, axis, 1)])).collect();
    ScalarField::from_vec_unchecked(g, out)
}

/// Central first derivative along one axis.
pub fn partial(f: &ScalarField, axis: usize) -> ScalarField {
    let inv = 0.5 / f.grid().h();
    stencil(f, axis, |m, _, p| (p - m) * inv)
}

/// Forward difference, located on the face between cell `i` and `i+1`.
pub fn forward(f: &ScalarField, axis: usize) -> ScalarField {
    let inv = 1.0 / f.grid().h();
    stencil(f, axis, |_, c, p| (p - c) * inv)
}

/// Backward difference, mapping face values back onto cells.
pub fn backward(f: &ScalarField, axis: usize) -> ScalarField {
    let inv = 1.0 / f.grid().h();
    stencil(f, axis, |m, c, _| (c - m) * inv)
}

pub fn grad(f: &ScalarField) -> VectorField {
    let g = *f.grid();
    VectorField::from_comps_unchecked(g, (0..g.dim()).map(|a| partial(f, a)).collect())
}

pub fn div(v: &VectorField) -> ScalarField {
    let g = *v.grid();
    let mut acc = partial(v.comp(0), 0);
    for a in 1..g.dim() {
        acc = &acc + &partial(v.comp(a), a);
    }
    acc
}

/// Row divergence `(div T)_i = sum_j d_j T_ij`.
pub fn div_tensor(t: &TensorField) -> VectorField {
    let g = *t.grid();
    let d = g.dim();
    let comps = (0..d)
        .map(|i| {
            let mut acc = partial(t.comp(i, 0), 0);
            for j in 1..d {
                acc = &acc + &partial(t.comp(i, j), j);
            }
            acc
        })
        .collect();
    VectorField::from_comps_unchecked(g, comps)
}

/// Velocity gradient `(Du)_ij = d_j u_i`.
pub fn jacobian(v: &VectorField) -> TensorField {
    let g = *v.grid();
    let d = g.dim();
    let mut comps = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            comps.push(partial(v.comp(i), j));
        }
    }
    TensorField::new(g, comps).expect("component count is dim^2")
}

/// Symmetric part `(Du + Du^T) / 2`.
pub fn sym_grad(v: &VectorField) -> TensorField {
    let du = jacobian(v);
    (&du + &du.transpose()).scale(0.5)
}

/// Face gradient: forward difference on every axis.
pub fn face_grad(f: &ScalarField) -> VectorField {
    let g = *f.grid();
    VectorField::from_comps_unchecked(g, (0..g.dim()).map(|a| forward(f, a)).collect())
}

/// Face divergence: backward difference of face-located components.
pub fn face_div(v: &VectorField) -> ScalarField {
    let g = *v.grid();
    let mut acc = backward(v.comp(0), 0);
    for a in 1..g.dim() {
        acc = &acc + &backward(v.comp(a), a);
    }
    acc
}

/// Compact Laplacian, defined as `face_div(face_grad f)`.
pub fn laplacian(f: &ScalarField) -> ScalarField {
    face_div(&face_grad(f))
}

/// Face-averaged coefficient `(c[i] + c[i+1]) / 2` along `axis`.
fn face_average(c: &ScalarField, axis: usize) -> ScalarField {
    stencil(c, axis, |_, m, p| 0.5 * (m + p))
}

/// Conductivity used by [`elliptic`]: a constant or a cell field.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(f64),
    Field(ScalarField),
}

impl Coefficient {
    pub fn min(&self) -> f64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Field(f) => f.min(),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::Field(f) => f.mean(),
        }
    }
}

/// `div(c grad f)` with the compact face pair and face-averaged `c`.
pub fn elliptic(c: &Coefficient, f: &ScalarField) -> ScalarField {
    match c {
        Coefficient::Constant(k) => laplacian(f).scale(*k),
        Coefficient::Field(cf) => {
            let g = *f.grid();
            let flux = (0..g.dim()).map(|a| &face_average(cf, a) * &forward(f, a)).collect();
            face_div(&VectorField::from_comps_unchecked(g, flux))
        }
    }
}

/// Domain integral `h^d * sum(values)`, summed in storage order.
pub fn integrate_domain(f: &ScalarField) -> f64 {
    f.grid().cell_volume() * f.values().iter().sum::<f64>()
}

/// Directional derivative `v . grad f`.
pub fn advect(v: &VectorField, f: &ScalarField) -> ScalarField {
    v.dot(&grad(f))
}
