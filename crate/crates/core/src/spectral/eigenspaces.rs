//! Explicit eigenvectors of `U_c`.
//!
//! Inherited eigenvectors live in `𝓛 = Im L`, `L = [d* | S_c d* | S_c² d*]`,
//! and are built from eigenvectors of `T`. Birth eigenvectors live in
//! `𝓛⊥ = ker d ∩ ker dS_c ∩ ker dS_c²` and carry only the eigenvalues
//! `−1, −ω, −ω²`; for `μ` among them the eigenspace is `ker d ∩ ker(S_c + μ)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::eigen::{self, kernel, to_complex};
use super::{birth_eigenvalue, Tolerances};
use crate::error::{Error, Result};
use crate::operators::OperatorSet;
use crate::triangulation::TrianglePartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    Inherited,
    Birth,
}

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: DVector<Complex64>,
}

impl EigenPair {
    /// `‖M v − Λ v‖ / ‖v‖`.
    pub fn relative_residual(&self, m: &DMatrix<Complex64>) -> f64 {
        (m * &self.vector - &self.vector * self.value).norm() / self.vector.norm()
    }
}

#[derive(Debug, Clone)]
pub struct EigenSpace {
    pub eigenvalue: Complex64,
    pub basis: Vec<DVector<Complex64>>,
    pub kind: EigenKind,
}

impl EigenSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as columns.
    pub fn matrix(&self, n_arcs: usize) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(n_arcs, self.basis.len());
        for (k, v) in self.basis.iter().enumerate() {
            m.set_column(k, v);
        }
        m
    }

    /// Largest `‖M v − Λ v‖ / ‖v‖` over the basis.
    pub fn max_residual(&self, m: &DMatrix<Complex64>) -> f64 {
        self.basis
            .iter()
            .map(|v| (m * v - v * self.eigenvalue).norm() / v.norm())
            .fold(0.0, f64::max)
    }

    /// Smallest singular value of the stacked basis; positive iff the basis
    /// is linearly independent.
    pub fn min_singular_value(&self) -> f64 {
        let n = self.basis.first().map_or(0, |v| v.len());
        eigen::min_singular_value(&self.matrix(n))
    }

    /// Orthonormal basis of the same span.
    pub fn orthonormal(&self, tol: f64) -> DMatrix<Complex64> {
        let n = self.basis.first().map_or(0, |v| v.len());
        eigen::column_space(&self.matrix(n), tol)
    }
}

/// The pieces `d* f`, `S_c d* f`, `S_c² d* f`.
fn lift_parts(ops: &OperatorSet, f: &DVector<Complex64>) -> [DVector<Complex64>; 3] {
    let dt = to_complex(&ops.d.transpose());
    let sc = to_complex(&ops.s_c);
    let p0 = dt * f;
    let p1 = &sc * &p0;
    let p2 = &sc * &p1;
    [p0, p1, p2]
}

/// Inherited eigenvectors attached to `λ ∈ σ(T)`.
///
/// * `λ = 1`: the `|V|` vectors `(d* + S_c d* − S_c² d*) e_u` at `Λ = 1`;
///   `f` is ignored.
/// * `λ = −½`: `(−d* + S_c d*) f` at `Λ = −1`.
/// * otherwise: `(d* + Λ² S_c d* − Λ S_c² d*) f` at `Λ = e^{±iΘ_λ}`,
///   `Θ_λ = arccos(λ − ½)`, one vector per sign.
///
/// Outside the `λ = 1` case `f` must satisfy `‖Tf − λf‖ ≤ residual_tol ‖f‖`.
pub fn inherited_eigenvectors(
    ops: &OperatorSet,
    lambda: f64,
    f: &DVector<Complex64>,
    tols: &Tolerances,
) -> Result<Vec<EigenPair>> {
    let near = tols.cluster_tol;
    if !(-0.5 - near..=1.0 + near).contains(&lambda) {
        return Err(Error::InvalidInput(format!(
            "λ = {lambda} outside [−1/2, 1]"
        )));
    }
    let n = ops.n_vertices();
    if (lambda - 1.0).abs() <= near {
        let pairs = (0..n)
            .map(|u| {
                let e =
                    DVector::from_fn(n, |i, _| Complex64::new(f64::from(u8::from(i == u)), 0.0));
                let [p0, p1, p2] = lift_parts(ops, &e);
                EigenPair {
                    value: Complex64::new(1.0, 0.0),
                    vector: p0 + p1 - p2,
                }
            })
            .collect();
        return Ok(pairs);
    }

    if f.len() != n {
        return Err(Error::InvalidInput(format!(
            "f has length {}, expected {n}",
            f.len()
        )));
    }
    let t = to_complex(&ops.t);
    let defect = (&t * f - f * Complex64::new(lambda, 0.0)).norm();
    if f.norm() == 0.0 || defect > tols.residual_tol * f.norm() {
        return Err(Error::InvalidInput(format!(
            "f is not an eigenvector of T at {lambda} (residual {defect:e})"
        )));
    }
    let [p0, p1, p2] = lift_parts(ops, f);
    if (lambda + 0.5).abs() <= near {
        return Ok(vec![EigenPair {
            value: Complex64::new(-1.0, 0.0),
            vector: -p0 + p1,
        }]);
    }
    let theta = (lambda - 0.5).clamp(-1.0, 1.0).acos();
    Ok([theta, -theta]
        .into_iter()
        .map(|th| {
            let big = Complex64::from_polar(1.0, th);
            EigenPair {
                value: big,
                vector: &p0 + &p1 * (big * big) - &p2 * big,
            }
        })
        .collect())
}

/// Orthonormal basis of `B_μ = ker d ∩ ker(S_c + μ)` for `μ = −ω^k`.
pub fn birth_basis(ops: &OperatorSet, k: usize, tols: &Tolerances) -> Result<EigenSpace> {
    if k > 2 {
        return Err(Error::InvalidInput(format!("k must be 0, 1 or 2, got {k}")));
    }
    let mu = birth_eigenvalue(k);
    let (nv, na) = (ops.n_vertices(), ops.n_arcs());
    let mut stacked = DMatrix::zeros(nv + na, na);
    stacked
        .view_mut((0, 0), (nv, na))
        .copy_from(&to_complex(&ops.d));
    let shifted = to_complex(&ops.s_c) + DMatrix::identity(na, na) * mu;
    stacked.view_mut((nv, 0), (na, na)).copy_from(&shifted);
    let basis = kernel(&stacked, tols.rank_tol);
    Ok(EigenSpace {
        eigenvalue: mu,
        basis: basis.column_iter().map(|c| c.into_owned()).collect(),
        kind: EigenKind::Birth,
    })
}

/// `B₋₁` from `ker R`: each `φ ∈ ker R` becomes `Ψ` constant on every
/// triangle, `Ψ_a = φ_C` for `a ∈ C`.
pub fn birth_minus1_from_ker_r(pi: &TrianglePartition, tols: &Tolerances) -> EigenSpace {
    let r = pi.build_r().map(|x| x as f64);
    let phis = kernel(&r, tols.rank_tol);
    let n_arcs = pi.arc_set().len();
    let basis = phis
        .column_iter()
        .map(|phi| DVector::from_fn(n_arcs, |a, _| Complex64::new(phi[pi.triangle_of(a)], 0.0)))
        .collect();
    EigenSpace {
        eigenvalue: Complex64::new(-1.0, 0.0),
        basis,
        kind: EigenKind::Birth,
    }
}
