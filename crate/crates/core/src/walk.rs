//! Time evolution of arc states and the vertex readout.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::format_f64;
use crate::graph::{Arc, ArcSet};

/// Amplitudes indexed by the canonical arc order.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub amplitudes: DVector<Complex64>,
}

impl WalkState {
    pub fn new(amplitudes: DVector<Complex64>) -> Self {
        WalkState { amplitudes }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }
}

/// How to build the starting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialSpec {
    /// Equal weight on every arc.
    Uniform,
    /// All weight on one arc.
    Point(Arc),
    /// Equal weight on the arcs ending at a vertex.
    VertexUniform(usize),
}

pub fn initial_state(arcs: &ArcSet, spec: InitialSpec) -> Result<WalkState> {
    let m = arcs.len();
    let mut psi = DVector::zeros(m);
    match spec {
        InitialSpec::Uniform => {
            if m == 0 {
                return Err(Error::InvalidInput("graph has no arcs".into()));
            }
            psi.fill(Complex64::new(1.0 / (m as f64).sqrt(), 0.0));
        }
        InitialSpec::Point(arc) => {
            let i = arcs.index_of(arc).ok_or(Error::UnknownArc(arc))?;
            psi[i] = Complex64::new(1.0, 0.0);
        }
        InitialSpec::VertexUniform(x) => {
            if x >= arcs.n_vertices() {
                return Err(Error::UnknownVertex(x));
            }
            let into = arcs.incoming(x);
            let w = Complex64::new(1.0 / (into.len() as f64).sqrt(), 0.0);
            for &i in into {
                psi[i] = w;
            }
        }
    }
    Ok(WalkState::new(psi))
}

/// `Ψ_{t+1} = U Ψ_t` for `t < steps`, keeping every `stride`-th state.
/// The returned list pairs each kept state with its time and always starts at `t = 0`.
pub fn evolve(
    u: &DMatrix<f64>,
    psi: &WalkState,
    steps: usize,
    stride: usize,
) -> Vec<(usize, WalkState)> {
    let stride = stride.max(1);
    let uc = u.map(|x| Complex64::new(x, 0.0));
    let mut out = Vec::with_capacity(steps / stride + 1);
    let mut cur = psi.amplitudes.clone();
    out.push((0, psi.clone()));
    for t in 1..=steps {
        cur = &uc * &cur;
        if t % stride == 0 {
            out.push((t, WalkState::new(cur.clone())));
        }
    }
    out
}

/// `p(x) = Σ |Ψ_a|²` over arcs `a` ending at `x`.
pub fn vertex_distribution(arcs: &ArcSet, psi: &WalkState) -> Vec<f64> {
    (0..arcs.n_vertices())
        .map(|x| {
            arcs.incoming(x)
                .iter()
                .map(|&i| psi.amplitudes[i].norm_sqr())
                .sum()
        })
        .collect()
}

/// Smallest `t` in `1..=max_t` with `‖M^t − I‖_max ≤ tol`.
pub fn detect_period(m: &DMatrix<f64>, max_t: usize, tol: f64) -> Option<usize> {
    let n = m.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut p = m.clone();
    for t in 1..=max_t {
        if (&p - &id).amax() <= tol {
            return Some(t);
        }
        p = &p * m;
    }
    None
}

/// CSV with header `t,vertex_0,...` and one row of vertex probabilities per kept state.
pub fn trajectory_csv(arcs: &ArcSet, trajectory: &[(usize, WalkState)]) -> String {
    let mut s = String::from("t");
    for x in 0..arcs.n_vertices() {
        let _ = write!(s, ",vertex_{x}");
    }
    s.push('\n');
    for (t, state) in trajectory {
        let _ = write!(s, "{t}");
        for p in vertex_distribution(arcs, state) {
            let _ = write!(s, ",{}", format_f64(p));
        }
        s.push('\n');
    }
    s
}
