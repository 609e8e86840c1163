//! Dense operators of the Grover walk and the moving-shift walk.
//!
//! Rows and columns indexed by arcs follow the canonical arc order of
//! [`ArcSet`]; vertex-indexed ones follow vertex indices.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format;
use crate::graph::{ArcSet, Graph};
use crate::perm::Permutation;
use crate::triangulation::TrianglePartition;

/// Boundary operator `d` (vertices × arcs): `d[v, a] = 1/√deg v` when `t(a) = v`.
pub fn build_boundary(g: &Graph) -> DMatrix<f64> {
    let arcs = g.arcs();
    let mut d = DMatrix::zeros(g.n_vertices(), arcs.len());
    for (i, a) in arcs.arcs().iter().enumerate() {
        d[(a.terminus, i)] = 1.0 / (g.degree(a.terminus) as f64).sqrt();
    }
    d
}

/// Flip-flop shift `S`: `e_b ↦ e_{b̄}`.
pub fn build_flipflop(arcs: &ArcSet) -> Permutation {
    Permutation::new(arcs.reversal().to_vec()).expect("reversal is an involution")
}

/// Moving shift `S_c` with `(S_c)[a, b] = δ(a, τ(b))`, i.e. `e_b ↦ e_{τ(b)}`.
pub fn build_moving_shift(pi: &TrianglePartition) -> Permutation {
    pi.tau().clone()
}

/// The Grover coin `2d*d − I`.
pub fn build_coin(d: &DMatrix<f64>) -> DMatrix<f64> {
    let n = d.ncols();
    d.transpose() * d * 2.0 - DMatrix::identity(n, n)
}

/// Grover walk `U = S(2d*d − I)` on any graph.
pub fn build_grover(g: &Graph) -> DMatrix<f64> {
    let d = build_boundary(g);
    build_flipflop(&g.arcs()).to_matrix() * build_coin(&d)
}

/// Discriminant `T = D^{−1/2} A D^{−1/2}`.
pub fn build_t(g: &Graph) -> DMatrix<f64> {
    let n = g.n_vertices();
    let deg = g.degrees();
    DMatrix::from_fn(n, n, |x, y| {
        if g.has_edge(x, y) {
            1.0 / ((deg[x] * deg[y]) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// Every matrix attached to one `(G, π)` pair.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub arcs: ArcSet,
    pub n_edges: usize,
    pub n_triangles: usize,
    pub d: DMatrix<f64>,
    pub flip: Permutation,
    pub moving: Permutation,
    pub s: DMatrix<f64>,
    pub s_c: DMatrix<f64>,
    pub u: DMatrix<f64>,
    pub u_c: DMatrix<f64>,
    /// `T = dSd*`.
    pub t: DMatrix<f64>,
    /// `T₁ = dS_c d*`.
    pub t1: DMatrix<f64>,
    /// `T₂ = dS_c² d*`.
    pub t2: DMatrix<f64>,
    pub r: DMatrix<i64>,
    pub adjacency: DMatrix<i64>,
    pub degree: DMatrix<i64>,
}

impl OperatorSet {
    pub fn build(g: &Graph, pi: &TrianglePartition) -> Result<Self> {
        let arcs = g.arcs();
        if pi.arc_set() != &arcs {
            return Err(Error::InvalidInput(
                "partition does not belong to this graph".into(),
            ));
        }
        let d = build_boundary(g);
        let flip = build_flipflop(&arcs);
        let moving = build_moving_shift(pi);
        let s = flip.to_matrix();
        let s_c = moving.to_matrix();
        let coin = build_coin(&d);
        let u = &s * &coin;
        let u_c = &s_c * &coin;
        let dt = d.transpose();
        let t = &d * &s * &dt;
        let t1 = &d * &s_c * &dt;
        let t2 = &d * (&s_c * &s_c) * &dt;
        let (adjacency, degree) = g.adjacency_and_degree();
        Ok(OperatorSet {
            n_edges: g.n_edges(),
            n_triangles: pi.len(),
            r: pi.build_r(),
            arcs,
            d,
            flip,
            moving,
            s,
            s_c,
            u,
            u_c,
            t,
            t1,
            t2,
            adjacency,
            degree,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.d.nrows()
    }

    pub fn n_arcs(&self) -> usize {
        self.d.ncols()
    }

    pub fn lifted(&self) -> LiftedSystem {
        LiftedSystem::build(self)
    }

    /// Looks up a matrix by its short name, for dumps.
    pub fn by_name(&self, name: &str) -> Option<DMatrix<f64>> {
        let m = match name {
            "d" => self.d.clone(),
            "S" => self.s.clone(),
            "Sc" => self.s_c.clone(),
            "U" => self.u.clone(),
            "Uc" => self.u_c.clone(),
            "T" => self.t.clone(),
            "T1" => self.t1.clone(),
            "T2" => self.t2.clone(),
            "R" => self.r.map(|x| x as f64),
            "A" => self.adjacency.map(|x| x as f64),
            "D" => self.degree.map(|x| x as f64),
            _ => return None,
        };
        Some(m)
    }
}

pub const OPERATOR_NAMES: [&str; 11] = ["d", "S", "Sc", "U", "Uc", "T", "T1", "T2", "R", "A", "D"];

/// `L = [d* | S_c d* | S_c² d*]` with the block matrices `T̃` and `B`.
#[derive(Debug, Clone)]
pub struct LiftedSystem {
    pub l: DMatrix<f64>,
    /// Rows `(O, O, −I)`, `(I, 2T, 2T)`, `(O, −I, O)`.
    pub t_tilde: DMatrix<f64>,
    /// Rows `(2T, I, 2T)`, `(O, O, −I)`, `(−I, O, O)`.
    pub t_tilde_inv: DMatrix<f64>,
    /// Rows `(½I, O, O)`, `(T, ½I, T)`, `(T, O, ½I)`.
    pub b: DMatrix<f64>,
    /// Rows `(2I, O, O)`, `(8T² − 4T, 2I, −4T)`, `(−4T, O, 2I)`.
    pub b_inv: DMatrix<f64>,
    /// Rows `(I, T, T)`, `(T, I, T)`, `(T, T, I)`.
    pub gram: DMatrix<f64>,
}

fn blocks3(n: usize, blocks: [[&DMatrix<f64>; 3]; 3]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(3 * n, 3 * n);
    for (i, row) in blocks.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            m.view_mut((i * n, j * n), (n, n)).copy_from(*block);
        }
    }
    m
}

impl LiftedSystem {
    pub fn build(ops: &OperatorSet) -> Self {
        let n = ops.n_vertices();
        let dt = ops.d.transpose();
        let sc_dt = &ops.s_c * &dt;
        let sc2_dt = &ops.s_c * &sc_dt;
        let mut l = DMatrix::zeros(ops.n_arcs(), 3 * n);
        l.view_mut((0, 0), (ops.n_arcs(), n)).copy_from(&dt);
        l.view_mut((0, n), (ops.n_arcs(), n)).copy_from(&sc_dt);
        l.view_mut((0, 2 * n), (ops.n_arcs(), n)).copy_from(&sc2_dt);

        let t = &ops.t;
        let o = DMatrix::zeros(n, n);
        let i = DMatrix::identity(n, n);
        let neg_i = -&i;
        let half_i = &i * 0.5;
        let two_i = &i * 2.0;
        let two_t = t * 2.0;
        let neg_four_t = t * -4.0;
        let eight_t2 = t * t * 8.0 + &neg_four_t;

        LiftedSystem {
            l,
            t_tilde: blocks3(
                n,
                [[&o, &o, &neg_i], [&i, &two_t, &two_t], [&o, &neg_i, &o]],
            ),
            t_tilde_inv: blocks3(
                n,
                [[&two_t, &i, &two_t], [&o, &o, &neg_i], [&neg_i, &o, &o]],
            ),
            b: blocks3(n, [[&half_i, &o, &o], [t, &half_i, t], [t, &o, &half_i]]),
            b_inv: blocks3(
                n,
                [
                    [&two_i, &o, &o],
                    [&eight_t2, &two_i, &neg_four_t],
                    [&neg_four_t, &o, &two_i],
                ],
            ),
            gram: blocks3(n, [[&i, t, t], [t, &i, t], [t, t, &i]]),
        }
    }
}

/// JSON matrix dump.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixDump {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<f64>>,
}

impl MatrixDump {
    pub fn new(name: &str, m: &DMatrix<f64>) -> Self {
        MatrixDump {
            name: name.to_string(),
            rows: m.nrows(),
            cols: m.ncols(),
            data: format::matrix_to_rows(m),
        }
    }
}

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}
