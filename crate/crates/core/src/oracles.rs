//! Closed-form results for double cones `Γₙ` and a brute-force spectrum.
//!
//! These serve as ground truth for the generic machinery in [`crate::spectral`].
//!
//! Birth vectors of `Γₙ` are fixed by their values on cycle arcs:
//! `a_j = Ψ(x_j, x_{j+1})` and `b_j = Ψ(x_{j+1}, x_j)`. The remaining entries
//! follow from `Ψ ∈ ker(S_c − ω^k)`, which reads `Ψ_{τ⁻¹(a)} = ω^k Ψ_a`.
//!
//! With `(S_c)_{a,b} = δ(a, τ(b))` and the canonical partition, the in-arcs at
//! `x_{j+1}` carry `a_j`, `ω^k a_{j+1}`, `b_{j+1}` and `ω^k b_j`, so
//! `Ψ ∈ ker d` iff `a_j + ω^k a_{j+1} + ω^k b_j + b_{j+1} = 0` and
//! `Σ a_j = Σ b_j = 0`. The sequences that solve this for `k = 1` are
//! `−(ω + ζ^{−l}) ζ^{−lj}`, `(1 + ω ζ^{−l}) ζ^{−lj}`, and their conjugates
//! solve it for `k = 2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{self, gen_double_cone, Arc, Graph};
use crate::operators::OperatorSet;
use crate::spectral::eigen::{eig_unitary, to_complex, UnitaryEig};
use crate::spectral::omega;
use crate::triangulation::{canonical_double_cone_partition, TrianglePartition};

/// Default cap on the dense dimension `|𝒜|`.
pub const DEFAULT_MAX_DIM: usize = 2000;

const BIRTH_TOL: f64 = 1e-10;

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::GeneratorSize {
            family: "double-cone",
            min: 3,
            n,
        });
    }
    Ok(())
}

fn zeta(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / n as f64)
}

/// `cos(2πj/n)`, reduced to the first quadrant so that quarter turns give exactly 0.
pub fn cos_turn(j: usize, n: usize) -> f64 {
    let j = j % n;
    let j = j.min(n - j);
    match (4 * j).cmp(&n) {
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Less => (2.0 * PI * j as f64 / n as f64).cos(),
        std::cmp::Ordering::Greater => -(PI * (n - 2 * j) as f64 / n as f64).cos(),
    }
}

/// Matrices describing `T′ = D⁻¹A` of `Γₙ` and its quotient `Q′`.
#[derive(Debug, Clone)]
pub struct DoubleConeSpec {
    pub n: usize,
    /// `e^{2πi/n}`.
    pub zeta: Complex64,
    /// `[[0, 1], [½, ½]]`.
    pub q_prime: DMatrix<f64>,
    /// `(n+2) × 2`: apexes in column 0, cycle vertices in column 1.
    pub j_tilde: DMatrix<f64>,
    pub t_prime: DMatrix<f64>,
}

impl DoubleConeSpec {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let g = gen_double_cone(n)?;
        let deg = g.degrees();
        let t_prime = DMatrix::from_fn(n + 2, n + 2, |x, y| {
            if g.has_edge(x, y) {
                1.0 / deg[x] as f64
            } else {
                0.0
            }
        });
        let j_tilde = DMatrix::from_fn(n + 2, 2, |x, c| f64::from(u8::from((x < 2) == (c == 0))));
        Ok(DoubleConeSpec {
            n,
            zeta: zeta(n),
            q_prime: DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.5]),
            j_tilde,
            t_prime,
        })
    }
}

/// Closed-form `σ(T) = σ(T′)` of `Γₙ`, ascending:
/// `{0} ∪ {½ cos(2πj/n) : 1 ≤ j < n} ∪ {1, −½}`.
pub fn double_cone_t_spectrum(n: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    let mut values = vec![0.0, 1.0, -0.5];
    values.extend((1..n).map(|j| 0.5 * cos_turn(j, n)));
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `dim ker(T + ½)` for `Γₙ`: 1 for odd `n`, 2 for even.
pub fn double_cone_half_multiplicity(n: usize) -> usize {
    if n.is_multiple_of(2) {
        2
    } else {
        1
    }
}

/// `n + 2` independent eigenvectors of `T′`, as `(eigenvalue, vector)`:
/// `[1, −1, 0…]` at 0, `[0, 0, 1, ζ^j, ζ^{2j}, …]` at `½ cos(2πj/n)`, and
/// `J̃[1, 1]`, `J̃[−2, 1]` at `1` and `−½`.
pub fn double_cone_t_eigenvectors(n: usize) -> Result<Vec<(f64, DVector<Complex64>)>> {
    check_n(n)?;
    let z = zeta(n);
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut out = Vec::with_capacity(n + 2);
    out.push((
        0.0,
        DVector::from_fn(n + 2, |i, _| c([1.0, -1.0].get(i).copied().unwrap_or(0.0))),
    ));
    for j in 1..n {
        let lambda = 0.5 * cos_turn(j, n);
        let v = DVector::from_fn(n + 2, |i, _| {
            if i < 2 {
                c(0.0)
            } else {
                z.powu((j * (i - 2)) as u32)
            }
        });
        out.push((lambda, v));
    }
    for (lambda, q) in [(1.0, [1.0, 1.0]), (-0.5, [-2.0, 1.0])] {
        out.push((
            lambda,
            DVector::from_fn(n + 2, |i, _| c(if i < 2 { q[0] } else { q[1] })),
        ));
    }
    Ok(out)
}

/// Which birth vector of `Γₙ` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BirthRecipe {
    /// The `l`-th vector (`1 ≤ l < n`) of `B_{−ω^k}`.
    Fourier { k: usize, l: usize },
    /// `a_j = b_j = (−1)^j`, an extra vector of `B₋₁` for even `n`.
    EvenExtra,
}

impl BirthRecipe {
    pub fn k(&self) -> usize {
        match *self {
            BirthRecipe::Fourier { k, .. } => k,
            BirthRecipe::EvenExtra => 0,
        }
    }
}

/// Cycle-arc values `(a, b)` for a recipe.
pub fn birth_cycle_values(
    n: usize,
    recipe: BirthRecipe,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    check_n(n)?;
    let z = zeta(n);
    let w = omega();
    let one = Complex64::new(1.0, 0.0);
    match recipe {
        BirthRecipe::EvenExtra => {
            if !n.is_multiple_of(2) {
                return Err(Error::InvalidInput(format!(
                    "the alternating B₋₁ vector needs even n, got {n}"
                )));
            }
            let alt: Vec<Complex64> = (0..n)
                .map(|j| if j % 2 == 0 { one } else { -one })
                .collect();
            Ok((alt.clone(), alt))
        }
        BirthRecipe::Fourier { k, l } => {
            if k > 2 {
                return Err(Error::InvalidInput(format!("k must be 0, 1 or 2, got {k}")));
            }
            if l == 0 || l >= n {
                return Err(Error::InvalidInput(format!(
                    "l must lie in 1..{n}, got {l}"
                )));
            }
            let zl = z.powu(l as u32);
            let phase = |j: usize| z.powi(-((l * j) as i32));
            let (a, b): (Vec<Complex64>, Vec<Complex64>) = (0..n)
                .map(|j| match k {
                    0 => (zl.powu(j as u32), -zl.powu(j as u32)),
                    1 => (-(w + zl.inv()) * phase(j), (one + w * zl.inv()) * phase(j)),
                    _ => (
                        (-(w + zl.inv()) * phase(j)).conj(),
                        ((one + w * zl.inv()) * phase(j)).conj(),
                    ),
                })
                .unzip();
            Ok((a, b))
        }
    }
}

/// Whether cycle values `(a, b)` extend to a vector of `ker d` inside
/// `ker(S_c − ω^k)`: `a_j + ω^k a_{j+1} + ω^k b_j + b_{j+1} = 0` for all `j`
/// (indices mod `n`) and `Σ a = Σ b = 0`, each within `1e−10`.
pub fn check_birth_conditions(
    n: usize,
    k: usize,
    a: &[Complex64],
    b: &[Complex64],
) -> Result<bool> {
    if a.len() != n || b.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected sequences of length {n}, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(birth_condition_residual(k, a, b) <= BIRTH_TOL)
}

/// Largest violation of the conditions checked by [`check_birth_conditions`].
pub fn birth_condition_residual(k: usize, a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len();
    let wk = omega().powu(k as u32);
    let local = (0..n)
        .map(|j| {
            let next = (j + 1) % n;
            (a[j] + wk * a[next] + wk * b[j] + b[next]).norm()
        })
        .fold(0.0, f64::max);
    let sum_a = a.iter().sum::<Complex64>().norm();
    let sum_b = b.iter().sum::<Complex64>().norm();
    local.max(sum_a).max(sum_b)
}

/// Completes cycle values to a full arc vector in `ker(S_c − ω^k)` by walking
/// each triangle of the canonical partition backwards with `τ⁻¹`.
pub fn complete_birth_vector(
    pi: &TrianglePartition,
    n: usize,
    k: usize,
    a: &[Complex64],
    b: &[Complex64],
) -> Result<DVector<Complex64>> {
    let arcs = pi.arc_set();
    let x = |i| graph::cone_cycle_vertex(n, i);
    let wk = omega().powu(k as u32);
    let tau_inv = pi.tau().inverse();
    let mut psi = DVector::zeros(arcs.len());
    let mut seen = vec![false; arcs.len()];
    for j in 0..n {
        for (arc, value) in [
            (Arc::new(x(j), x(j + 1)), a[j]),
            (Arc::new(x(j + 1), x(j)), b[j]),
        ] {
            let mut idx = arcs.index_of(arc).ok_or(Error::UnknownArc(arc))?;
            let mut v = value;
            for _ in 0..3 {
                if std::mem::replace(&mut seen[idx], true) {
                    return Err(Error::InvalidInput(
                        "partition has a triangle with two cycle arcs".into(),
                    ));
                }
                psi[idx] = v;
                idx = tau_inv.apply(idx);
                v *= wk;
            }
        }
    }
    Ok(psi)
}

/// A birth eigenvector of `U_c` on `Γₙ` with the canonical partition; for
/// `Fourier { k, .. }` and `EvenExtra` it satisfies `U_c Ψ = −ω^k Ψ`.
pub fn double_cone_birth_vector(n: usize, recipe: BirthRecipe) -> Result<DVector<Complex64>> {
    let (_, pi) = canonical_double_cone_partition(n)?;
    let (a, b) = birth_cycle_values(n, recipe)?;
    complete_birth_vector(&pi, n, recipe.k(), &a, &b)
}

/// Every closed-form vector of `B_{−ω^k}` on `Γₙ`: `l = 1..n`, plus the
/// alternating vector when `k = 0` and `n` is even.
pub fn double_cone_birth_vectors(n: usize, k: usize) -> Result<Vec<DVector<Complex64>>> {
    let (_, pi) = canonical_double_cone_partition(n)?;
    let mut recipes: Vec<BirthRecipe> = (1..n).map(|l| BirthRecipe::Fourier { k, l }).collect();
    if k == 0 && n.is_multiple_of(2) {
        recipes.push(BirthRecipe::EvenExtra);
    }
    recipes
        .into_iter()
        .map(|r| {
            let (a, b) = birth_cycle_values(n, r)?;
            complete_birth_vector(&pi, n, k, &a, &b)
        })
        .collect()
}

/// Full dense eigendecomposition of `U_c`, with no reference to `T`.
pub fn brute_force_spectrum(
    g: &Graph,
    pi: &TrianglePartition,
    max_dim: usize,
) -> Result<UnitaryEig> {
    if g.n_arcs() > max_dim {
        return Err(Error::DimensionCap {
            dim: g.n_arcs(),
            cap: max_dim,
        });
    }
    let ops = OperatorSet::build(g, pi)?;
    eig_unitary(&to_complex(&ops.u_c), 1e-9)
}
