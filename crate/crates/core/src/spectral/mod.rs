//! Spectra of `U_c` and `U`: prediction from `σ(T)`, direct computation,
//! and the comparison between the two.
//!
//! For a triangulable graph with partition `π`,
//!
//! ```text
//! σ(U_c) = { e^{±iΘ_λ} : λ ∈ σ(T) \ {1} } ⊎ {1}^|V| ⊎ {−1}^M₋₁ ⊎ {−ω}^M₋ω ⊎ {−ω²}^M₋ω²
//! Θ_λ = arccos(λ − ½),  M₋₁ = ⅔|E| − |V| + b,  M₋ω = M₋ω² = ⅔|E| − |V| + 1
//! ```
//!
//! with `b = dim ker(T + ½)`. At `λ = −½` both branches land on `−1`; that
//! eigenvalue is counted once per eigenvector of `T`, which is what makes the
//! multiplicities add up to `2|E|`.

pub mod eigen;
pub mod eigenspaces;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::operators::{build_grover, build_t, OperatorSet};
use crate::triangulation::TrianglePartition;

pub use eigen::{eig_symmetric, eig_unitary, kernel, rank, SymmetricEig, UnitaryEig};
pub use eigenspaces::{
    birth_basis, birth_minus1_from_ker_r, inherited_eigenvectors, EigenKind, EigenPair, EigenSpace,
};

/// `ω = e^{2πi/3}`.
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// The birth eigenvalue `−ω^k`.
pub fn birth_eigenvalue(k: usize) -> Complex64 {
    -omega().powu(k as u32)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Pairing error allowed between predicted and computed eigenvalues.
    pub tol: f64,
    /// Eigenvalues closer than this are one cluster.
    pub cluster_tol: f64,
    /// Relative singular-value threshold for rank and null spaces.
    pub rank_tol: f64,
    /// Eigenpair residual bound, relative to `‖v‖`.
    pub residual_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol: 1e-9,
            cluster_tol: 1e-7,
            rank_tol: 1e-9,
            residual_tol: 1e-9,
        }
    }
}

/// One distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl SpectralPoint {
    pub fn new(value: Complex64, mult: usize) -> Self {
        SpectralPoint {
            re: value.re,
            im: value.im,
            mult,
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A cluster of nearby eigenvalues and the values it absorbed.
#[derive(Debug, Clone)]
pub struct Cluster {
    pub center: Complex64,
    pub members: Vec<(Complex64, usize)>,
}

impl Cluster {
    pub fn mult(&self) -> usize {
        self.members.iter().map(|&(_, m)| m).sum()
    }

    pub fn point(&self) -> SpectralPoint {
        SpectralPoint::new(self.center, self.mult())
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groups weighted values into clusters: the transitive closure of
/// `|zᵢ − zⱼ| ≤ tol`. Centers are multiplicity-weighted means; clusters are
/// sorted by `(Re, Im)` of their centers.
pub fn cluster(values: &[(Complex64, usize)], tol: f64) -> Vec<Cluster> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (values[i].0 - values[j].0).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let root = find(&mut parent, i);
        groups[root].push(i);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let members: Vec<(Complex64, usize)> = g.iter().map(|&i| values[i]).collect();
            let weight: usize = members.iter().map(|&(_, m)| m).sum();
            let sum: Complex64 = members.iter().map(|&(z, m)| z * m as f64).sum();
            Cluster {
                center: sum / weight.max(1) as f64,
                members,
            }
        })
        .collect();
    clusters.sort_by(|a, b| cmp_complex(&a.center, &b.center));
    clusters
}

fn check_sigma_range(sigma_t: &[f64], lo: f64, hi: f64) -> Result<()> {
    if let Some(&bad) = sigma_t.iter().find(|&&l| !(lo..=hi).contains(&l)) {
        return Err(Error::InvalidInput(format!(
            "eigenvalue {bad} of T outside [{lo}, {hi}]"
        )));
    }
    Ok(())
}

fn count_near(sigma_t: &[f64], target: f64, tol: f64) -> usize {
    sigma_t
        .iter()
        .filter(|&&l| (l - target).abs() <= tol)
        .count()
}

/// Predicted `σ(U_c)` from `σ(T)` for a triangulable graph.
///
/// `b` must equal the number of entries of `sigma_t` within `cluster_tol` of
/// `−½`.
pub fn predict_spectrum_new(
    sigma_t: &[f64],
    n_vertices: usize,
    n_edges: usize,
    b: usize,
    tols: &Tolerances,
) -> Result<Vec<SpectralPoint>> {
    let near = tols.cluster_tol;
    check_sigma_range(sigma_t, -0.5 - near, 1.0 + near)?;
    if !(2 * n_edges).is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "2|E| = {} is not divisible by 3",
            2 * n_edges
        )));
    }
    let counted = count_near(sigma_t, -0.5, near);
    if counted != b {
        return Err(Error::InvalidInput(format!(
            "b = {b} but σ(T) has {counted} eigenvalues at −1/2"
        )));
    }
    let base = (2 * n_edges / 3) as i64 - n_vertices as i64;
    let m_minus1 = base + b as i64;
    let m_omega = base + 1;
    if m_minus1 < 0 || m_omega < 0 {
        return Err(Error::InvalidInput(format!(
            "negative birth multiplicity ({m_minus1}, {m_omega})"
        )));
    }

    let mut points: Vec<(Complex64, usize)> = Vec::with_capacity(sigma_t.len() + 5);
    for &lambda in sigma_t {
        if (lambda - 1.0).abs() <= near {
            continue;
        }
        if (lambda + 0.5).abs() <= near {
            points.push((Complex64::new(-1.0, 0.0), 1));
            continue;
        }
        let theta = (lambda - 0.5).clamp(-1.0, 1.0).acos();
        points.push((Complex64::from_polar(1.0, theta), 1));
        points.push((Complex64::from_polar(1.0, -theta), 1));
    }
    points.push((Complex64::new(1.0, 0.0), n_vertices));
    points.push((Complex64::new(-1.0, 0.0), m_minus1 as usize));
    points.push((birth_eigenvalue(1), m_omega as usize));
    points.push((birth_eigenvalue(2), m_omega as usize));
    points.retain(|&(_, m)| m > 0);
    Ok(cluster(&points, tols.cluster_tol)
        .iter()
        .map(Cluster::point)
        .collect())
}

/// Predicted `σ(U)` of the Grover walk from `σ(T)`: lifts `e^{±i arccos λ}`,
/// with `λ = ±1` contributing a single eigenvalue, plus
/// `{1}^{|E|−|V|+1} ⊎ {−1}^{|E|−|V|+dim ker(T+1)}`.
pub fn predict_spectrum_conventional(
    sigma_t: &[f64],
    n_vertices: usize,
    n_edges: usize,
    tols: &Tolerances,
) -> Result<Vec<SpectralPoint>> {
    let near = tols.cluster_tol;
    check_sigma_range(sigma_t, -1.0 - near, 1.0 + near)?;
    let bipartite_dim = count_near(sigma_t, -1.0, near);
    let base = n_edges as i64 - n_vertices as i64;
    let m_plus = base + 1;
    let m_minus = base + bipartite_dim as i64;
    if m_plus < 0 || m_minus < 0 {
        return Err(Error::InvalidInput("disconnected graph".into()));
    }
    let mut points: Vec<(Complex64, usize)> = Vec::new();
    for &lambda in sigma_t {
        if (lambda - 1.0).abs() <= near {
            points.push((Complex64::new(1.0, 0.0), 1));
        } else if (lambda + 1.0).abs() <= near {
            points.push((Complex64::new(-1.0, 0.0), 1));
        } else {
            let theta = lambda.clamp(-1.0, 1.0).acos();
            points.push((Complex64::from_polar(1.0, theta), 1));
            points.push((Complex64::from_polar(1.0, -theta), 1));
        }
    }
    points.push((Complex64::new(1.0, 0.0), m_plus as usize));
    points.push((Complex64::new(-1.0, 0.0), m_minus as usize));
    points.retain(|&(_, m)| m > 0);
    Ok(cluster(&points, tols.cluster_tol)
        .iter()
        .map(Cluster::point)
        .collect())
}

/// Predicted against computed spectrum of one unitary.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub computed: Vec<SpectralPoint>,
    pub predicted: Vec<SpectralPoint>,
    pub matched: bool,
    pub max_pairing_error: f64,
    pub residual_max: f64,
    /// Total computed and predicted multiplicities.
    #[serde(skip)]
    pub totals: (usize, usize),
}

/// Clusters the computed eigenvalues and pairs each predicted cluster with
/// the nearest unused computed cluster, in `(Re, Im)` order.
pub fn compare_spectra(
    computed: &[Complex64],
    predicted: Vec<SpectralPoint>,
    residual_max: f64,
    tols: &Tolerances,
) -> SpectrumReport {
    let weighted: Vec<(Complex64, usize)> = computed.iter().map(|&z| (z, 1)).collect();
    let clusters = cluster(&weighted, tols.cluster_tol);
    let mut used = vec![false; clusters.len()];
    let mut matched = clusters.len() == predicted.len();
    let mut max_err = 0.0f64;
    for p in &predicted {
        let target = p.value();
        let nearest = (0..clusters.len()).filter(|&i| !used[i]).min_by(|&i, &j| {
            (clusters[i].center - target)
                .norm()
                .total_cmp(&(clusters[j].center - target).norm())
        });
        match nearest {
            Some(i) => {
                used[i] = true;
                let err = clusters[i]
                    .members
                    .iter()
                    .map(|&(z, _)| (z - target).norm())
                    .fold(0.0, f64::max);
                max_err = max_err.max(err);
                matched &= clusters[i].mult() == p.mult;
            }
            None => {
                matched = false;
                max_err = f64::INFINITY;
            }
        }
    }
    let totals = (
        computed.len(),
        predicted.iter().map(|p| p.mult).sum::<usize>(),
    );
    matched &= max_err <= tols.tol && totals.0 == totals.1;
    SpectrumReport {
        computed: clusters.iter().map(Cluster::point).collect(),
        predicted,
        matched,
        max_pairing_error: max_err,
        residual_max,
        totals,
    }
}

/// `σ(T)` ascending.
pub fn discriminant_spectrum(g: &Graph, tols: &Tolerances) -> Result<Vec<f64>> {
    Ok(eig_symmetric(&build_t(g), tols.residual_tol)?.values)
}

/// `dim ker(T + ½)` by rank thresholding.
pub fn half_kernel_dim(t: &nalgebra::DMatrix<f64>, tols: &Tolerances) -> usize {
    let n = t.nrows();
    kernel(
        &(t + nalgebra::DMatrix::identity(n, n) * 0.5),
        tols.rank_tol,
    )
    .ncols()
}

/// Computes `σ(U_c)` directly and compares it with the prediction from `σ(T)`.
pub fn verify_mapping(
    g: &Graph,
    pi: &TrianglePartition,
    tols: &Tolerances,
) -> Result<SpectrumReport> {
    let ops = OperatorSet::build(g, pi)?;
    verify_operators(&ops, tols)
}

pub fn verify_operators(ops: &OperatorSet, tols: &Tolerances) -> Result<SpectrumReport> {
    let direct = eig_unitary(&eigen::to_complex(&ops.u_c), tols.residual_tol)?;
    let sigma_t = eig_symmetric(&ops.t, tols.residual_tol)?.values;
    let b = half_kernel_dim(&ops.t, tols);
    let predicted = predict_spectrum_new(&sigma_t, ops.n_vertices(), ops.n_edges, b, tols)?;
    Ok(compare_spectra(
        &direct.values,
        predicted,
        direct.residual,
        tols,
    ))
}

/// The same protocol for the Grover walk `U`, which needs no partition.
pub fn verify_conventional(g: &Graph, tols: &Tolerances) -> Result<SpectrumReport> {
    let u = build_grover(g);
    let direct = eig_unitary(&eigen::to_complex(&u), tols.residual_tol)?;
    let sigma_t = discriminant_spectrum(g, tols)?;
    let predicted = predict_spectrum_conventional(&sigma_t, g.n_vertices(), g.n_edges(), tols)?;
    Ok(compare_spectra(
        &direct.values,
        predicted,
        direct.residual,
        tols,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_cycle, gen_double_cone};
    use crate::triangulation::{canonical_double_cone_partition, find_partition};

    fn mult_at(points: &[SpectralPoint], z: Complex64) -> usize {
        points
            .iter()
            .find(|p| (p.value() - z).norm() < 1e-9)
            .map_or(0, |p| p.mult)
    }

    #[test]
    fn clustering_is_transitive() {
        let pts = [
            (Complex64::new(0.0, 0.0), 1),
            (Complex64::new(0.6e-7, 0.0), 1),
            (Complex64::new(1.2e-7, 0.0), 1),
            (Complex64::new(1.0, 0.0), 2),
        ];
        let cs = cluster(&pts, 1e-7);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].mult(), 3);
        assert_eq!(cs[1].mult(), 2);
    }

    #[test]
    fn predicted_k4() {
        let sigma = [-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0];
        let tols = Tolerances::default();
        let p = predict_spectrum_new(&sigma, 4, 6, 0, &tols).unwrap();
        let theta = (-5.0f64 / 6.0).acos();
        assert_eq!(mult_at(&p, Complex64::from_polar(1.0, theta)), 3);
        assert_eq!(mult_at(&p, Complex64::from_polar(1.0, -theta)), 3);
        assert_eq!(mult_at(&p, Complex64::new(1.0, 0.0)), 4);
        assert_eq!(mult_at(&p, Complex64::new(-1.0, 0.0)), 0);
        assert_eq!(mult_at(&p, birth_eigenvalue(1)), 1);
        assert_eq!(mult_at(&p, birth_eigenvalue(2)), 1);
        assert_eq!(p.iter().map(|x| x.mult).sum::<usize>(), 12);
    }

    #[test]
    fn predicted_half_maps_to_plus_minus_i() {
        let tols = Tolerances::default();
        // synthetic input: only the lift is inspected
        let p = predict_spectrum_new(&[0.5, 1.0], 2, 3, 0, &tols).unwrap();
        assert_eq!(mult_at(&p, Complex64::new(0.0, 1.0)), 1);
        assert_eq!(mult_at(&p, Complex64::new(0.0, -1.0)), 1);
    }

    #[test]
    fn predicted_gamma3_birth_counts() {
        let tols = Tolerances::default();
        let sigma = [-0.5, -0.25, -0.25, 0.0, 1.0];
        let p = predict_spectrum_new(&sigma, 5, 9, 1, &tols).unwrap();
        // −1: one inherited plus M₋₁ = 6 − 5 + 1 = 2 births
        assert_eq!(mult_at(&p, Complex64::new(-1.0, 0.0)), 3);
        assert_eq!(mult_at(&p, birth_eigenvalue(1)), 2);
        assert_eq!(mult_at(&p, birth_eigenvalue(2)), 2);
        assert_eq!(p.iter().map(|x| x.mult).sum::<usize>(), 18);
    }

    #[test]
    fn prediction_rejects_bad_input() {
        let tols = Tolerances::default();
        assert!(predict_spectrum_new(&[-0.9, 1.0], 2, 3, 0, &tols).is_err());
        assert!(predict_spectrum_new(&[1.0], 2, 2, 0, &tols).is_err());
        assert!(predict_spectrum_new(&[-0.5, 1.0], 2, 3, 0, &tols).is_err());
        assert!(predict_spectrum_conventional(&[-1.5, 1.0], 2, 1, &tols).is_err());
    }

    #[test]
    fn conventional_small_cases() {
        let tols = Tolerances::default();
        let p = predict_spectrum_conventional(&[-1.0, 1.0], 2, 1, &tols).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(mult_at(&p, Complex64::new(1.0, 0.0)), 1);
        assert_eq!(mult_at(&p, Complex64::new(-1.0, 0.0)), 1);
        // C₄: σ(T) = {−1, 0, 0, 1}
        let p = predict_spectrum_conventional(&[-1.0, 0.0, 0.0, 1.0], 4, 4, &tols).unwrap();
        assert_eq!(mult_at(&p, Complex64::new(-1.0, 0.0)), 2);
        assert_eq!(mult_at(&p, Complex64::new(1.0, 0.0)), 2);
        assert_eq!(mult_at(&p, Complex64::new(0.0, 1.0)), 2);
    }

    #[test]
    fn verify_k4_and_cones() {
        let tols = Tolerances::default();
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        let report = verify_mapping(&g, &pi, &tols).unwrap();
        assert!(report.matched, "{report:?}");
        assert!(report.max_pairing_error <= 1e-9);
        assert_eq!(report.totals, (12, 12));
        for n in 3..=8 {
            let (g, pi) = canonical_double_cone_partition(n).unwrap();
            let report = verify_mapping(&g, &pi, &tols).unwrap();
            assert!(report.matched, "n = {n}: {report:?}");
        }
    }

    #[test]
    fn verify_conventional_cases() {
        let tols = Tolerances::default();
        for g in [
            gen_complete(4).unwrap(),
            gen_cycle(4).unwrap(),
            gen_double_cone(3).unwrap(),
        ] {
            let report = verify_conventional(&g, &tols).unwrap();
            assert!(report.matched, "{report:?}");
        }
        // K₄: U has 1 with multiplicity |E| − |V| + 2 = 4 and −1 with |E| − |V| = 2
        let report = verify_conventional(&gen_complete(4).unwrap(), &tols).unwrap();
        assert_eq!(mult_at(&report.computed, Complex64::new(1.0, 0.0)), 4);
        assert_eq!(mult_at(&report.computed, Complex64::new(-1.0, 0.0)), 2);
    }

    #[test]
    fn mismatch_is_detected() {
        let tols = Tolerances::default();
        let computed = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let wrong = vec![SpectralPoint::new(Complex64::new(1.0, 0.0), 2)];
        assert!(!compare_spectra(&computed, wrong, 0.0, &tols).matched);
        let shifted = vec![
            SpectralPoint::new(Complex64::new(1.0, 0.0), 1),
            SpectralPoint::new(Complex64::new(-1.0, 1e-6), 1),
        ];
        let report = compare_spectra(&computed, shifted, 0.0, &tols);
        assert!(!report.matched);
        assert!(report.max_pairing_error > 1e-9);
    }

    #[test]
    fn report_json_shape() {
        let tols = Tolerances::default();
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        let report = verify_mapping(&g, &pi, &tols).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&crate::format::to_json_string(&report).unwrap()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "computed",
                "matched",
                "max_pairing_error",
                "predicted",
                "residual_max"
            ]
        );
        assert!(v["computed"][0]["mult"].is_u64());
    }
}
