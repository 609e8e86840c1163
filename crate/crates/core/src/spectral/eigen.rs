//! Dense eigensolvers and null spaces. Symmetric problems, SVDs and kernels
//! use nalgebra; the unitary eigenproblem uses faer, whose QR iteration does
//! not stall on the highly degenerate spectra of walk operators.

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Symmetry tolerance for [`eig_symmetric`] inputs.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Unitarity tolerance for [`eig_unitary`] inputs.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SymmetricEig {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    /// `max_i ‖M vᵢ − λᵢ vᵢ‖`.
    pub residual: f64,
}

/// Eigenpairs of a unitary matrix, sorted by `(Re, Im)`.
#[derive(Debug, Clone)]
pub struct UnitaryEig {
    pub values: Vec<Complex64>,
    pub vectors: DMatrix<Complex64>,
    pub residual: f64,
}

fn ensure_square<T>(m: &DMatrix<T>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

pub fn eig_symmetric(m: &DMatrix<f64>, tol: f64) -> Result<SymmetricEig> {
    ensure_square(m)?;
    let asymmetry = if m.is_empty() {
        0.0
    } else {
        (m - m.transpose()).amax()
    };
    if asymmetry > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let n = m.nrows();
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);

    let mut residual = 0.0f64;
    for (c, &lambda) in values.iter().enumerate() {
        let v = vectors.column(c);
        residual = residual.max((m * v - v * lambda).norm());
    }
    let orth = if n == 0 {
        0.0
    } else {
        (vectors.transpose() * &vectors - DMatrix::identity(n, n)).amax()
    };
    if residual > tol || orth > tol {
        return Err(Error::Numerical(format!(
            "symmetric eigensolver residual {residual:e}, orthogonality {orth:e} above {tol:e}"
        )));
    }
    Ok(SymmetricEig {
        values,
        vectors,
        residual,
    })
}

pub fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// `max |M*M − I|`.
pub fn unitarity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - DMatrix::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues closer than this share an eigenspace when orthonormalizing.
const DEGENERACY_TOL: f64 = 1e-7;

/// Index sets of values linked by chains of steps at most `DEGENERACY_TOL`.
fn degenerate_groups(values: &[Complex64]) -> Vec<Vec<usize>> {
    let mut group = vec![usize::MAX; values.len()];
    let mut groups = Vec::new();
    for seed in 0..values.len() {
        if group[seed] != usize::MAX {
            continue;
        }
        let id = groups.len();
        group[seed] = id;
        let mut members = vec![seed];
        let mut next = 0;
        while next < members.len() {
            let i = members[next];
            next += 1;
            for j in 0..values.len() {
                if group[j] == usize::MAX && (values[j] - values[i]).norm() <= DEGENERACY_TOL {
                    group[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    groups
}

/// Eigendecomposition of a unitary matrix. Eigenvectors of each degenerate
/// cluster are orthonormalized, so `vectors` is unitary.
pub fn eig_unitary(m: &DMatrix<Complex64>, tol: f64) -> Result<UnitaryEig> {
    ensure_square(m)?;
    let deviation = unitarity_defect(m);
    if deviation > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(UnitaryEig {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            residual: 0.0,
        });
    }
    let a = faer::Mat::<Complex64>::from_fn(n, n, |i, j| m[(i, j)]);
    let evd = a
        .eigen()
        .map_err(|e| Error::Numerical(format!("unitary eigensolver failed: {e:?}")))?;
    let (s, u) = (evd.S(), evd.U());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        s[i].re
            .total_cmp(&s[j].re)
            .then(s[i].im.total_cmp(&s[j].im))
    });
    let values: Vec<Complex64> = order.iter().map(|&i| s[i]).collect();
    let mut vectors = DMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);

    for members in degenerate_groups(&values) {
        let block = DMatrix::from_fn(n, members.len(), |r, c| vectors[(r, members[c])]);
        let q = block.qr().q();
        for (c, &col) in members.iter().enumerate() {
            vectors.set_column(col, &q.column(c));
        }
    }

    let mut residual = 0.0f64;
    let mut modulus = 0.0f64;
    for (c, &lambda) in values.iter().enumerate() {
        let v = vectors.column(c);
        residual = residual.max((m * v - v * lambda).norm() / v.norm());
        modulus = modulus.max((lambda.norm() - 1.0).abs());
    }
    if residual > tol || modulus > tol {
        return Err(Error::Numerical(format!(
            "unitary eigensolver residual {residual:e}, modulus defect {modulus:e} above {tol:e}"
        )));
    }
    Ok(UnitaryEig {
        values,
        vectors,
        residual,
    })
}

/// Full SVD of `m` with `V` square: short-and-wide inputs are padded with
/// zero rows so nalgebra's thin SVD still returns every right singular vector.
fn full_svd<T>(m: &DMatrix<T>) -> (Vec<f64>, DMatrix<T>)
where
    T: ComplexField<RealField = f64>,
{
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let sigma = svd.singular_values.iter().copied().collect();
    (sigma, svd.v_t.expect("V requested"))
}

/// Number of singular values above `tol · σ_max`.
pub fn rank<T>(m: &DMatrix<T>, tol: f64) -> usize
where
    T: ComplexField<RealField = f64>,
{
    if m.is_empty() {
        return 0;
    }
    let (sigma, _) = full_svd(m);
    let max = sigma.iter().copied().fold(0.0, f64::max);
    sigma.iter().filter(|&&s| s > tol * max && s > 0.0).count()
}

/// Orthonormal basis (as columns) of the null space of `m`; singular values
/// at or below `tol · σ_max` count as zero.
pub fn kernel<T>(m: &DMatrix<T>, tol: f64) -> DMatrix<T>
where
    T: ComplexField<RealField = f64>,
{
    let c = m.ncols();
    if c == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(c, c);
    }
    let (sigma, v_t) = full_svd(m);
    let max = sigma.iter().copied().fold(0.0, f64::max);
    let null: Vec<usize> = (0..sigma.len())
        .filter(|&i| sigma[i] <= tol * max || sigma[i] == 0.0)
        .collect();
    let mut basis = DMatrix::zeros(c, null.len());
    for (k, &i) in null.iter().enumerate() {
        basis.set_column(k, &v_t.row(i).adjoint());
    }
    basis
}

/// Orthonormal basis of the span of the columns of `m`.
pub fn column_space<T>(m: &DMatrix<T>, tol: f64) -> DMatrix<T>
where
    T: ComplexField<RealField = f64>,
{
    if m.is_empty() {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = SVD::new(m.clone(), true, false);
    let u = svd.u.expect("U requested");
    let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol * max && svd.singular_values[i] > 0.0)
        .collect();
    let mut basis = DMatrix::zeros(m.nrows(), keep.len());
    for (k, &i) in keep.iter().enumerate() {
        basis.set_column(k, &u.column(i));
    }
    basis
}

/// Smallest singular value of `m` (zero for an empty column set).
pub fn min_singular_value<T>(m: &DMatrix<T>) -> f64
where
    T: ComplexField<RealField = f64>,
{
    if m.ncols() == 0 {
        return 0.0;
    }
    let (sigma, _) = full_svd(m);
    // padded rows add zeros only when rows < cols, i.e. when rank-deficient anyway
    sigma.into_iter().fold(f64::INFINITY, f64::min)
}

/// Largest principal angle between the column spans of two orthonormal
/// bases of equal dimension.
pub fn max_principal_angle(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    if a.ncols() != b.ncols() {
        return std::f64::consts::FRAC_PI_2;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    // sine form keeps small angles accurate
    let residual = b - a * (a.adjoint() * b);
    let svd = SVD::new(residual, false, false);
    let max_sin = svd.singular_values.iter().copied().fold(0.0, f64::max);
    max_sin.clamp(0.0, 1.0).asin()
}

/// `‖v − QQ*v‖` for an orthonormal `Q`.
pub fn distance_to_span(q: &DMatrix<Complex64>, v: &DVector<Complex64>) -> f64 {
    (v - q * (q.adjoint() * v)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn degenerate_walk_operator_after_relabelling() {
        // this labelling of the five-cycle double cone stalls a plain shifted QR
        use crate::graph::{gen_double_cone, Graph};
        use crate::operators::OperatorSet;
        use crate::triangulation::find_partition;
        let perm = [3, 2, 6, 0, 5, 1, 4];
        let g = gen_double_cone(5).unwrap();
        let h = Graph::new(7, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let pi = find_partition(&h, None).unwrap();
        let u = to_complex(&OperatorSet::build(&h, &pi).unwrap().u_c);
        let eig = eig_unitary(&u, 1e-9).unwrap();
        assert_eq!(eig.values.len(), 30);
        assert!(eig.residual <= 1e-12);
        let defect = unitarity_defect(&eig.vectors);
        assert!(defect <= 1e-12, "{defect:e} {:?}", eig.values);
    }

    #[test]
    fn symmetric_k4_discriminant() {
        // A(K₄) = J − I has spectrum {3, −1, −1, −1}
        let t = DMatrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 1.0 / 3.0 });
        let eig = eig_symmetric(&t, 1e-12).unwrap();
        let expected = [-1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0];
        for (got, want) in eig.values.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn symmetric_trivial_and_errors() {
        let eig = eig_symmetric(&DMatrix::identity(3, 3), 1e-12).unwrap();
        assert_eq!(eig.values, vec![1.0; 3]);
        let eig = eig_symmetric(&DMatrix::zeros(3, 3), 1e-12).unwrap();
        assert_eq!(eig.values, vec![0.0; 3]);
        let skew = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            eig_symmetric(&skew, 1e-12),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            eig_symmetric(&DMatrix::zeros(2, 3), 1e-12),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn unitary_swap() {
        let s = to_complex(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let eig = eig_unitary(&s, 1e-12).unwrap();
        assert_abs_diff_eq!(eig.values[0].re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1].re, 1.0, epsilon = 1e-14);
        let eig = eig_unitary(&to_complex(&DMatrix::identity(4, 4)), 1e-12).unwrap();
        assert!(eig.values.iter().all(|z| (z - 1.0).norm() < 1e-14));
        let not_unitary = to_complex(&(DMatrix::identity(2, 2) * 2.0));
        assert!(matches!(
            eig_unitary(&not_unitary, 1e-12),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn unitary_two_three_cycles() {
        // two disjoint 3-cycles: {1, ω, ω²} twice
        let mut p = DMatrix::zeros(6, 6);
        for (b, a) in [1, 2, 0, 4, 5, 3].into_iter().enumerate() {
            p[(a, b)] = 1.0;
        }
        let eig = eig_unitary(&to_complex(&p), 1e-12).unwrap();
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expected = [
            omega.conj(),
            omega.conj(),
            omega,
            omega,
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        // sorted by (Re, Im): ω² and ω share Re = −½, ω² has negative Im
        for (got, want) in eig.values.iter().zip(expected) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel(&DMatrix::<f64>::identity(3, 3), 1e-9).ncols(), 0);
        assert_eq!(kernel(&DMatrix::<f64>::zeros(3, 3), 1e-9).ncols(), 3);
        // wide matrix: [1 1 1] has a 2-dimensional kernel
        let wide = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let k = kernel(&wide, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!((&wide * &k).amax() < 1e-14);
        assert_eq!(rank(&wide, 1e-9), 1);
    }

    proptest! {
        #[test]
        fn kernel_plus_rank_is_width(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-3i32..=3, 36)) {
            let m = DMatrix::from_fn(rows, cols, |i, j| f64::from(seed[i * 6 + j]));
            let k = kernel(&m, 1e-9);
            prop_assert_eq!(k.ncols() + rank(&m, 1e-9), cols);
            if k.ncols() > 0 {
                let scale = m.amax().max(1.0);
                prop_assert!((&m * &k).amax() <= 1e-9 * scale);
                let gram = k.transpose() * &k;
                prop_assert!((gram - DMatrix::identity(k.ncols(), k.ncols())).amax() < 1e-10);
            }
        }

        #[test]
        fn symmetric_residuals(seed in proptest::collection::vec(-5.0f64..5.0, 25)) {
            let a = DMatrix::from_row_slice(5, 5, &seed);
            let m = &a + a.transpose();
            let eig = eig_symmetric(&m, 1e-9).unwrap();
            prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!((eig.values.iter().sum::<f64>() - m.trace()).abs() < 1e-9);
        }
    }
}
