//! Steklov spectrum of a finite graph with boundary.
//!
//! The spectrum is that of the Dirichlet-to-Neumann map `Λ f = ∂(Hf)/∂n`,
//! where `Hf` is the harmonic extension of `f` from the boundary. `Λ` is the
//! Schur complement of the interior block of the graph Laplacian:
//!
//! ```text
//! Λ = D_B - A_BI · L_II⁻¹ · A_IB
//! ```
//!
//! One interior factorization serves every boundary column. The min-max
//! oracle solves the generalized problem on all of ℝ^V instead and never
//! forms `Λ`.

use std::ops::Deref;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GraphWithBoundary, Violation};
use crate::linalg::{conjugate_gradient, jacobi_eigen, norm_inf, Cholesky, DenseMatrix};

/// Largest interior handled by the dense Cholesky route.
pub const DENSE_INTERIOR_CAP: usize = 4000;

/// Largest graph accepted by [`minmax_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Interiors above this size are solved by conjugate gradients.
    pub dense_interior_cap: usize,
    /// Relative off-diagonal Frobenius tolerance of the Jacobi eigensolver.
    pub eigen_tol: f64,
    /// Relative residual for the iterative interior solve.
    pub cg_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { dense_interior_cap: DENSE_INTERIOR_CAP, eigen_tol: 1e-12, cg_tol: 1e-12 }
    }
}

/// A real function on the vertices of the graph, indexed like the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction(pub Vec<f64>);

/// A real function on the boundary, indexed like [`GraphWithBoundary::boundary`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction(pub Vec<f64>);

impl Deref for VertexFunction {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for BoundaryFunction {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

fn require_valid(g: &GraphWithBoundary) -> Result<()> {
    let v = g.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidGraph(v))
    }
}

/// `(Δv)(i) = Σ_{j∼i} (v(i) − v(j))`.
pub fn laplacian_apply(g: &GraphWithBoundary, v: &VertexFunction) -> Result<VertexFunction> {
    check_len(g.len(), v.len())?;
    Ok(VertexFunction((0..g.len()).map(|i| g.neighbors(i).iter().map(|&j| v[i] - v[j]).sum()).collect()))
}

/// `(∂v/∂n)(i) = Σ_{j∈B^c, j∼i} (v(i) − v(j))` for `i ∈ B`.
pub fn normal_derivative(g: &GraphWithBoundary, v: &VertexFunction) -> Result<BoundaryFunction> {
    check_len(g.len(), v.len())?;
    Ok(BoundaryFunction(
        g.boundary()
            .iter()
            .map(|&i| g.neighbors(i).iter().filter(|&&j| !g.is_boundary(j)).map(|&j| v[i] - v[j]).sum())
            .collect(),
    ))
}

/// Solver for the interior Laplacian block `L_II`.
enum InteriorSolver<'g> {
    Empty,
    Dense(Cholesky),
    Iterative { g: &'g GraphWithBoundary, pos: Vec<usize>, tol: f64 },
}

impl<'g> InteriorSolver<'g> {
    fn new(g: &'g GraphWithBoundary, opts: &SolverOptions) -> Result<Self> {
        let interior = g.interior();
        let m = interior.len();
        if m == 0 {
            return Ok(InteriorSolver::Empty);
        }
        let mut pos = vec![usize::MAX; g.len()];
        for (k, &i) in interior.iter().enumerate() {
            pos[i] = k;
        }
        if m > opts.dense_interior_cap {
            return Ok(InteriorSolver::Iterative { g, pos, tol: opts.cg_tol });
        }
        let mut l = DenseMatrix::zeros(m, m);
        for (k, &i) in interior.iter().enumerate() {
            l[(k, k)] = g.degree(i) as f64;
            for &j in g.neighbors(i) {
                if pos[j] != usize::MAX {
                    l[(k, pos[j])] -= 1.0;
                }
            }
        }
        // Positive definite for a connected graph with nonempty boundary.
        Ok(InteriorSolver::Dense(Cholesky::factor(&l)?))
    }

    fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        match self {
            InteriorSolver::Empty => Ok(Vec::new()),
            InteriorSolver::Dense(ch) => Ok(ch.solve(rhs)),
            InteriorSolver::Iterative { g, pos, tol } => {
                let interior = g.interior();
                let apply = |x: &[f64]| -> Vec<f64> {
                    interior
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| {
                            let mut s = g.degree(i) as f64 * x[k];
                            for &j in g.neighbors(i) {
                                if pos[j] != usize::MAX {
                                    s -= x[pos[j]];
                                }
                            }
                            s
                        })
                        .collect()
                };
                conjugate_gradient(apply, rhs, *tol, 20 * interior.len() + 100)
            }
        }
    }
}

/// Harmonic extension of boundary data: interior values of the extension of
/// each boundary indicator, as an `|I| × |B|` matrix.
fn extension_operator(g: &GraphWithBoundary, solver: &InteriorSolver) -> Result<DenseMatrix> {
    let interior = g.interior();
    let boundary = g.boundary();
    let mut pos = vec![usize::MAX; g.len()];
    for (k, &i) in interior.iter().enumerate() {
        pos[i] = k;
    }
    let mut h = DenseMatrix::zeros(interior.len(), boundary.len());
    let mut rhs = vec![0.0; interior.len()];
    for (col, &b) in boundary.iter().enumerate() {
        rhs.iter_mut().for_each(|x| *x = 0.0);
        for &i in g.neighbors(b) {
            rhs[pos[i]] = 1.0;
        }
        let x = solver.solve(&rhs)?;
        for (k, v) in x.into_iter().enumerate() {
            h[(k, col)] = v;
        }
    }
    Ok(h)
}

fn assemble_extension(g: &GraphWithBoundary, interior_values: &[f64], f: &[f64]) -> VertexFunction {
    let mut v = vec![0.0; g.len()];
    for (k, &i) in g.interior().iter().enumerate() {
        v[i] = interior_values[k];
    }
    for (k, &b) in g.boundary().iter().enumerate() {
        v[b] = f[k];
    }
    VertexFunction(v)
}

/// The unique `v` with `v|_B = f` and `Δv = 0` off the boundary.
pub fn harmonic_extension(g: &GraphWithBoundary, f: &BoundaryFunction) -> Result<VertexFunction> {
    harmonic_extension_with(g, f, &SolverOptions::default())
}

pub fn harmonic_extension_with(
    g: &GraphWithBoundary,
    f: &BoundaryFunction,
    opts: &SolverOptions,
) -> Result<VertexFunction> {
    require_valid(g)?;
    check_len(g.boundary().len(), f.len())?;
    let solver = InteriorSolver::new(g, opts)?;
    let interior = g.interior();
    let mut bval = vec![0.0; g.len()];
    for (k, &b) in g.boundary().iter().enumerate() {
        bval[b] = f[k];
    }
    let rhs: Vec<f64> = interior
        .iter()
        .map(|&i| g.neighbors(i).iter().filter(|&&j| g.is_boundary(j)).map(|&j| bval[j]).sum())
        .collect();
    let u = solver.solve(&rhs)?;
    Ok(assemble_extension(g, &u, f))
}

struct DtnParts {
    lambda: DenseMatrix,
    extension: DenseMatrix,
}

fn dtn_parts_raw(g: &GraphWithBoundary, opts: &SolverOptions) -> Result<DtnParts> {
    require_valid(g)?;
    let solver = InteriorSolver::new(g, opts)?;
    let h = extension_operator(g, &solver)?;
    let boundary = g.boundary();
    let mut pos = vec![usize::MAX; g.len()];
    for (k, &i) in g.interior().iter().enumerate() {
        pos[i] = k;
    }
    let b = boundary.len();
    let mut lambda = DenseMatrix::zeros(b, b);
    for (r, &bv) in boundary.iter().enumerate() {
        lambda[(r, r)] = g.degree(bv) as f64;
        // E(B,B) = ∅, so every neighbour is interior.
        for &i in g.neighbors(bv) {
            let hrow = h.row(pos[i]);
            for c in 0..b {
                lambda[(r, c)] -= hrow[c];
            }
        }
    }
    Ok(DtnParts { lambda, extension: h })
}

fn dtn_parts(g: &GraphWithBoundary, opts: &SolverOptions) -> Result<DtnParts> {
    let mut parts = dtn_parts_raw(g, opts)?;
    parts.lambda.symmetrize();
    Ok(parts)
}

/// The Dirichlet-to-Neumann matrix on the boundary, symmetrized.
pub fn dtn_matrix(g: &GraphWithBoundary) -> Result<DenseMatrix> {
    dtn_matrix_with(g, &SolverOptions::default())
}

pub fn dtn_matrix_with(g: &GraphWithBoundary, opts: &SolverOptions) -> Result<DenseMatrix> {
    Ok(dtn_parts(g, opts)?.lambda)
}

/// `D_B − A_BI·L_II⁻¹·A_IB` as computed, before symmetrization. Its
/// asymmetry measures the accuracy of the interior solves.
pub fn dtn_matrix_raw(g: &GraphWithBoundary) -> Result<DenseMatrix> {
    Ok(dtn_parts_raw(g, &SolverOptions::default())?.lambda)
}

/// Solver diagnostics attached to every spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// `max_j ‖Δv_j‖_∞` over interior vertices.
    pub interior_laplacian: f64,
    /// `max_j ‖∂v_j/∂n − σ_j v_j‖_∞` over boundary vertices.
    pub boundary_equation: f64,
    /// `max |Λ·1|`.
    pub row_sum: f64,
    pub jacobi_sweeps: usize,
}

/// Steklov eigenvalues `0 = σ_0 <= ... <= σ_{b-1}` with orthonormal boundary
/// eigenvectors and their harmonic extensions.
#[derive(Debug, Clone)]
pub struct SteklovSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<BoundaryFunction>,
    pub extensions: Vec<VertexFunction>,
    pub residuals: Residuals,
}

impl SteklovSpectrum {
    pub fn b(&self) -> usize {
        self.eigenvalues.len()
    }

    /// First nonzero eigenvalue; undefined for a single boundary vertex.
    pub fn sigma1(&self) -> Result<f64> {
        if self.b() < 2 {
            return Err(Error::SigmaOneUndefined { boundary: self.b() });
        }
        Ok(self.eigenvalues[1])
    }
}

pub fn spectrum(g: &GraphWithBoundary) -> Result<SteklovSpectrum> {
    spectrum_with(g, &SolverOptions::default())
}

pub fn spectrum_with(g: &GraphWithBoundary, opts: &SolverOptions) -> Result<SteklovSpectrum> {
    if g.boundary().is_empty() {
        return Err(Error::InvalidGraph(vec![Violation::EmptyBoundary]));
    }
    let DtnParts { lambda, extension } = dtn_parts(g, opts)?;
    let b = lambda.rows();
    let eig = jacobi_eigen(&lambda, opts.eigen_tol)?;
    let row_sum = (0..b).map(|r| lambda.row(r).iter().sum::<f64>().abs()).fold(0.0, f64::max);

    let mut eigenvectors = Vec::with_capacity(b);
    let mut extensions = Vec::with_capacity(b);
    let mut interior_res = 0.0f64;
    let mut boundary_res = 0.0f64;
    for (k, &sigma) in eig.values.iter().enumerate() {
        let phi = eig.vectors.column(k);
        let u = extension.matvec(&phi);
        let v = assemble_extension(g, &u, &phi);
        let lap = laplacian_apply(g, &v)?;
        interior_res = interior_res.max(g.interior().iter().map(|&i| lap[i].abs()).fold(0.0, f64::max));
        let dn = normal_derivative(g, &v)?;
        boundary_res = boundary_res.max(dn.iter().zip(&phi).map(|(d, p)| (d - sigma * p).abs()).fold(0.0, f64::max));
        eigenvectors.push(BoundaryFunction(phi));
        extensions.push(v);
    }
    Ok(SteklovSpectrum {
        eigenvalues: eig.values,
        eigenvectors,
        extensions,
        residuals: Residuals {
            interior_laplacian: interior_res,
            boundary_equation: boundary_res,
            row_sum,
            jacobi_sweeps: eig.sweeps,
        },
    })
}

/// Dirichlet energy `Σ_{i∼j} (v(i) − v(j))²`, once per unordered edge.
pub fn dirichlet_energy(g: &GraphWithBoundary, v: &[f64]) -> f64 {
    g.edges().iter().map(|&(a, b)| (v[a] - v[b]).powi(2)).sum()
}

/// `R(v) = Σ_{i∼j} (v(i) − v(j))² / Σ_{i∈B} v(i)²`.
pub fn rayleigh(g: &GraphWithBoundary, v: &VertexFunction) -> Result<f64> {
    check_len(g.len(), v.len())?;
    let mass: f64 = g.boundary().iter().map(|&i| v[i] * v[i]).sum();
    if mass == 0.0 {
        return Err(Error::ZeroBoundaryNorm);
    }
    Ok(dirichlet_energy(g, v) / mass)
}

/// All `b` Steklov eigenvalues from the generalized problem `Q v = σ M v` on
/// ℝ^V, with `Q` the Dirichlet form and `M` the boundary mass.
///
/// `M` is singular, so the pencil is inverted: `M v = μ (Q + M) v` with
/// `Q + M` positive definite. Vectors in the `|V| − b` dimensional degenerate
/// directions get `μ = 0` and are deflated; the remaining `b` values map back
/// through `σ = 1/μ − 1`.
pub fn minmax_spectrum(g: &GraphWithBoundary) -> Result<Vec<f64>> {
    let n = g.len();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::OracleTooLarge { cap: ORACLE_MAX_VERTICES, actual: n });
    }
    require_valid(g)?;
    let b = g.boundary().len();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(i, j) in g.edges() {
        a[(i, i)] += 1.0;
        a[(j, j)] += 1.0;
        a[(i, j)] -= 1.0;
        a[(j, i)] -= 1.0;
    }
    for &i in g.boundary() {
        a[(i, i)] += 1.0;
    }
    let chol = a.cholesky().ok_or_else(|| Error::Invariant("Q + M is not positive definite".into()))?;
    // C = L⁻¹ M L⁻ᵀ = (L⁻¹P)(L⁻¹P)ᵀ, P the boundary coordinate columns.
    let mut p = DMatrix::<f64>::zeros(n, b);
    for (k, &i) in g.boundary().iter().enumerate() {
        p[(i, k)] = 1.0;
    }
    let lp = chol.l().solve_lower_triangular(&p).ok_or_else(|| Error::Invariant("triangular solve failed".into()))?;
    let c = &lp * lp.transpose();
    let mut mu: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    mu.sort_by(|x, y| y.total_cmp(x));
    let mut sigma: Vec<f64> = mu[..b].iter().map(|&m| 1.0 / m - 1.0).collect();
    sigma.sort_by(f64::total_cmp);
    Ok(sigma)
}

/// `σ_j` by the min-max route; see [`minmax_spectrum`].
pub fn minmax_oracle(g: &GraphWithBoundary, j: usize) -> Result<f64> {
    let b = g.boundary().len();
    if j >= b {
        return Err(Error::InvalidParameter(format!("index {j} out of range for {b} boundary vertices")));
    }
    Ok(minmax_spectrum(g)?[j])
}

/// Largest `|Λ·1|` entry, `max |Λ_ij − Λ_ji|` relative to `max |Λ|`, and the
/// smallest eigenvalue.
pub fn dtn_structure(lambda: &DenseMatrix, eigenvalues: &[f64]) -> (f64, f64, f64) {
    let rows = (0..lambda.rows()).map(|r| lambda.row(r).iter().sum::<f64>()).collect::<Vec<_>>();
    let scale = lambda.max_abs().max(f64::MIN_POSITIVE);
    (norm_inf(&rows), lambda.asymmetry() / scale, eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{GroupDescriptor, GroupElement};
    use crate::graph::{two_point_family, InducedSubsetSpec};

    fn path() -> GraphWithBoundary {
        GraphWithBoundary::from_edges(3, &[0, 2], &[(0, 1), (1, 2)]).unwrap()
    }

    /// K_{1,4} with the leaves as boundary; center is vertex 0.
    fn star() -> GraphWithBoundary {
        GraphWithBoundary::from_edges(5, &[1, 2, 3, 4], &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn laplacian_examples() {
        let s = star();
        let zero = laplacian_apply(&s, &VertexFunction(vec![3.0; 5])).unwrap();
        assert!(zero.iter().all(|&x| x == 0.0));
        let v = laplacian_apply(&s, &VertexFunction(vec![1.0, 0.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(v.0, vec![4.0, -1.0, -1.0, -1.0, -1.0]);
        let p = laplacian_apply(&path(), &VertexFunction(vec![1.0, 0.0, -1.0])).unwrap();
        assert_eq!(p.0, vec![1.0, 0.0, -1.0]);
        assert!(matches!(
            laplacian_apply(&s, &VertexFunction(vec![0.0; 2])),
            Err(Error::LengthMismatch { expected: 5, actual: 2 })
        ));
    }

    #[test]
    fn normal_derivative_examples() {
        let s = star();
        let c = normal_derivative(&s, &VertexFunction(vec![2.0; 5])).unwrap();
        assert!(c.iter().all(|&x| x == 0.0));
        let d = normal_derivative(&s, &VertexFunction(vec![0.0, 1.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(d.0, vec![1.0; 4]);
        let g2 = two_point_family(2).unwrap();
        let v = harmonic_extension(&g2, &BoundaryFunction(vec![1.0, -1.0])).unwrap();
        assert!(close(&v[..2], &[0.0, 0.0], 1e-15));
        let dn = normal_derivative(&g2, &v).unwrap();
        assert!(close(&dn, &[2.0, -2.0], 1e-14));
        assert!(normal_derivative(&s, &VertexFunction(vec![0.0; 4])).is_err());
    }

    #[test]
    fn harmonic_extension_examples() {
        let s = star();
        let v = harmonic_extension(&s, &BoundaryFunction(vec![2.5; 4])).unwrap();
        assert!(close(&v, &[2.5; 5], 1e-14));
        let p = harmonic_extension(&path(), &BoundaryFunction(vec![1.0, 0.0])).unwrap();
        assert!((p[1] - 0.5).abs() < 1e-15);
        let v = harmonic_extension(&s, &BoundaryFunction(vec![1.0, 1.0, -1.0, -1.0])).unwrap();
        assert!(v[0].abs() < 1e-15);
        assert!(harmonic_extension(&s, &BoundaryFunction(vec![1.0])).is_err());
    }

    #[test]
    fn harmonic_extension_residual_on_box() {
        let z2 = GroupDescriptor::free_abelian(2).unwrap();
        let omega = (0..7).flat_map(|x| (0..5).map(move |y| GroupElement::new(vec![x, y])));
        let g = InducedSubsetSpec::new(z2, omega).unwrap().induce().unwrap();
        let f = BoundaryFunction((0..g.boundary().len()).map(|k| (k as f64 * 0.37).cos() * 40.0).collect());
        let v = harmonic_extension(&g, &f).unwrap();
        let lap = laplacian_apply(&g, &v).unwrap();
        let worst = g.interior().iter().map(|&i| lap[i].abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-10 * norm_inf(&f).max(1.0));
        for (k, &b) in g.boundary().iter().enumerate() {
            assert_eq!(v[b], f[k]);
        }
    }

    #[test]
    fn dtn_examples() {
        let lp = dtn_matrix(&path()).unwrap();
        let want = DenseMatrix::from_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]);
        assert!(close(
            &lp.row(0).iter().chain(lp.row(1)).copied().collect::<Vec<_>>(),
            &want.row(0).iter().chain(want.row(1)).copied().collect::<Vec<_>>(),
            1e-15
        ));
        let ls = dtn_matrix(&star()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.75 } else { -0.25 };
                assert!((ls[(i, j)] - want).abs() < 1e-15);
            }
        }
        for n in 1..=6 {
            let sp = spectrum(&two_point_family(n).unwrap()).unwrap();
            assert!(close(&sp.eigenvalues, &[0.0, n as f64], 1e-12));
        }
    }

    #[test]
    fn spectrum_examples() {
        let sp = spectrum(&star()).unwrap();
        assert!(close(&sp.eigenvalues, &[0.0, 1.0, 1.0, 1.0], 1e-12));
        let first = &sp.eigenvectors[0];
        assert!(first.iter().all(|&x| (x - 0.5).abs() < 1e-12));
        assert!(sp.residuals.interior_laplacian < 1e-12);
        assert!(sp.residuals.boundary_equation < 1e-12);
        for n in 1..=30 {
            let s = spectrum(&two_point_family(n).unwrap()).unwrap();
            assert!((s.sigma1().unwrap() - n as f64).abs() <= 1e-9);
        }
    }

    #[test]
    fn single_boundary_vertex() {
        let g = GraphWithBoundary::from_edges(2, &[0], &[(0, 1)]).unwrap();
        let sp = spectrum(&g).unwrap();
        assert_eq!(sp.b(), 1);
        assert!(sp.eigenvalues[0].abs() < 1e-15);
        assert!(matches!(sp.sigma1(), Err(Error::SigmaOneUndefined { boundary: 1 })));
    }

    #[test]
    fn iterative_route_matches_dense() {
        let z2 = GroupDescriptor::free_abelian(2).unwrap();
        let omega = (0..6).flat_map(|x| (0..4).map(move |y| GroupElement::new(vec![x, y])));
        let g = InducedSubsetSpec::new(z2, omega).unwrap().induce().unwrap();
        let dense = spectrum(&g).unwrap();
        let opts = SolverOptions { dense_interior_cap: 0, ..SolverOptions::default() };
        let cg = spectrum_with(&g, &opts).unwrap();
        assert!(close(&dense.eigenvalues, &cg.eigenvalues, 1e-10));
    }

    #[test]
    fn rayleigh_examples() {
        let p = path();
        assert_eq!(rayleigh(&p, &VertexFunction(vec![2.0; 3])).unwrap(), 0.0);
        assert_eq!(rayleigh(&p, &VertexFunction(vec![1.0, 0.5, 0.0])).unwrap(), 0.5);
        assert!(matches!(rayleigh(&p, &VertexFunction(vec![0.0, 1.0, 0.0])), Err(Error::ZeroBoundaryNorm)));
    }

    #[test]
    fn oracle_examples() {
        assert!((minmax_oracle(&path(), 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((minmax_oracle(&two_point_family(2).unwrap(), 1).unwrap() - 2.0).abs() < 1e-12);
        assert!((minmax_oracle(&star(), 1).unwrap() - 1.0).abs() < 1e-12);
        assert!(minmax_oracle(&star(), 4).is_err());
        assert!(matches!(minmax_oracle(&two_point_family(100).unwrap(), 1), Err(Error::OracleTooLarge { .. })));
    }
}
