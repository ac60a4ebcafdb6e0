use crate::error::{Error, Result};
use crate::linalg::{
    c64, eigenvalues, max_abs, multiset_distance, normalize_phase, null_space, svd_sorted, CMat, CVec, C64,
};

use super::corner::RepModel;

/// Eigenvalues closer than this are treated as one.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Singular-value threshold for the fixed space of `σ`.
pub const FIXED_TOL: f64 = 1e-8;

/// Matrix of `X ↦ Σᵢ Vᵢ^{(B)} X Vᵢ^{(A)*}` on operators `X: K_A → K_B`, in the
/// column-major basis `E_{−k,−l}` (index `k + l·dim_B`).
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaMatrix {
    dim_b: usize,
    dim_a: usize,
    matrix: CMat,
}

impl SigmaMatrix {
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn is_square(&self) -> bool {
        self.dim_a == self.dim_b
    }

    /// Position of `E_{−k,−l}` in the vectorized basis.
    pub fn index(&self, k: usize, l: usize) -> usize {
        k + l * self.dim_b
    }

    pub fn vec(&self, x: &CMat) -> CVec {
        CVec::from_iterator(x.len(), x.iter().copied())
    }

    pub fn unvec(&self, v: &CVec) -> CMat {
        CMat::from_column_slice(self.dim_b, self.dim_a, v.as_slice())
    }

    pub fn apply(&self, x: &CMat) -> CMat {
        self.unvec(&(&self.matrix * self.vec(x)))
    }

    /// Hilbert–Schmidt adjoint, `X ↦ Σᵢ Vᵢ^{(B)*} X Vᵢ^{(A)}`.
    pub fn adjoint_matrix(&self) -> CMat {
        self.matrix.adjoint()
    }

    pub fn apply_adjoint(&self, x: &CMat) -> CMat {
        self.unvec(&(self.adjoint_matrix() * self.vec(x)))
    }

    /// Entry `(E_row, E_col)`: coefficient of `E_row` in `σ(E_col)`.
    pub fn entry(&self, row: (usize, usize), col: (usize, usize)) -> C64 {
        self.matrix[(self.index(row.0, row.1), self.index(col.0, col.1))]
    }
}

/// `Σᵢ conj(Vᵢ^{(A)}) ⊗ Vᵢ^{(B)}`.
pub fn sigma_matrix(b: &RepModel, a: &RepModel) -> Result<SigmaMatrix> {
    if a.n() != b.n() {
        return Err(Error::ScaleMismatch(b.n(), a.n()));
    }
    let (da, db) = (a.dim(), b.dim());
    let mut m = CMat::zeros(da * db, da * db);
    for i in 0..a.n() {
        m += a.v(i).map(|z| z.conj()).kronecker(b.v(i));
    }
    Ok(SigmaMatrix { dim_b: db, dim_a: da, matrix: m })
}

/// Matrix of the adjoint map built from its own formula
/// `Σᵢ Vᵢ^{(A)ᵀ} ⊗ Vᵢ^{(B)*}`, for comparison with the conjugate transpose.
pub fn sigma_adjoint_direct(b: &RepModel, a: &RepModel) -> Result<CMat> {
    if a.n() != b.n() {
        return Err(Error::ScaleMismatch(b.n(), a.n()));
    }
    let (da, db) = (a.dim(), b.dim());
    let mut m = CMat::zeros(da * db, da * db);
    for i in 0..a.n() {
        m += a.v(i).transpose().kronecker(b.v_adj(i));
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCluster {
    pub value: C64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// All eigenvalues, sorted by real then imaginary part.
    pub eigenvalues: Vec<C64>,
    pub clusters: Vec<EigenCluster>,
    /// Distance between the adjoint's spectrum and the conjugated spectrum.
    pub adjoint_mismatch: f64,
}

impl Spectrum {
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Algebraic multiplicity of the cluster nearest `value` (0 if none is
    /// within the clustering tolerance).
    pub fn multiplicity(&self, value: C64) -> usize {
        self.clusters.iter().filter(|c| (c.value - value).norm() < CLUSTER_TOL).map(|c| c.multiplicity).sum()
    }
}

fn sort_complex(v: &mut [C64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Group values lying within `tol` of a cluster's first member.
pub fn cluster(values: &[C64], tol: f64) -> Vec<EigenCluster> {
    let mut out: Vec<(C64, Vec<C64>)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(rep, _)| (rep - v).norm() < tol) {
            Some((_, members)) => members.push(v),
            None => out.push((v, vec![v])),
        }
    }
    out.into_iter()
        .map(|(_, members)| EigenCluster {
            value: members.iter().sum::<C64>() / members.len() as f64,
            multiplicity: members.len(),
        })
        .collect()
}

pub fn spectrum(s: &SigmaMatrix) -> Result<Spectrum> {
    if !s.is_square() {
        return Err(Error::shape("square sigma map", format!("{}x{} corner", s.dim_b, s.dim_a)));
    }
    let mut ev = eigenvalues(&s.matrix)?;
    sort_complex(&mut ev);
    let adj = eigenvalues(&s.adjoint_matrix())?;
    let conj: Vec<C64> = ev.iter().map(|z| z.conj()).collect();
    let adjoint_mismatch = multiset_distance(&adj, &conj);
    let clusters = cluster(&ev, CLUSTER_TOL);
    Ok(Spectrum { eigenvalues: ev, clusters, adjoint_mismatch })
}

/// Basis of `ker(S − λ)` from the SVD; the right singular vector with the
/// smallest singular value is always included.
pub fn eigenvectors(s: &SigmaMatrix, lambda: C64, tol: f64) -> Vec<CMat> {
    let d = s.matrix.nrows();
    let shifted = &s.matrix - CMat::identity(d, d) * lambda;
    let mut ns = null_space(&shifted, tol);
    if ns.ncols() == 0 {
        let (_, _, v) = svd_sorted(&shifted);
        ns = v.columns(d - 1, 1).into_owned();
    }
    (0..ns.ncols())
        .map(|c| {
            let mut v: CVec = ns.column(c).into_owned();
            normalize_phase(&mut v, 1e-8);
            s.unvec(&v)
        })
        .collect()
}

/// Orthonormal (Hilbert–Schmidt) basis of `{X : σ(X) = X}`.
pub fn fixed_point_space(s: &SigmaMatrix, tol: f64) -> Vec<CMat> {
    let d = s.matrix.nrows();
    let shifted = &s.matrix - CMat::identity(d, d);
    let ns = null_space(&shifted, tol);
    (0..ns.ncols()).map(|c| s.unvec(&ns.column(c).into_owned())).collect()
}

fn flatten(x: &CMat) -> CVec {
    CVec::from_iterator(x.len(), x.iter().copied())
}

/// Distance from `x` to the span of an orthonormal basis, relative to `‖x‖`.
pub fn span_residual(basis: &[CMat], x: &CMat) -> f64 {
    let v = flatten(x);
    let norm = v.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let mut r = v.clone();
    for b in basis {
        let bv = flatten(b);
        let c = bv.dotc(&v);
        r -= bv * c;
    }
    r.norm() / norm
}

/// Reduced row-echelon basis of the span: unique for a given subspace, so it
/// reads as e.g. `E₀,₀` and `E₋₁,₋₁ + E₋₂,₋₂` instead of arbitrary mixtures.
pub fn echelon_basis(basis: &[CMat], tol: f64) -> Vec<CMat> {
    if basis.is_empty() {
        return Vec::new();
    }
    let (rows, cols) = basis[0].shape();
    let len = rows * cols;
    let mut m = CMat::from_fn(basis.len(), len, |i, j| basis[i].as_slice()[j]);
    let mut pivot_row = 0;
    for col in 0..len {
        if pivot_row == m.nrows() {
            break;
        }
        let best = (pivot_row..m.nrows()).max_by(|&a, &b| m[(a, col)].norm().total_cmp(&m[(b, col)].norm())).unwrap();
        if m[(best, col)].norm() <= tol {
            continue;
        }
        m.swap_rows(pivot_row, best);
        let p = m[(pivot_row, col)];
        for j in 0..len {
            m[(pivot_row, j)] /= p;
        }
        for i in 0..m.nrows() {
            if i != pivot_row {
                let f = m[(i, col)];
                if f != c64(0.0, 0.0) {
                    for j in 0..len {
                        let t = m[(pivot_row, j)];
                        m[(i, j)] -= f * t;
                    }
                }
            }
        }
        pivot_row += 1;
    }
    (0..pivot_row)
        .map(|i| {
            let clean: Vec<C64> = m
                .row(i)
                .iter()
                .map(|z| {
                    let snap = |x: f64| if (x - x.round()).abs() < tol { x.round() } else { x };
                    c64(snap(z.re), snap(z.im))
                })
                .collect();
            CMat::from_column_slice(rows, cols, &clean)
        })
        .collect()
}

/// Largest off-diagonal modulus.
pub fn off_diagonal(x: &CMat) -> f64 {
    let mut y = x.clone();
    for i in 0..y.nrows().min(y.ncols()) {
        y[(i, i)] = c64(0.0, 0.0);
    }
    max_abs(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuntz::corner::corner_isometries;
    use crate::linalg::identity;
    use crate::polyloop::PolyLoop;
    use crate::sample::Sampler;

    #[test]
    fn identity_loop_sigma_by_hand() {
        // V₀ = E₀₀, V₁ = E₋₁,₋₁ on the two-dimensional corner
        let m = corner_isometries(&PolyLoop::identity(2)).unwrap();
        let s = sigma_matrix(&m, &m).unwrap();
        let mut expect = CMat::zeros(4, 4);
        expect[(0, 0)] = c64(1.0, 0.0);
        expect[(3, 3)] = c64(1.0, 0.0);
        assert_eq!(s.matrix(), &expect);
        let sp = spectrum(&s).unwrap();
        assert_eq!(sp.multiplicity(c64(1.0, 0.0)), 2);
        assert!(sp.spectral_radius() <= 1.0 + 1e-12);
    }

    #[test]
    fn sigma_is_unital_and_adjoint_consistent() {
        let mut s = Sampler::new(30);
        for (n, g) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
            let m = corner_isometries(&s.genus_loop(n, g)).unwrap();
            let sig = sigma_matrix(&m, &m).unwrap();
            let i = identity(m.dim());
            assert!((sig.apply(&i) - &i).norm() < 1e-10);
            let direct = sigma_adjoint_direct(&m, &m).unwrap();
            assert!((direct - sig.adjoint_matrix()).norm() < 1e-12);
            let sp = spectrum(&sig).unwrap();
            // eigenvalue 0 is defective here, so both spectra are only
            // accurate to about the square root of machine precision
            assert!(sp.adjoint_mismatch < 1e-6, "{n} {g}: {}", sp.adjoint_mismatch);
        }
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let e = |k: usize| {
            let mut m = CMat::zeros(3, 3);
            m[(k, k)] = c64(1.0, 0.0);
            m
        };
        let a = (e(0) + e(1) * c64(0.5, 0.0)) * c64(0.3, 0.2);
        let b = e(1) + e(2);
        let rref = echelon_basis(&[a, b], 1e-10);
        assert_eq!(rref.len(), 2);
        assert!((rref[0].clone() - (e(0) - e(2) * c64(0.5, 0.0))).norm() < 1e-12);
        assert!((rref[1].clone() - (e(1) + e(2))).norm() < 1e-12);
    }
}
