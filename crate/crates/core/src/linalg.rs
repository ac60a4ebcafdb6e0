//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    svd_sorted(m).0.first().copied().unwrap_or(0.0)
}

/// Largest modulus of any entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
}

/// `‖U U* − I‖` in operator norm; zero exactly for unitary input.
pub fn unitarity_defect(u: &CMat) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    op_norm(&(u * u.adjoint() - identity(n)))
}

/// `max(‖P − P*‖, ‖P² − P‖)`.
pub fn projection_defect(p: &CMat) -> f64 {
    if p.nrows() != p.ncols() {
        return f64::INFINITY;
    }
    let herm = op_norm(&(p - p.adjoint()));
    let idem = op_norm(&(p * p - p));
    herm.max(idem)
}

/// Singular value decomposition with singular values sorted in descending order.
/// Returns `(s, U, V)` with `M = U diag(s) V*`, thin in both factors.
///
/// nalgebra's complex SVD occasionally returns a wrong factorization for
/// low-rank input, so its result is checked and replaced by a one-sided
/// Jacobi SVD when the check fails.
pub fn svd_sorted(m: &CMat) -> (Vec<f64>, CMat, CMat) {
    if m.is_empty() {
        let k = m.nrows().min(m.ncols());
        return (vec![0.0; k], CMat::zeros(m.nrows(), k), CMat::zeros(m.ncols(), k));
    }
    let svd = m.clone().svd(true, true);
    let (s, u, v) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => sorted(svd.singular_values.iter().copied().collect(), u, v_t.adjoint()),
        _ => jacobi_svd(m),
    };
    if svd_residual(m, &s, &u, &v) <= SVD_CHECK_TOL {
        (s, u, v)
    } else {
        jacobi_svd(m)
    }
}

const SVD_CHECK_TOL: f64 = 1e-11;

fn sorted(s: Vec<f64>, u: CMat, v: CMat) -> (Vec<f64>, CMat, CMat) {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].total_cmp(&s[a]));
    let s_sorted = order.iter().map(|&i| s[i]).collect();
    let u_sorted = CMat::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v_sorted = CMat::from_fn(v.nrows(), order.len(), |r, c| v[(r, order[c])]);
    (s_sorted, u_sorted, v_sorted)
}

/// Relative reconstruction and orthonormality error of a thin SVD.
fn svd_residual(m: &CMat, s: &[f64], u: &CMat, v: &CMat) -> f64 {
    let k = s.len();
    let mut us = u.clone();
    for (j, &sj) in s.iter().enumerate() {
        us.column_mut(j).scale_mut(sj);
    }
    let rec = (us * v.adjoint() - m).norm() / (1.0 + m.norm());
    let ou = (u.adjoint() * u - identity(k)).norm();
    let ov = (v.adjoint() * v - identity(k)).norm();
    rec.max(ou).max(ov)
}

/// One-sided (Hestenes) Jacobi SVD.
fn jacobi_svd(m: &CMat) -> (Vec<f64>, CMat, CMat) {
    if m.nrows() < m.ncols() {
        let (s, u, v) = jacobi_svd(&m.adjoint());
        return (s, v, u);
    }
    let (rows, n) = m.shape();
    let mut a = m.clone();
    let mut v = identity(n);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = a.column(p).norm_squared();
                let beta = a.column(q).norm_squared();
                let gamma = a.column(p).dotc(&a.column(q));
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = c * t;
                for r in 0..rows {
                    let (x, y) = (a[(r, p)], a[(r, q)] * phase.conj());
                    a[(r, p)] = x * c - y * sn;
                    a[(r, q)] = x * sn + y * c;
                }
                for r in 0..n {
                    let (x, y) = (v[(r, p)], v[(r, q)] * phase.conj());
                    v[(r, p)] = x * c - y * sn;
                    v[(r, q)] = x * sn + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let s: Vec<f64> = (0..n).map(|j| a.column(j).norm()).collect();
    let smax = s.iter().copied().fold(0.0, f64::max);
    let mut u = CMat::zeros(rows, n);
    let mut filled = vec![false; n];
    for j in 0..n {
        if s[j] > smax * f64::EPSILON * (rows + n) as f64 {
            u.set_column(j, &(a.column(j) / c64(s[j], 0.0)));
            filled[j] = true;
        }
    }
    // complete the columns for zero singular values against the standard basis
    let mut e = 0;
    for j in 0..n {
        if filled[j] {
            continue;
        }
        while e < rows {
            let mut w = CVec::zeros(rows);
            w[e] = c64(1.0, 0.0);
            e += 1;
            for _ in 0..2 {
                for (k, &done) in filled.iter().enumerate().take(n) {
                    if done {
                        let proj = u.column(k).dotc(&w);
                        w -= u.column(k) * proj;
                    }
                }
            }
            let norm = w.norm();
            if norm > 1e-8 {
                u.set_column(j, &(w / c64(norm, 0.0)));
                filled[j] = true;
                break;
            }
        }
    }
    sorted(s, u, v)
}

/// Orthonormal basis (as columns) of the numerical null space: right singular
/// vectors whose singular value is below `tol`.
pub fn null_space(m: &CMat, tol: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    // pad to square so that a full set of right singular vectors exists
    let sq = if m.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let (s, _u, v) = svd_sorted(&sq);
    let cols: Vec<usize> = (0..n).filter(|&i| s[i] < tol).collect();
    CMat::from_fn(n, cols.len(), |r, c| v[(r, cols[c])])
}

/// Hermitian eigen-decomposition with eigenvalues sorted in descending order.
pub fn hermitian_eigen_desc(h: &CMat) -> (Vec<f64>, CMat) {
    let sym = (h + h.adjoint()) * c64(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMat::from_fn(h.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Eigenvalues of a general complex square matrix (complex Schur form).
pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::shape("square matrix", format!("{}x{}", m.nrows(), m.ncols())));
    }
    if m.is_empty() {
        return Ok(Vec::new());
    }
    let schur = m
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::EigenFailure("Schur iteration did not converge".into()))?;
    let ev = schur.eigenvalues().ok_or_else(|| Error::EigenFailure("Schur form is not triangular".into()))?;
    Ok(ev.iter().copied().collect())
}

/// Multiply a vector by the phase that makes its first significant component
/// real and positive.
pub fn normalize_phase(v: &mut CVec, threshold: f64) {
    if let Some(z) = v.iter().copied().find(|z| z.norm() > threshold) {
        let phase = z.conj() / z.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
}

/// Deterministic unitary whose first row is the given unit row vector.
///
/// A complex Householder reflection sends the basis vector at the
/// largest-modulus position of `conj(row)` onto `conj(row)`; that column is then
/// rotated to the front and the result adjointed.
pub fn complete_unit_row(row: &[C64]) -> CMat {
    let n = row.len();
    let w = CVec::from_iterator(n, row.iter().map(|z| z.conj()));
    let norm = w.norm();
    let p = (0..n).max_by(|&a, &b| w[a].norm().total_cmp(&w[b].norm())).unwrap_or(0);
    let phase = if w[p].norm() > 0.0 { w[p] / w[p].norm() } else { c64(1.0, 0.0) };

    // x = -phase * e_p, y = w / |w|;  H x = y
    let y = &w / c64(norm, 0.0);
    let mut v = -y.clone();
    v[p] -= phase;
    let vv = v.norm_squared();
    let mut h = identity(n);
    if vv > 0.0 {
        h -= (&v * v.adjoint()) * c64(2.0 / vv, 0.0);
    }
    // H e_p = -conj(phase) y, so scale column p by -phase
    let scale = -phase;
    for r in 0..n {
        h[(r, p)] *= scale;
    }
    let mut order = vec![p];
    order.extend((0..n).filter(|&i| i != p));
    let w_mat = CMat::from_fn(n, n, |r, c| h[(r, order[c])]);
    w_mat.adjoint()
}

/// Greedy nearest matching of two multisets of complex numbers. Returns the
/// largest distance between matched pairs (infinite on length mismatch).
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    // match the most isolated values first
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut done = vec![false; a.len()];
    for (d, i, j) in pairs {
        if done[i] || used[j] {
            continue;
        }
        done[i] = true;
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn low_rank(s: &mut Sampler, rows: usize, cols: usize, rank: usize) -> CMat {
        let mut m = CMat::zeros(rows, cols);
        for _ in 0..rank {
            m += s.gaussian_matrix(rows, 1) * s.gaussian_matrix(1, cols);
        }
        m
    }

    #[test]
    fn jacobi_svd_factorizes_low_rank_input() {
        let mut s = Sampler::new(11);
        for (rows, cols) in [(2, 2), (3, 3), (5, 5), (4, 2), (2, 5), (9, 9)] {
            for rank in 0..=rows.min(cols) {
                let m = low_rank(&mut s, rows, cols, rank);
                let (sv, u, v) = jacobi_svd(&m);
                assert!(svd_residual(&m, &sv, &u, &v) < 1e-12, "{rows}x{cols} rank {rank}");
                assert!(sv.windows(2).all(|w| w[0] >= w[1]));
                let numerical = sv.iter().filter(|&&x| x > 1e-10 * (1.0 + sv[0])).count();
                assert_eq!(numerical, rank);
            }
        }
    }

    #[test]
    fn checked_svd_survives_bad_nalgebra_cases() {
        // sums of random rank-one unit outer products trip nalgebra's complex
        // SVD about once per hundred draws at these sizes
        let mut s = Sampler::new(5);
        for n in [3usize, 4, 6] {
            for _ in 0..1500 {
                let r = s.index(1, n);
                let mut m = CMat::zeros(n, n);
                for _ in 0..r {
                    let (a, b) = (s.unit_vector(n), s.unit_vector(n));
                    m += &a * b.adjoint();
                }
                let (sv, u, v) = svd_sorted(&m);
                assert!(svd_residual(&m, &sv, &u, &v) < SVD_CHECK_TOL);
                assert!((op_norm(&m) - sv[0]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn householder_completion_has_requested_first_row() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rows: Vec<Vec<C64>> = vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(s, 0.0), c64(s, 0.0)],
            vec![c64(0.0, 0.6), c64(0.0, 0.0), c64(0.8, 0.0)],
            vec![c64(0.5, 0.5), c64(-0.5, 0.0), c64(0.0, 0.5)],
        ];
        for row in rows {
            let u = complete_unit_row(&row);
            assert!(unitarity_defect(&u) < 1e-14);
            for (j, z) in row.iter().enumerate() {
                assert!((u[(0, j)] - z).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unit_basis_row_completes_to_identity() {
        let row = vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)];
        let u = complete_unit_row(&row);
        assert!((u - identity(4)).norm() < 1e-15);
    }

    #[test]
    fn null_space_of_rank_deficient_matrix() {
        let m = CMat::from_row_slice(
            2,
            3,
            &[c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
        );
        let ns = null_space(&m, 1e-10);
        assert_eq!(ns.ncols(), 1);
        assert!((&m * ns).norm() < 1e-14);
    }

    #[test]
    fn multiset_distance_ignores_order() {
        let a = [c64(1.0, 0.0), c64(0.0, 1.0), c64(0.0, 0.0)];
        let b = [c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0 + 1e-9)];
        assert!(multiset_distance(&a, &b) < 2e-9);
        assert!(multiset_distance(&a, &b[..2]).is_infinite());
    }
}
