//! Closed-form `σ` for genus-2 loops `V(1 − Q + zQ)` with `N ≥ 3`, written in
//! terms of `λ = 1 − Q` on the corner `span{e₀, e₋₁, e₋₂}`.

use crate::error::{Error, Result};
use crate::linalg::{c64, identity, CMat, C64};
use crate::polyloop::{coefficient_form, PolyLoop};

/// Basis labels `(k, l)` for `E₋ₖ,₋ₗ`, in the order used for the 9×9 matrix.
/// `((row label), (column label), value)`.
pub type Entry = ((usize, usize), (usize, usize), C64);

pub const LABELS: [(usize, usize); 9] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2), (2, 1), (1, 0), (2, 0)];

#[derive(Debug, Clone, PartialEq)]
pub struct GenusTwoClosedForm {
    lam: CMat,
}

impl GenusTwoClosedForm {
    pub fn from_projection(q: &CMat) -> Result<Self> {
        let n = q.nrows();
        if n < 3 || q.ncols() != n {
            return Err(Error::WrongDimension(format!(
                "closed form needs a square projection with N >= 3, got {}x{}",
                n,
                q.ncols()
            )));
        }
        Ok(GenusTwoClosedForm { lam: identity(n) - q })
    }

    /// Reads `Q` off the coefficient form `A = V(1 − Q + zQ)`.
    pub fn from_loop(a: &PolyLoop) -> Result<Self> {
        if a.genus() != 2 {
            return Err(Error::WrongDimension(format!("closed form needs genus 2, got {}", a.genus())));
        }
        let cf = coefficient_form(a)?;
        Self::from_projection(&cf.projections[0])
    }

    pub fn n(&self) -> usize {
        self.lam.nrows()
    }

    /// `λ_{i,j}` with indices taken mod `N` from the top (`λ(−1, 0)` is `λ_{N−1,0}`).
    fn l(&self, i: i64, j: i64) -> C64 {
        let n = self.n() as i64;
        self.lam[(i.rem_euclid(n) as usize, j.rem_euclid(n) as usize)]
    }

    pub fn lambda(&self) -> &CMat {
        &self.lam
    }

    /// Nonzero entries `(row, col, value)`: the coefficient of `E_row` in `σ(E_col)`.
    pub fn entries(&self) -> Vec<Entry> {
        let one = c64(1.0, 0.0);
        let (l0, la, lb) = (self.l(0, 0), self.l(-1, -1), self.l(-2, -2));
        vec![
            ((0, 0), (0, 0), l0),
            ((0, 0), (1, 1), one - l0),
            ((1, 1), (1, 1), la),
            ((1, 1), (2, 2), one - la),
            ((2, 2), (1, 1), lb),
            ((2, 2), (2, 2), one - lb),
            ((0, 1), (0, 1), self.l(-1, 0)),
            ((0, 1), (1, 2), -self.l(-1, 0)),
            ((0, 2), (0, 1), self.l(-2, 0)),
            ((0, 2), (1, 2), -self.l(-2, 0)),
            ((1, 2), (1, 1), self.l(-2, -1)),
            ((1, 2), (2, 2), -self.l(-2, -1)),
            ((2, 1), (1, 1), self.l(-1, -2)),
            ((2, 1), (2, 2), -self.l(-1, -2)),
            ((1, 0), (2, 1), -self.l(0, -1)),
            ((1, 0), (1, 0), self.l(0, -1)),
            ((2, 0), (2, 1), -self.l(0, -2)),
            ((2, 0), (1, 0), self.l(0, -2)),
        ]
    }

    /// The 9×9 matrix in the column-major basis `k + 3l` used by `SigmaMatrix`.
    pub fn matrix(&self) -> CMat {
        let mut m = CMat::zeros(9, 9);
        for (row, col, v) in self.entries() {
            m[(row.0 + 3 * row.1, col.0 + 3 * col.1)] = v;
        }
        m
    }

    /// `{0, 0, 0, 0, 1, λ₀, λ_{N−1} − λ_{N−2}, λ_{N−1,0}, λ_{0,N−1}}`.
    pub fn spectrum(&self) -> Vec<C64> {
        let zero = c64(0.0, 0.0);
        vec![zero, zero, zero, zero, c64(1.0, 0.0), self.l(0, 0), self.mu(), self.l(-1, 0), self.l(0, -1)]
    }

    /// `λ_{N−1} − λ_{N−2}`.
    pub fn mu(&self) -> C64 {
        self.l(-1, -1) - self.l(-2, -2)
    }

    fn matrix_of(&self, parts: &[((usize, usize), C64)]) -> CMat {
        let mut x = CMat::zeros(3, 3);
        for &((k, l), v) in parts {
            x[(k, l)] += v;
        }
        x
    }

    /// Eigenvectors for the nonzero eigenvalues in the classical closed-form list, as
    /// `(eigenvalue, eigenvector)`, in the order `λ₀, 1, μ, λ_{N−1,0}, λ_{0,N−1}`.
    /// The μ entry is diagonal only and is not an eigenvector in general; see
    /// [`Self::full_mu_eigenvector`].
    pub fn listed_eigenvectors(&self) -> Vec<(C64, CMat)> {
        let one = c64(1.0, 0.0);
        vec![
            (self.l(0, 0), self.matrix_of(&[((0, 0), one)])),
            (one, identity(3)),
            (self.mu(), self.matrix_of(&self.mu_diagonal())),
            (self.l(-1, 0), self.matrix_of(&[((0, 1), self.l(-1, 0)), ((0, 2), self.l(-2, 0))])),
            (self.l(0, -1), self.matrix_of(&[((1, 0), self.l(0, -1)), ((2, 0), self.l(0, -2))])),
        ]
    }

    fn mu_diagonal(&self) -> [((usize, usize), C64); 3] {
        let one = c64(1.0, 0.0);
        let (l0, la, lb) = (self.l(0, 0), self.l(-1, -1), self.l(-2, -2));
        let mu = la - lb;
        [((0, 0), (one - l0) * (one - la)), ((1, 1), (mu - l0) * (one - la)), ((2, 2), -lb * (mu - l0))]
    }

    /// Eigenvector for `μ = λ_{N−1} − λ_{N−2}` including the off-diagonal
    /// entries that the diagonal columns feed through `λ_{N−2,N−1}` and
    /// `λ_{N−1,N−2}`. Needs `μ ≠ 0`, `μ ≠ λ_{N−1,0}` and `μ ≠ λ_{0,N−1}`.
    pub fn full_mu_eigenvector(&self) -> CMat {
        let mu = self.mu();
        let d = self.mu_diagonal();
        let (b, c) = (d[1].1, d[2].1);
        let s = self.l(-2, -1) * (b - c) / mu;
        let t = self.l(-1, -2) * (b - c) / mu;
        let x01 = -self.l(-1, 0) * s / (mu - self.l(-1, 0));
        let x02 = self.l(-2, 0) * (x01 - s) / mu;
        let x10 = -self.l(0, -1) * t / (mu - self.l(0, -1));
        let x20 = self.l(0, -2) * (x10 - t) / mu;
        let mut x = self.matrix_of(&d);
        x[(1, 2)] = s;
        x[(2, 1)] = t;
        x[(0, 1)] = x01;
        x[(0, 2)] = x02;
        x[(1, 0)] = x10;
        x[(2, 0)] = x20;
        x
    }
}

/// Angle between two operators as vectors (phase-blind), in radians.
pub fn angle(x: &CMat, y: &CMat) -> f64 {
    let (nx, ny) = (x.norm(), y.norm());
    if nx == 0.0 || ny == 0.0 {
        return std::f64::consts::FRAC_PI_2;
    }
    let inner: C64 = x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum();
    (inner.norm() / (nx * ny)).clamp(0.0, 1.0).acos()
}
