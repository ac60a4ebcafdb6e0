//! Seeded random generators for unitaries, projections and loops.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cpoly::MatPoly;
use crate::linalg::{c64, CMat, CVec, C64};
use crate::polyloop::{certify_loop, PolyLoop, CERT_TOL};

/// Deterministic source of random matrices.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.random_range(lo..=hi_inclusive)
    }

    pub fn real_gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex Gaussian.
    pub fn gaussian(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn circle_point(&mut self) -> C64 {
        C64::from_polar(1.0, self.uniform(0.0, 2.0 * PI))
    }

    pub fn gaussian_matrix(&mut self, rows: usize, cols: usize) -> CMat {
        CMat::from_fn(rows, cols, |_, _| self.gaussian())
    }

    pub fn unit_vector(&mut self, n: usize) -> CVec {
        let v = CVec::from_fn(n, |_, _| self.gaussian());
        let norm = v.norm();
        v / c64(norm, 0.0)
    }

    pub fn real_unit_vector(&mut self, n: usize) -> Vec<f64> {
        let v: Vec<f64> = (0..n).map(|_| self.real_gaussian()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / norm).collect()
    }

    /// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
    /// `diag(R)` moved into `Q`.
    pub fn unitary(&mut self, n: usize) -> CMat {
        let g = self.gaussian_matrix(n, n);
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        q
    }

    /// Orthogonal projection of the given rank onto a random subspace.
    pub fn projection(&mut self, n: usize, rank: usize) -> CMat {
        let u = self.unitary(n);
        let cols = u.columns(0, rank);
        cols * cols.adjoint()
    }

    /// Product of `d` elementary factors with random rank-1 projections.
    pub fn rank_one_projections(&mut self, n: usize, d: usize) -> Vec<CMat> {
        (0..d)
            .map(|_| {
                let v = self.unit_vector(n);
                &v * v.adjoint()
            })
            .collect()
    }

    /// `V (1 − Q₁ + zQ₁) ⋯ (1 − Q_{g−1} + zQ_{g−1})` with random proper
    /// projections of random rank; genus exactly `g` with probability one.
    pub fn genus_loop(&mut self, n: usize, g: usize) -> PolyLoop {
        assert!(n >= 2 || g == 1, "a 1x1 loop of positive degree needs rank-1 factors");
        let mut body = MatPoly::constant(self.unitary(n));
        for _ in 1..g {
            let rank = if n >= 2 { self.index(1, n - 1) } else { 1 };
            let q = self.projection(n, rank);
            body = body.mul(&MatPoly::linear_factor(&q)).expect("square");
        }
        certify_loop(body, CERT_TOL).expect("product of unitary loops")
    }

    /// Genus-2 loop `V(1 − Q + zQ)` returned with its parameters.
    pub fn vq_loop(&mut self, n: usize) -> (CMat, CMat, PolyLoop) {
        let v = self.unitary(n);
        let rank = self.index(1, n - 1);
        let q = self.projection(n, rank);
        let body = MatPoly::constant(v.clone()).mul(&MatPoly::linear_factor(&q)).expect("square");
        let l = certify_loop(body, CERT_TOL).expect("unitary");
        (v, q, l)
    }

    /// Loop whose value at `z = 1` has first row `(1/√N, …, 1/√N)`, so the
    /// associated bank satisfies the low-pass condition.
    pub fn lowpass_loop(&mut self, n: usize, g: usize) -> PolyLoop {
        let a = self.genus_loop(n, g);
        let a1 = a.body().eval_unchecked(c64(1.0, 0.0));
        let left = dft_unitary(n) * a1.adjoint();
        let body = a.body().left_mul(&left).expect("square");
        certify_loop(body, CERT_TOL).expect("unitary")
    }
}

/// Normalized DFT matrix; its first row is constant `1/√N`.
pub fn dft_unitary(n: usize) -> CMat {
    let s = 1.0 / (n as f64).sqrt();
    CMat::from_fn(n, n, |i, j| C64::from_polar(s, 2.0 * PI * (i * j) as f64 / n as f64))
}

/// Matrix polynomial with Gaussian coefficients (not unitary).
pub fn random_matpoly(s: &mut Sampler, rows: usize, cols: usize, degree: usize) -> MatPoly {
    let coeffs = (0..=degree).map(|_| s.gaussian_matrix(rows, cols)).collect();
    MatPoly::new(coeffs).expect("consistent shapes")
}
