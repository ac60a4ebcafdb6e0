//! Dense complex matrix polynomials and Laurent polynomials in one variable `z`,
//! evaluated on the unit circle.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c64, op_norm, CMat, C64};

/// Top coefficients with operator norm at or below this are dropped.
pub const DEFAULT_TRIM_TOL: f64 = 1e-11;

/// How far off the unit circle an evaluation point may be.
pub const CIRCLE_TOL: f64 = 1e-12;

/// `count` equispaced points `exp(2πi (k + offset) / count)`.
pub fn circle_points(count: usize, offset: f64) -> Vec<C64> {
    (0..count).map(|k| C64::from_polar(1.0, 2.0 * PI * (k as f64 + offset) / count as f64)).collect()
}

fn check_on_circle(z: C64) -> Result<()> {
    let d = z.norm() - 1.0;
    if d.abs() > CIRCLE_TOL {
        Err(Error::OffCircle(d))
    } else {
        Ok(())
    }
}

/// Negligible in operator norm; Frobenius is tried first since it bounds the
/// operator norm from above.
fn negligible(m: &CMat, tol: f64) -> bool {
    let fro = m.norm();
    fro <= tol || op_norm(m) <= tol
}

/// Matrix-valued polynomial `Σ_k z^k C_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatPoly {
    rows: usize,
    cols: usize,
    coeffs: Vec<CMat>,
}

impl MatPoly {
    /// Build from coefficients (index = power of `z`), trimming negligible top
    /// coefficients at [`DEFAULT_TRIM_TOL`].
    pub fn new(coeffs: Vec<CMat>) -> Result<Self> {
        Self::with_trim(coeffs, DEFAULT_TRIM_TOL)
    }

    pub fn with_trim(coeffs: Vec<CMat>, tol: f64) -> Result<Self> {
        Ok(Self::from_raw(coeffs)?.trimmed(tol))
    }

    /// Build without trimming.
    pub fn from_raw(coeffs: Vec<CMat>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::shape("at least one coefficient", "none"))?;
        let (rows, cols) = first.shape();
        if rows == 0 || cols == 0 {
            return Err(Error::shape("positive dimensions", format!("{rows}x{cols}")));
        }
        for c in &coeffs {
            if c.shape() != (rows, cols) {
                return Err(Error::shape(format!("{rows}x{cols}"), format!("{}x{}", c.nrows(), c.ncols())));
            }
        }
        Ok(Self { rows, cols, coeffs })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, coeffs: vec![CMat::zeros(rows, cols)] }
    }

    pub fn constant(m: CMat) -> Self {
        let (rows, cols) = m.shape();
        Self { rows, cols, coeffs: vec![m] }
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(CMat::identity(n, n))
    }

    /// `z^k M`.
    pub fn monomial(m: CMat, k: usize) -> Self {
        let (rows, cols) = m.shape();
        let mut coeffs = vec![CMat::zeros(rows, cols); k + 1];
        coeffs[k] = m;
        Self { rows, cols, coeffs }
    }

    /// The elementary loop `(1 − Q) + zQ`.
    pub fn linear_factor(q: &CMat) -> Self {
        let n = q.nrows();
        Self { rows: n, cols: n, coeffs: vec![CMat::identity(n, n) - q, q.clone()] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CMat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CMat> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> CMat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CMat::zeros(self.rows, self.cols))
    }

    pub fn leading(&self) -> &CMat {
        self.coeffs.last().expect("non-empty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].iter().all(|z| *z == C64::new(0.0, 0.0))
    }

    pub fn trimmed(mut self, tol: f64) -> Self {
        while self.coeffs.len() > 1 && negligible(self.leading(), tol) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check_same_shape(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        MatPoly::new(coeffs)
    }

    pub fn sub(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check_same_shape(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - other.coeff(k)).collect();
        MatPoly::new(coeffs)
    }

    pub fn scale(&self, s: C64) -> MatPoly {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        MatPoly::new(coeffs).expect("shape preserved")
    }

    /// Left-multiply every coefficient by a constant matrix.
    pub fn left_mul(&self, m: &CMat) -> Result<MatPoly> {
        if m.ncols() != self.rows {
            return Err(Error::shape(format!("? x {}", self.rows), format!("{}x{}", m.nrows(), m.ncols())));
        }
        MatPoly::new(self.coeffs.iter().map(|c| m * c).collect())
    }

    /// Right-multiply every coefficient by a constant matrix.
    pub fn right_mul(&self, m: &CMat) -> Result<MatPoly> {
        if m.nrows() != self.cols {
            return Err(Error::shape(format!("{} x ?", self.cols), format!("{}x{}", m.nrows(), m.ncols())));
        }
        MatPoly::new(self.coeffs.iter().map(|c| c * m).collect())
    }

    /// Polynomial product (coefficient convolution).
    pub fn mul(&self, other: &MatPoly) -> Result<MatPoly> {
        if self.cols != other.rows {
            return Err(Error::shape(format!("{} rows on the right factor", self.cols), format!("{}", other.rows)));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![CMat::zeros(self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        MatPoly::new(coeffs)
    }

    /// `z ↦ p(z)*` on the circle: conjugate-transpose each coefficient and send
    /// `z^k` to `z^{-k}`.
    pub fn adjoint(&self) -> LaurentMatPoly {
        let deg = self.degree() as i64;
        let coeffs = self.coeffs.iter().rev().map(|c| c.adjoint()).collect();
        LaurentMatPoly::new(-deg, coeffs).expect("shapes agree")
    }

    pub fn to_laurent(&self) -> LaurentMatPoly {
        LaurentMatPoly::new(0, self.coeffs.clone()).expect("shapes agree")
    }

    /// Evaluate at a point of the unit circle.
    pub fn eval(&self, z: C64) -> Result<CMat> {
        check_on_circle(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// Horner evaluation at an arbitrary complex point.
    pub fn eval_unchecked(&self, z: C64) -> CMat {
        let mut acc = CMat::zeros(self.rows, self.cols);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Scalar polynomial `det p(z)` as a 1×1 matrix polynomial, obtained by
    /// evaluating at `N·deg + 1` roots of unity and inverting the DFT.
    pub fn det_poly(&self) -> Result<MatPoly> {
        if self.rows != self.cols {
            return Err(Error::shape("square", format!("{}x{}", self.rows, self.cols)));
        }
        let m = self.rows * self.degree() + 1;
        let nodes = circle_points(m, 0.0);
        let values: Vec<C64> = nodes.iter().map(|&w| self.eval_unchecked(w).determinant()).collect();
        let coeffs = (0..m)
            .map(|j| {
                let s: C64 = values.iter().zip(&nodes).map(|(v, w)| v * w.powi(-(j as i32))).sum();
                CMat::from_element(1, 1, s / m as f64)
            })
            .collect();
        MatPoly::new(coeffs)
    }

    fn check_same_shape(&self, other: &MatPoly) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape(format!("{}x{}", self.rows, self.cols), format!("{}x{}", other.rows, other.cols)));
        }
        Ok(())
    }
}

/// Matrix-valued Laurent polynomial `Σ_j z^{min_deg + j} C_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMatPoly {
    min_deg: i64,
    rows: usize,
    cols: usize,
    coeffs: Vec<CMat>,
}

impl LaurentMatPoly {
    /// Build and trim negligible coefficients at both ends.
    pub fn new(min_deg: i64, coeffs: Vec<CMat>) -> Result<Self> {
        let inner = MatPoly::from_raw(coeffs)?;
        let (rows, cols) = (inner.rows, inner.cols);
        let mut coeffs = inner.coeffs;
        while coeffs.len() > 1 && negligible(coeffs.last().unwrap(), DEFAULT_TRIM_TOL) {
            coeffs.pop();
        }
        let mut min_deg = min_deg;
        let lead = coeffs.iter().position(|c| !negligible(c, DEFAULT_TRIM_TOL)).unwrap_or(coeffs.len() - 1);
        if lead > 0 {
            coeffs.drain(..lead);
            min_deg += lead as i64;
        }
        Ok(Self { min_deg, rows, cols, coeffs })
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[CMat] {
        &self.coeffs
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: i64) -> CMat {
        let idx = k - self.min_deg;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            CMat::zeros(self.rows, self.cols)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_deg >= 0
    }

    /// Convert to an ordinary polynomial when no negative powers remain.
    pub fn to_matpoly(&self) -> Option<MatPoly> {
        if self.min_deg < 0 {
            return None;
        }
        let coeffs = (0..=self.max_deg()).map(|k| self.coeff(k)).collect();
        MatPoly::new(coeffs).ok()
    }

    pub fn add(&self, other: &LaurentMatPoly) -> Result<LaurentMatPoly> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape(format!("{}x{}", self.rows, self.cols), format!("{}x{}", other.rows, other.cols)));
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().max(other.max_deg());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k)).collect();
        LaurentMatPoly::new(lo, coeffs)
    }

    pub fn mul(&self, other: &LaurentMatPoly) -> Result<LaurentMatPoly> {
        if self.cols != other.rows {
            return Err(Error::shape(format!("{} rows on the right factor", self.cols), format!("{}", other.rows)));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![CMat::zeros(self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentMatPoly::new(self.min_deg + other.min_deg, coeffs)
    }

    pub fn adjoint(&self) -> LaurentMatPoly {
        let coeffs = self.coeffs.iter().rev().map(|c| c.adjoint()).collect();
        LaurentMatPoly::new(-self.max_deg(), coeffs).expect("shapes agree")
    }

    pub fn eval(&self, z: C64) -> Result<CMat> {
        check_on_circle(z)?;
        let mut acc = CMat::zeros(self.rows, self.cols);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc * z.powi(self.min_deg as i32))
    }
}

/// Scalar polynomial `Σ_k c_k z^k`. Only exactly-zero top coefficients are
/// dropped, so coefficient lists survive round trips unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarPoly {
    coeffs: Vec<C64>,
}

impl ScalarPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == c64(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(c64(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| c64(x, 0.0)).collect())
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![c64(0.0, 0.0); k + 1];
        coeffs[k] = c64(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(c64(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn add(&self, other: &ScalarPoly) -> ScalarPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        ScalarPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, s: C64) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Largest coefficient-wise distance to another polynomial.
    pub fn max_coeff_diff(&self, other: &ScalarPoly) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_matpoly, Sampler};

    fn scalar(coeffs: &[f64]) -> MatPoly {
        MatPoly::new(coeffs.iter().map(|&x| CMat::from_element(1, 1, c64(x, 0.0))).collect()).unwrap()
    }

    fn test_points(s: &mut Sampler) -> Vec<C64> {
        (0..16).map(|_| s.circle_point()).collect()
    }

    #[test]
    fn add_identities() {
        let p = scalar(&[1.0, 2.0, 3.0]);
        assert_eq!(p.add(&MatPoly::zero(1, 1)).unwrap(), p);
        let s = scalar(&[1.0]).add(&scalar(&[0.0, 1.0])).unwrap();
        assert_eq!(s, scalar(&[1.0, 1.0]));
        assert_eq!(s.degree(), 1);
    }

    #[test]
    fn add_shape_mismatch() {
        let p = MatPoly::identity(2);
        let q = MatPoly::identity(3);
        assert!(matches!(p.add(&q), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(p.mul(&q), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn add_is_pointwise() {
        let mut s = Sampler::new(11);
        let p = random_matpoly(&mut s, 3, 2, 3);
        let q = random_matpoly(&mut s, 3, 2, 3);
        let sum = p.add(&q).unwrap();
        for z in test_points(&mut s) {
            let d = sum.eval(z).unwrap() - (p.eval(z).unwrap() + q.eval(z).unwrap());
            assert!(d.norm() < 1e-12);
        }
    }

    #[test]
    fn mul_identities() {
        let mut s = Sampler::new(3);
        let p = random_matpoly(&mut s, 3, 3, 2);
        assert_eq!(p.mul(&MatPoly::identity(3)).unwrap(), p);
        let prod = scalar(&[1.0, 1.0]).mul(&scalar(&[1.0, -1.0])).unwrap();
        assert_eq!(prod, scalar(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn mul_is_pointwise() {
        let mut s = Sampler::new(5);
        let p = random_matpoly(&mut s, 3, 4, 2);
        let q = random_matpoly(&mut s, 4, 2, 3);
        let prod = p.mul(&q).unwrap();
        assert!(prod.degree() <= 5);
        for z in test_points(&mut s) {
            let d = prod.eval(z).unwrap() - p.eval(z).unwrap() * q.eval(z).unwrap();
            assert!(d.norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_examples() {
        let v = CMat::from_row_slice(2, 2, &[c64(1.0, 2.0), c64(0.0, 1.0), c64(3.0, 0.0), c64(-1.0, -1.0)]);
        let a = MatPoly::constant(v.clone()).adjoint();
        assert_eq!(a.min_deg(), 0);
        assert_eq!(a.coeff(0), v.adjoint());

        let zq = MatPoly::monomial(v.clone(), 1).adjoint();
        assert_eq!(zq.min_deg(), -1);
        assert_eq!(zq.max_deg(), -1);
        assert_eq!(zq.coeff(-1), v.adjoint());
    }

    #[test]
    fn adjoint_is_pointwise_conjugate_transpose() {
        let mut s = Sampler::new(8);
        let p = random_matpoly(&mut s, 3, 2, 4);
        let pa = p.adjoint();
        for z in test_points(&mut s) {
            let d = pa.eval(z).unwrap() - p.eval(z).unwrap().adjoint();
            assert!(d.norm() < 1e-13);
        }
    }

    #[test]
    fn eval_examples() {
        let p = scalar(&[1.0, 2.0, 3.0]);
        assert_eq!(p.eval(c64(1.0, 0.0)).unwrap()[(0, 0)], c64(6.0, 0.0));
        let diag = MatPoly::new(vec![CMat::identity(2, 2), CMat::identity(2, 2)]).unwrap();
        assert!(diag.eval(c64(-1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(matches!(p.eval(c64(1.1, 0.0)), Err(Error::OffCircle(_))));
        assert!(p.to_laurent().eval(c64(0.0, 0.5)).is_err());
    }

    #[test]
    fn det_examples() {
        let mut s = Sampler::new(1);
        let v = s.unitary(3);
        let d = MatPoly::constant(v.clone()).det_poly().unwrap();
        assert_eq!(d.degree(), 0);
        assert!((d.coeff(0)[(0, 0)].norm() - 1.0).abs() < 1e-13);
        assert!((d.coeff(0)[(0, 0)] - v.determinant()).norm() < 1e-13);

        let mut top = CMat::zeros(2, 2);
        top[(1, 1)] = c64(1.0, 0.0);
        let mut bottom = CMat::zeros(2, 2);
        bottom[(0, 0)] = c64(1.0, 0.0);
        let diag = MatPoly::new(vec![bottom, top]).unwrap();
        let d = diag.det_poly().unwrap();
        assert_eq!(d.degree(), 1);
        assert!(d.coeff(0)[(0, 0)].norm() < 1e-14);
        assert!((d.coeff(1)[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);

        let q = s.projection(3, 1);
        let d = MatPoly::linear_factor(&q).det_poly().unwrap();
        assert_eq!(d.degree(), 1);
        assert!(d.coeff(0)[(0, 0)].norm() < 1e-13);
        assert!((d.coeff(1)[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn trimming_preserves_values() {
        let mut s = Sampler::new(2);
        let p = random_matpoly(&mut s, 2, 2, 2);
        let mut coeffs = p.coeffs().to_vec();
        coeffs.push(CMat::from_element(2, 2, c64(1e-14, 0.0)));
        let raw = MatPoly::from_raw(coeffs).unwrap();
        let trimmed = raw.clone().trimmed(DEFAULT_TRIM_TOL);
        assert_eq!(trimmed.degree(), 2);
        for z in test_points(&mut s) {
            let d = raw.eval(z).unwrap() - trimmed.eval(z).unwrap();
            assert!(d.norm() < 1e-13);
        }
    }

    #[test]
    fn laurent_arithmetic_matches_pointwise() {
        let mut s = Sampler::new(9);
        let p = random_matpoly(&mut s, 2, 2, 2);
        let q = random_matpoly(&mut s, 2, 2, 1);
        let l = p.adjoint().mul(&q.to_laurent()).unwrap();
        let sum = l.add(&p.to_laurent()).unwrap();
        for z in test_points(&mut s) {
            let expect = p.eval(z).unwrap().adjoint() * q.eval(z).unwrap();
            assert!((l.eval(z).unwrap() - &expect).norm() < 1e-12);
            assert!((sum.eval(z).unwrap() - expect - p.eval(z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn scalar_poly_basics() {
        let p = ScalarPoly::from_real(&[1.0, 0.0, 2.0, 0.0]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(c64(1.0, 0.0)), c64(3.0, 0.0));
        assert_eq!(ScalarPoly::monomial(3).coeff(3), c64(1.0, 0.0));
        assert_eq!(p.add(&p.scale(c64(-1.0, 0.0))).degree(), 0);
    }
}
