//! Filter banks `m₀, …, m_{N−1}`, the polyphase correspondence with unitary
//! loops, quadrature-mirror checks, and completion of a low-pass filter to a
//! full bank.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::cpoly::{circle_points, LaurentMatPoly, MatPoly, ScalarPoly};
use crate::error::{Error, Result};
use crate::linalg::{c64, complete_unit_row, identity, op_norm, CMat, C64};
use crate::polyloop::{certify_loop, PolyLoop, CERT_TOL};

/// Samples of the fundamental domain `0 ≤ x < 2π/N` used by the QMF check.
pub const QMF_SAMPLES: usize = 32;
/// Top row vectors at or below this norm are dropped during completion.
pub const ROW_TRIM_TOL: f64 = 1e-11;

/// `N` filters `m₀, …, m_{N−1}` as scalar polynomials in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    n: usize,
    filters: Vec<ScalarPoly>,
}

impl FilterBank {
    pub fn new(n: usize, filters: Vec<ScalarPoly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::WrongDimension("scale N must be positive".into()));
        }
        if filters.len() != n {
            return Err(Error::shape(format!("{n} filters"), format!("{}", filters.len())));
        }
        Ok(Self { n, filters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn filters(&self) -> &[ScalarPoly] {
        &self.filters
    }

    pub fn filter(&self, i: usize) -> &ScalarPoly {
        &self.filters[i]
    }

    pub fn max_degree(&self) -> usize {
        self.filters.iter().map(|f| f.degree()).max().unwrap_or(0)
    }

    /// Smallest `g ≥ 1` with every degree at most `Ng − 1`.
    pub fn genus(&self) -> usize {
        self.max_degree() / self.n + 1
    }

    /// `M(z) = (1/√N) [m_i(ρʲ z)]_{i,j}` with `ρ = e^{2πi/N}`.
    pub fn qmf_matrix(&self, z: C64) -> CMat {
        let n = self.n;
        let s = 1.0 / (n as f64).sqrt();
        CMat::from_fn(n, n, |i, j| {
            let rho = C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
            self.filters[i].eval(rho * z) * s
        })
    }

    pub fn lowpass_report(&self, tol: f64) -> LowPassReport {
        check_lowpass(self.n, &self.filters[0], tol)
    }
}

/// Outcome of the QMF unitarity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmfReport {
    pub max_defect: f64,
    pub pass: bool,
}

/// `max ‖M(z)M(z)* − I‖` over [`QMF_SAMPLES`] points `e^{ix}`, `0 ≤ x < 2π/N`.
pub fn check_qmf(bank: &FilterBank, tol: f64) -> QmfReport {
    let n = bank.n;
    let max_defect = (0..QMF_SAMPLES)
        .map(|k| {
            let x = 2.0 * PI * k as f64 / (QMF_SAMPLES * n) as f64;
            let m = bank.qmf_matrix(C64::from_polar(1.0, x));
            op_norm(&(&m * m.adjoint() - identity(n)))
        })
        .fold(0.0, f64::max);
    QmfReport { max_defect, pass: max_defect <= tol }
}

/// Both forms of the low-pass condition: `m₀(1) = √N` and
/// `A_{0,j}(1) = 1/√N` for every polyphase component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowPassReport {
    pub m0_at_one: C64,
    pub m0_residual: f64,
    pub polyphase_residual: f64,
    pub pass: bool,
    /// Whether the two forms agree on pass/fail.
    pub consistent: bool,
}

pub fn check_lowpass(n: usize, m0: &ScalarPoly, tol: f64) -> LowPassReport {
    let root = (n as f64).sqrt();
    let m0_at_one = m0.eval(c64(1.0, 0.0));
    let m0_residual = (m0_at_one - root).norm();
    let polyphase_residual = (0..n)
        .map(|j| {
            let a: C64 = m0.coeffs().iter().skip(j).step_by(n).sum();
            (a - 1.0 / root).norm()
        })
        .fold(0.0, f64::max);
    let a = m0_residual <= tol;
    let b = polyphase_residual <= tol;
    LowPassReport { m0_at_one, m0_residual, polyphase_residual, pass: a && b, consistent: a == b }
}

/// A candidate low-pass filter at scale `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowPassCandidate {
    pub n: usize,
    pub m0: ScalarPoly,
}

impl LowPassCandidate {
    pub fn new(n: usize, m0: ScalarPoly) -> Result<Self> {
        if n == 0 {
            return Err(Error::WrongDimension("scale N must be positive".into()));
        }
        Ok(Self { n, m0 })
    }

    /// `max |Σ_k |m₀(ρᵏz)|² − N|` over circle samples.
    pub fn qmf_sum_defect(&self) -> f64 {
        let n = self.n;
        circle_points(QMF_SAMPLES, 0.25)
            .into_iter()
            .map(|z| {
                let s: f64 = (0..n)
                    .map(|k| {
                        let rho = C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
                        self.m0.eval(rho * z).norm_sqr()
                    })
                    .sum();
                (s - n as f64).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn lowpass_report(&self, tol: f64) -> LowPassReport {
        check_lowpass(self.n, &self.m0, tol)
    }
}

/// Row vectors `α₀, …, α_{g−1}` in `ℂᴺ` forming the first row
/// `Σ zⁱ αᵢ` of a prospective loop. Each row is stored as a `1×N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RowData {
    n: usize,
    rows: Vec<CMat>,
}

impl RowData {
    pub fn new(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 {
            return Err(Error::shape("non-empty rows", "empty"));
        }
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::shape(format!("rows of length {n}"), format!("{}", r.len())));
            }
            out.push(CMat::from_row_slice(1, n, &r));
        }
        Ok(Self { n, rows: out })
    }

    fn from_mats(n: usize, rows: Vec<CMat>) -> Self {
        Self { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &CMat {
        &self.rows[i]
    }

    /// `|Σᵢ αᵢ₊ⱼ αᵢ* − δ_{j,0}|` for each lag `j = 0, …, g−1`.
    pub fn residuals(&self) -> Vec<f64> {
        let g = self.rows.len();
        (0..g)
            .map(|lag| {
                let mut s = c64(0.0, 0.0);
                for i in 0..g - lag {
                    s += (&self.rows[i + lag] * self.rows[i].adjoint())[(0, 0)];
                }
                if lag == 0 {
                    s -= 1.0;
                }
                s.norm()
            })
            .collect()
    }

    pub fn verify(&self, tol: f64) -> Result<()> {
        for (lag, r) in self.residuals().into_iter().enumerate() {
            if !(r <= tol) {
                return Err(Error::RowConditionViolated { lag, residual: r });
            }
        }
        Ok(())
    }

    /// Drop negligible top rows (keeping at least one).
    fn stripped(mut self) -> Self {
        while self.rows.len() > 1 && self.rows.last().unwrap().norm() <= ROW_TRIM_TOL {
            self.rows.pop();
        }
        self
    }

    /// The row polynomial as a `1×N` matrix polynomial.
    pub fn to_matpoly(&self) -> MatPoly {
        MatPoly::with_trim(self.rows.clone(), 0.0).expect("consistent rows")
    }
}

/// One step of the completion recursion: with `P` the rank-one projection onto
/// the top row, `β(z) = α(z)(1 − P + z⁻¹P)` has one coefficient fewer.
/// Returns `None` when only one row remains after stripping.
pub fn row_reduction_step(rows: &RowData) -> Option<(CMat, RowData)> {
    let rows = rows.clone().stripped();
    let g = rows.rows.len();
    if g <= 1 {
        return None;
    }
    let top = &rows.rows[g - 1];
    let p = top.adjoint() * top / c64(top.norm_squared(), 0.0);
    let one_minus_p = identity(rows.n) - &p;
    let beta = (0..g - 1).map(|j| &rows.rows[j] * &one_minus_p + &rows.rows[j + 1] * &p).collect();
    Some((p, RowData::from_mats(rows.n, beta).stripped()))
}

fn complete_rows(rows: RowData) -> MatPoly {
    let rows = rows.stripped();
    match row_reduction_step(&rows) {
        None => {
            let a = &rows.rows[0];
            let unit: Vec<C64> = (a / c64(a.norm(), 0.0)).iter().copied().collect();
            MatPoly::constant(complete_unit_row(&unit))
        }
        Some((p, beta)) => {
            let b = complete_rows(beta);
            b.mul(&MatPoly::linear_factor(&p)).expect("square")
        }
    }
}

/// A unitary loop whose first row is `Σ zⁱ αᵢ`.
pub fn complete_row(rows: &RowData, tol: f64) -> Result<PolyLoop> {
    rows.verify(tol)?;
    let body = complete_rows(rows.clone());
    let a = certify_loop(body, CERT_TOL.max(tol))?;
    let target = rows.to_matpoly();
    let len = a.genus().max(target.degree() + 1);
    let mismatch = (0..len)
        .map(|k| {
            let row = a.coeff(k).rows(0, 1).into_owned();
            (row - target.coeff(k)).norm()
        })
        .fold(0.0, f64::max);
    if mismatch > CERT_TOL.max(tol) {
        return Err(Error::FactorizationCheck(mismatch));
    }
    Ok(a)
}

/// Polyphase components: `A_{i,j}^{(k)}` is the coefficient of `z^{j+Nk}` in `m_i`.
pub fn filters_to_loop(bank: &FilterBank, tol: f64) -> Result<PolyLoop> {
    let n = bank.n;
    let g = bank.genus();
    let coeffs = (0..g).map(|k| CMat::from_fn(n, n, |i, j| bank.filters[i].coeff(j + n * k))).collect();
    // exact zeros only, so the transform stays a pure reindexing
    let body = MatPoly::with_trim(coeffs, 0.0)?;
    certify_loop(body, tol).map_err(|e| match e {
        Error::NonUnitary(d) => Error::BankNotUnitary(d),
        other => other,
    })
}

/// Inverse of [`filters_to_loop`]: `m_i(z) = Σ_j zʲ A_{i,j}(zᴺ)`.
pub fn loop_to_filters(a: &PolyLoop) -> FilterBank {
    let n = a.n();
    let g = a.genus();
    let filters = (0..n)
        .map(|i| {
            let mut c = vec![c64(0.0, 0.0); n * g];
            for (k, coeff) in a.coeffs().iter().enumerate() {
                for j in 0..n {
                    c[j + n * k] = coeff[(i, j)];
                }
            }
            ScalarPoly::new(c)
        })
        .collect();
    FilterBank { n, filters }
}

/// Complete a low-pass filter to a full bank of degree at most `Ng − 1`.
/// The returned `filters[0]` is the input `m₀` itself.
pub fn complete_lowpass(c: &LowPassCandidate, tol: f64) -> Result<FilterBank> {
    let defect = c.qmf_sum_defect();
    if !(defect <= tol) {
        return Err(Error::QmfConditionViolated(defect));
    }
    let n = c.n;
    let g = c.m0.degree() / n + 1;
    let rows: Vec<Vec<C64>> = (0..g).map(|k| (0..n).map(|j| c.m0.coeff(j + n * k)).collect()).collect();
    let rows = RowData::new(rows)?;
    let a = complete_row(&rows, tol).map_err(|e| match e {
        Error::RowConditionViolated { residual, .. } => Error::QmfConditionViolated(residual),
        other => other,
    })?;
    let mut bank = loop_to_filters(&a);
    let drift = bank.filters[0].max_coeff_diff(&c.m0);
    if drift > tol {
        return Err(Error::FactorizationCheck(drift));
    }
    bank.filters[0] = c.m0.clone();
    Ok(bank)
}

/// Pointwise second row `(−x̄₂, x̄₁)` for a first row `(x₁, x₂)` given as a
/// `1×2` matrix polynomial. On the circle `x̄` sends `zᵏ` to `z⁻ᵏ`, so the result
/// is a Laurent polynomial and in general not a polynomial.
pub fn daubechies_complete_pointwise(row: &MatPoly) -> Result<LaurentMatPoly> {
    if row.rows() != 1 || row.cols() != 2 {
        return Err(Error::WrongDimension(format!("expected a 1x2 row, got {}x{}", row.rows(), row.cols())));
    }
    let d = row.degree();
    let coeffs = (0..=d)
        .rev()
        .map(|k| {
            let c = row.coeff(k);
            CMat::from_row_slice(1, 2, &[-c[(0, 1)].conj(), c[(0, 0)].conj()])
        })
        .collect();
    LaurentMatPoly::new(-(d as i64), coeffs)
}

/// Signed 1-based indices into the first row.
const QUATERNION_4: [[i8; 4]; 4] = [[1, 2, 3, 4], [-2, 1, -4, 3], [-3, 4, 1, -2], [-4, -3, 2, 1]];

const OCTONION_8: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [-2, 1, -4, 3, -6, 5, 8, -7],
    [-3, 4, 1, -2, -7, -8, 5, 6],
    [-4, -3, 2, 1, -8, 7, -6, 5],
    [-5, 6, 7, 8, 1, -2, -3, -4],
    [-6, -5, 8, -7, 2, 1, 4, -3],
    [-7, -8, -5, 6, 3, -4, 1, 2],
    [-8, 7, -6, -5, 4, 3, -2, 1],
];

fn signed_entry(code: i8, x: &[f64]) -> f64 {
    let v = x[code.unsigned_abs() as usize - 1];
    if code < 0 {
        -v
    } else {
        v
    }
}

/// The quaternion (N = 4) or octonion (N = 8) pattern matrix with first row `x`.
pub fn real_orthogonal_completion(x: &[f64]) -> Result<DMatrix<f64>> {
    let n = x.len();
    if n != 4 && n != 8 {
        return Err(Error::WrongDimension(format!("length must be 4 or 8, got {n}")));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitInput(norm - 1.0));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        if n == 4 {
            signed_entry(QUATERNION_4[r][c], x)
        } else {
            signed_entry(OCTONION_8[r][c], x)
        }
    }))
}

/// The complex analogue of the quaternion pattern with conjugations in the
/// lower-left positions. It is unitary for real input but not in general.
pub fn cayley_like_u4(z: &[C64]) -> Result<CMat> {
    if z.len() != 4 {
        return Err(Error::WrongDimension(format!("length must be 4, got {}", z.len())));
    }
    let norm = z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitInput(norm - 1.0));
    }
    // conjugated positions: (1,0),(1,1),(2,0),(2,2),(3,1),(3,2)
    let conj_at = |r: usize, c: usize| matches!((r, c), (1, 0) | (1, 1) | (2, 0) | (2, 2) | (3, 1) | (3, 2));
    Ok(CMat::from_fn(4, 4, |r, c| {
        let code = QUATERNION_4[r][c];
        let mut v = z[code.unsigned_abs() as usize - 1];
        if conj_at(r, c) {
            v = v.conj();
        }
        if code < 0 {
            -v
        } else {
            v
        }
    }))
}
