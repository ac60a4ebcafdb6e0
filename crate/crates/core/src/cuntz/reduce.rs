use crate::cpoly::MatPoly;
use crate::error::{Error, Result};
use crate::filters::{check_qmf, loop_to_filters, FilterBank};
use crate::linalg::{c64, max_abs, CMat};
use crate::polyloop::{certify_loop, PolyLoop, CERT_TOL};

use super::corner::corner_isometries;
use super::sigma::sigma_matrix;

/// `|λ₀ − 1|` below this counts as `λ₀ = 1`.
pub const LAMBDA0_TOL: f64 = 1e-9;

/// `(A⁽⁰⁾* A⁽⁰⁾)₀₀`.
pub fn lambda0(a: &PolyLoop) -> f64 {
    let a0 = a.coeff(0);
    let v = (a0.adjoint() * &a0)[(0, 0)];
    assert!(v.im.abs() < 1e-12, "diagonal entry of a Gram matrix is real");
    v.re
}

/// The five equivalent conditions for `λ₀ = 1`, each measured on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionConditions {
    /// `λ₀(A) = 1`.
    pub lambda0_is_one: bool,
    /// `A(1)⁻¹A(z) = (1) ⊕ B(z)`.
    pub block_form: bool,
    /// The bank of `A(1)⁻¹A` has `m₀ ≡ 1`.
    pub unit_lowpass: bool,
    /// `Tᵢ* e₀ ∈ ℂe₀` for every `i`.
    pub e0_eigenvector: bool,
    /// `σ*(E₀,₀) ∈ ℂE₀,₀`.
    pub sigma_star_line: bool,
    pub block_residual: f64,
}

impl ReductionConditions {
    pub fn all(&self) -> bool {
        self.lambda0_is_one && self.block_form && self.unit_lowpass && self.e0_eigenvector && self.sigma_star_line
    }

    pub fn none(&self) -> bool {
        !(self.lambda0_is_one || self.block_form || self.unit_lowpass || self.e0_eigenvector || self.sigma_star_line)
    }

    pub fn agree(&self) -> bool {
        self.all() || self.none()
    }
}

/// `A(1)* A(z)`.
fn normalized(a: &PolyLoop) -> MatPoly {
    let v = a.body().eval_unchecked(c64(1.0, 0.0));
    a.body().left_mul(&v.adjoint()).expect("square")
}

/// Largest deviation of `C(z)` from the shape `(1) ⊕ B(z)`.
fn block_residual(c: &MatPoly) -> f64 {
    let n = c.rows();
    let mut worst = 0.0f64;
    for (k, ck) in c.coeffs().iter().enumerate() {
        let corner = if k == 0 { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
        worst = worst.max((ck[(0, 0)] - corner).norm());
        for j in 1..n {
            worst = worst.max(ck[(0, j)].norm()).max(ck[(j, 0)].norm());
        }
    }
    worst
}

pub fn reduction_conditions(a: &PolyLoop, tol: f64) -> Result<ReductionConditions> {
    let l0 = lambda0(a);
    let c = normalized(a);
    let residual = block_residual(&c);

    let m0 = loop_to_filters(&PolyLoop::trusted(c)).filter(0).clone();
    let unit = m0
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, z)| if k == 0 { (z - 1.0).norm() } else { z.norm() })
        .fold(0.0, f64::max);

    let model = corner_isometries(a)?;
    let column = (0..a.n())
        .map(|i| {
            let col = model.v_adj(i).column(0);
            (1..model.dim()).map(|m| col[m].norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);

    let s = sigma_matrix(&model, &model)?;
    let mut e00 = CMat::zeros(model.dim(), model.dim());
    e00[(0, 0)] = c64(1.0, 0.0);
    let mut image = s.apply_adjoint(&e00);
    image[(0, 0)] = c64(0.0, 0.0);
    let line = max_abs(&image);

    Ok(ReductionConditions {
        lambda0_is_one: (l0 - 1.0).abs() < tol,
        block_form: residual < tol,
        unit_lowpass: unit < tol,
        e0_eigenvector: column < tol,
        sigma_star_line: line < tol,
        block_residual: residual,
    })
}

/// Data of an `N → N−1` reduction.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub lambda0: f64,
    /// `A(1)`.
    pub v: CMat,
    /// Lower-right block of `A(1)⁻¹A(z)`, a loop over `U(N−1)`.
    pub b: PolyLoop,
    /// Bank of `A(1)⁻¹A(z)`; its `m₀` is identically 1.
    pub modified_bank: FilterBank,
    /// Bank of `B` at scale `N−1` (only for `N ≥ 3`).
    pub reduced_bank: Option<FilterBank>,
    pub conditions: ReductionConditions,
}

/// Split off the trivial summand when `λ₀(A) = 1`; `None` otherwise.
pub fn reduce_scale(a: &PolyLoop, tol: f64) -> Result<Option<Reduction>> {
    let l0 = lambda0(a);
    if (l0 - 1.0).abs() >= tol {
        return Ok(None);
    }
    let conditions = reduction_conditions(a, tol)?;
    if !conditions.block_form {
        return Err(Error::BlockFormViolated(conditions.block_residual));
    }
    let n = a.n();
    let v = a.body().eval_unchecked(c64(1.0, 0.0));
    let c = normalized(a);
    let b_coeffs = c.coeffs().iter().map(|ck| ck.view((1, 1), (n - 1, n - 1)).into_owned()).collect();
    let b = certify_loop(MatPoly::new(b_coeffs)?, CERT_TOL.max(tol))?;
    let modified_bank = loop_to_filters(&PolyLoop::trusted(c));
    let reduced_bank = if n >= 3 {
        let bank = loop_to_filters(&b);
        let q = check_qmf(&bank, CERT_TOL);
        if !q.pass {
            return Err(Error::BankNotUnitary(q.max_defect));
        }
        Some(bank)
    } else {
        None
    };
    Ok(Some(Reduction { lambda0: l0, v, b, modified_bank, reduced_bank, conditions }))
}
