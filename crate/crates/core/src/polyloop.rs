//! Unitary polynomial loops, their McMillan degree, and factorization into
//! elementary factors `(1 − P) + zP`.

use crate::cpoly::{circle_points, MatPoly};
use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_eigen_desc, identity, normalize_phase, op_norm, projection_defect, svd_sorted, unitarity_defect,
    CMat, CVec, C64,
};

/// Default certification tolerance for unitarity.
pub const CERT_TOL: f64 = 1e-9;
/// Number of circle samples used by certification.
pub const CIRCLE_SAMPLES: usize = 32;
/// Relative singular-value threshold for the rank of a top coefficient.
pub const RANK_TOL: f64 = 1e-8;
/// Residual allowed for the determinant to count as a monomial.
pub const MONOMIAL_TOL: f64 = 1e-9;

/// A square matrix polynomial certified unitary on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLoop {
    n: usize,
    body: MatPoly,
    unitarity_defect: f64,
}

/// Largest of the pointwise defect `‖A(z)A(z)* − I‖` over circle samples and the
/// coefficient defect `‖Σ_k A_k* A_{k+m} − δ_{m,0} I‖` over lags `m`.
fn measure_defect(body: &MatPoly) -> f64 {
    let n = body.rows();
    // offset keeps samples away from roots of unity
    let pointwise = circle_points(CIRCLE_SAMPLES, 0.357_142_857)
        .into_iter()
        .map(|z| op_norm(&(body.eval_unchecked(z) * body.eval_unchecked(z).adjoint() - identity(n))))
        .fold(0.0, f64::max);
    let c = body.coeffs();
    let mut coeff = 0.0f64;
    for lag in 0..c.len() {
        let mut acc = CMat::zeros(n, n);
        for k in 0..c.len() - lag {
            acc += c[k].adjoint() * &c[k + lag];
        }
        if lag == 0 {
            acc -= identity(n);
        }
        coeff = coeff.max(op_norm(&acc));
    }
    pointwise.max(coeff)
}

/// Certify that `body` is a unitary loop within `tol`.
pub fn certify_loop(body: MatPoly, tol: f64) -> Result<PolyLoop> {
    if body.rows() != body.cols() {
        return Err(Error::shape("square matrix polynomial", format!("{}x{}", body.rows(), body.cols())));
    }
    let defect = measure_defect(&body);
    if !(defect <= tol) {
        return Err(Error::NonUnitary(defect));
    }
    Ok(PolyLoop { n: body.rows(), unitarity_defect: defect, body })
}

impl PolyLoop {
    pub fn identity(n: usize) -> Self {
        Self { n, body: MatPoly::identity(n), unitarity_defect: 0.0 }
    }

    /// Constant loop; fails unless `v` is unitary within [`CERT_TOL`].
    pub fn constant(v: CMat) -> Result<Self> {
        certify_loop(MatPoly::constant(v), CERT_TOL)
    }

    /// Certify from a coefficient list.
    pub fn from_coeffs(coeffs: Vec<CMat>, tol: f64) -> Result<Self> {
        certify_loop(MatPoly::new(coeffs)?, tol)
    }

    /// Build without failing; the measured defect is still recorded.
    pub(crate) fn trusted(body: MatPoly) -> Self {
        let defect = measure_defect(&body);
        Self { n: body.rows(), unitarity_defect: defect, body }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn body(&self) -> &MatPoly {
        &self.body
    }

    pub fn degree(&self) -> usize {
        self.body.degree()
    }

    /// Number of coefficients, `degree + 1`.
    pub fn genus(&self) -> usize {
        self.body.degree() + 1
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.unitarity_defect
    }

    /// Coefficient `A^{(k)}`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> CMat {
        self.body.coeff(k)
    }

    pub fn coeffs(&self) -> &[CMat] {
        self.body.coeffs()
    }

    pub fn eval(&self, z: C64) -> Result<CMat> {
        self.body.eval(z)
    }

    /// Pointwise product, re-certified.
    pub fn mul(&self, other: &PolyLoop) -> Result<PolyLoop> {
        if self.n != other.n {
            return Err(Error::ScaleMismatch(self.n, other.n));
        }
        certify_loop(self.body.mul(&other.body)?, CERT_TOL)
    }

    /// Largest pointwise distance to another loop over circle samples.
    pub fn distance(&self, other: &PolyLoop) -> f64 {
        circle_points(CIRCLE_SAMPLES, 0.1)
            .into_iter()
            .map(|z| op_norm(&(self.body.eval_unchecked(z) - other.body.eval_unchecked(z))))
            .fold(0.0, f64::max)
    }
}

/// Winding number of `det A(z)`.
pub fn mcmillan_degree(a: &PolyLoop) -> Result<usize> {
    let d = a.body.det_poly()?;
    let mods: Vec<f64> = d.coeffs().iter().map(|c| c[(0, 0)].norm()).collect();
    let top = (0..mods.len()).max_by(|&i, &j| mods[i].total_cmp(&mods[j])).unwrap_or(0);
    let residual = mods.iter().enumerate().filter(|&(i, _)| i != top).map(|(_, &m)| m).fold(0.0, f64::max);
    if residual > MONOMIAL_TOL {
        return Err(Error::NotMonomial(residual));
    }
    Ok(top)
}

/// A loop `(1 − Q) + zQ` with `Q` an orthogonal projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryFactor {
    projection: CMat,
}

impl ElementaryFactor {
    pub fn new(projection: CMat) -> Result<Self> {
        let d = projection_defect(&projection);
        if !(d <= 1e-10) {
            return Err(Error::InvalidProjection(d));
        }
        Ok(Self { projection })
    }

    pub fn projection(&self) -> &CMat {
        &self.projection
    }

    pub fn rank(&self) -> usize {
        self.projection.trace().re.round().max(0.0) as usize
    }

    pub fn to_matpoly(&self) -> MatPoly {
        MatPoly::linear_factor(&self.projection)
    }
}

/// `A = F₁ ⋯ F_d · V` with rank-one factors, together with the per-degree
/// projections found while peeling.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub rank_one_factors: Vec<ElementaryFactor>,
    pub degree_projections: Vec<CMat>,
    pub constant: CMat,
}

impl Factorization {
    /// Multiply the factors back together (unchecked).
    pub fn reconstruct(&self) -> MatPoly {
        let n = self.constant.nrows();
        let mut acc = MatPoly::identity(n);
        for f in &self.rank_one_factors {
            acc = acc.mul(&f.to_matpoly()).expect("square factors");
        }
        acc.mul(&MatPoly::constant(self.constant.clone())).expect("square factors")
    }
}

/// Orthogonal projection onto the range of `m`, with the rank decided by
/// singular values relative to the largest.
fn range_projection(m: &CMat) -> Result<CMat> {
    let (s, u, _) = svd_sorted(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let tol = RANK_TOL * smax;
    if let Some(&bad) = s.iter().find(|&&x| x > 0.1 * tol && x < 10.0 * tol) {
        return Err(Error::RankAmbiguous(bad));
    }
    let rank = s.iter().filter(|&&x| x > tol).count();
    let cols = u.columns(0, rank);
    Ok(cols * cols.adjoint())
}

/// Split off one elementary factor from the left: `A = ((1 − Q) + zQ) W` with
/// `Q` the projection onto the range of the top coefficient of `A`.
pub fn peel_factor(a: &PolyLoop) -> Result<(CMat, PolyLoop)> {
    let k = a.degree();
    if k == 0 {
        return Err(Error::DegreeZero);
    }
    let c = a.coeffs();
    let q = range_projection(&c[k])?;
    let one_minus_q = identity(a.n) - &q;

    // ((1−Q) + z⁻¹Q) A: the z⁻¹ term Q A₀ and the z^k term (1−Q) A_k must vanish
    let low = op_norm(&(&q * &c[0]));
    let high = op_norm(&(&one_minus_q * &c[k]));
    let leftover = low.max(high);
    if leftover > 1e-8 {
        return Err(Error::FactorizationCheck(leftover));
    }
    let coeffs: Vec<CMat> = (0..k).map(|j| &one_minus_q * &c[j] + &q * &c[j + 1]).collect();
    let w = PolyLoop::trusted(MatPoly::new(coeffs)?);
    if w.degree() + 1 != k {
        return Err(Error::FactorizationCheck(op_norm(w.body.leading())));
    }
    Ok((q, w))
}

/// Rank-one projections summing to `q`, from its eigenvectors with eigenvalue
/// near 1, each phase-normalized and ordered by first significant component.
fn split_rank_one(q: &CMat) -> Vec<CMat> {
    let (vals, vecs) = hermitian_eigen_desc(q);
    let mut vs: Vec<CVec> = vals
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l > 0.5)
        .map(|(i, _)| {
            let mut v: CVec = vecs.column(i).into_owned();
            normalize_phase(&mut v, 1e-8);
            v
        })
        .collect();
    let key = |v: &CVec| {
        let p = v.iter().position(|z| z.norm() > 1e-8).unwrap_or(v.len());
        (p, -v[p.min(v.len() - 1)].norm())
    };
    vs.sort_by(|a, b| {
        let (pa, ma) = key(a);
        let (pb, mb) = key(b);
        pa.cmp(&pb).then(ma.total_cmp(&mb))
    });
    vs.iter().map(|v| v * v.adjoint()).collect()
}

/// Peel until constant, splitting each degree-level projection into rank-one
/// pieces.
pub fn factorize(a: &PolyLoop) -> Result<Factorization> {
    let mut degree_projections = Vec::new();
    let mut rest = a.clone();
    while rest.degree() > 0 {
        let (q, w) = peel_factor(&rest)?;
        degree_projections.push(q);
        rest = w;
    }
    let mut rank_one_factors = Vec::new();
    for q in &degree_projections {
        for p in split_rank_one(q) {
            rank_one_factors.push(ElementaryFactor { projection: p });
        }
    }
    let f = Factorization { rank_one_factors, degree_projections, constant: rest.body.coeff(0) };
    let err = PolyLoop::trusted(f.reconstruct()).distance(a);
    if err > CERT_TOL {
        return Err(Error::FactorizationCheck(err));
    }
    Ok(f)
}

/// Multiply elementary factors and a constant unitary into a certified loop.
pub fn compose(factors: &[ElementaryFactor], v: &CMat) -> Result<PolyLoop> {
    let d = unitarity_defect(v);
    if !(d <= 1e-10) {
        return Err(Error::NonUnitary(d));
    }
    let mut acc = MatPoly::identity(v.nrows());
    for f in factors {
        let pd = projection_defect(&f.projection);
        if !(pd <= 1e-10) {
            return Err(Error::InvalidProjection(pd));
        }
        acc = acc.mul(&f.to_matpoly())?;
    }
    certify_loop(acc.mul(&MatPoly::constant(v.clone()))?, CERT_TOL)
}

/// `A = V (1 − Q₁ + zQ₁) ⋯ (1 − Q_{g−1} + zQ_{g−1})` with the unitary on the
/// left; the outer coefficients are then `V ∏(1 − Qⱼ)` and `V ∏ Qⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientForm {
    pub v: CMat,
    pub projections: Vec<CMat>,
}

pub fn coefficient_form(a: &PolyLoop) -> Result<CoefficientForm> {
    let f = factorize(a)?;
    let v = f.constant.clone();
    let projections: Vec<CMat> = f.degree_projections.iter().map(|q| v.adjoint() * q * &v).collect();
    let n = a.n;
    let mut bottom = v.clone();
    let mut top = v.clone();
    for q in &projections {
        bottom *= identity(n) - q;
        top *= q;
    }
    let g = a.genus();
    let r0 = op_norm(&(bottom - a.coeff(0)));
    let r1 = if g > 1 { op_norm(&(top - a.coeff(g - 1))) } else { 0.0 };
    let residual = r0.max(r1);
    if residual > CERT_TOL {
        return Err(Error::FactorizationCheck(residual));
    }
    Ok(CoefficientForm { v, projections })
}

/// `diag(1, …, 1, z)`-style helper: the diagonal loop with the given monomial
/// exponents.
pub fn diagonal_monomial_loop(exponents: &[usize]) -> PolyLoop {
    let n = exponents.len();
    let deg = exponents.iter().copied().max().unwrap_or(0);
    let coeffs = (0..=deg)
        .map(|k| CMat::from_fn(n, n, |i, j| if i == j && exponents[i] == k { c64(1.0, 0.0) } else { c64(0.0, 0.0) }))
        .collect();
    PolyLoop::trusted(MatPoly::new(coeffs).expect("square"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn hadamard() -> CMat {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        CMat::from_row_slice(2, 2, &[c64(s, 0.0), c64(s, 0.0), c64(s, 0.0), c64(-s, 0.0)])
    }

    fn e(n: usize, i: usize) -> CMat {
        CMat::from_fn(n, n, |r, c| if r == i && c == i { c64(1.0, 0.0) } else { c64(0.0, 0.0) })
    }

    #[test]
    fn certification_examples() {
        assert_eq!(PolyLoop::identity(3).unitarity_defect(), 0.0);
        let h = PolyLoop::constant(hadamard()).unwrap();
        assert!(h.unitarity_defect() < 1e-15);
        let bad = MatPoly::new(vec![identity(2), e(2, 1)]).unwrap();
        assert!(matches!(certify_loop(bad, CERT_TOL), Err(Error::NonUnitary(_))));
    }

    #[test]
    fn degree_examples() {
        let mut s = Sampler::new(1);
        assert_eq!(mcmillan_degree(&PolyLoop::constant(s.unitary(3)).unwrap()).unwrap(), 0);
        assert_eq!(mcmillan_degree(&diagonal_monomial_loop(&[0, 1])).unwrap(), 1);
        let fs: Vec<_> = s.rank_one_projections(4, 5).into_iter().map(|p| ElementaryFactor::new(p).unwrap()).collect();
        let l = compose(&fs, &s.unitary(4)).unwrap();
        assert_eq!(mcmillan_degree(&l).unwrap(), 5);
    }

    #[test]
    fn peel_examples() {
        let (q, w) = peel_factor(&diagonal_monomial_loop(&[0, 1])).unwrap();
        assert!((q - e(2, 1)).norm() < 1e-14);
        assert!((w.coeff(0) - identity(2)).norm() < 1e-14);
        assert_eq!(w.degree(), 0);

        let mut s = Sampler::new(2);
        let q0 = s.projection(4, 2);
        let v = s.unitary(4);
        let a =
            certify_loop(MatPoly::linear_factor(&q0).mul(&MatPoly::constant(v.clone())).unwrap(), CERT_TOL).unwrap();
        let (q, w) = peel_factor(&a).unwrap();
        assert!((q - q0).norm() < 1e-12);
        assert!((w.coeff(0) - v).norm() < 1e-12);

        assert_eq!(peel_factor(&PolyLoop::identity(2)), Err(Error::DegreeZero));
    }

    #[test]
    fn peel_reconstructs_random_loop() {
        let mut s = Sampler::new(3);
        let a = s.genus_loop(4, 4);
        let (q, w) = peel_factor(&a).unwrap();
        assert_eq!(w.degree(), 2);
        let back = PolyLoop::trusted(MatPoly::linear_factor(&q).mul(w.body()).unwrap());
        assert!(back.distance(&a) < 1e-10);
    }

    #[test]
    fn factorize_examples() {
        let mut s = Sampler::new(4);
        let v = s.unitary(3);
        let f = factorize(&PolyLoop::constant(v.clone()).unwrap()).unwrap();
        assert!(f.rank_one_factors.is_empty());
        assert!((f.constant - v).norm() < 1e-14);

        let f = factorize(&diagonal_monomial_loop(&[0, 1])).unwrap();
        assert_eq!(f.rank_one_factors.len(), 1);
        assert!((f.rank_one_factors[0].projection() - e(2, 1)).norm() < 1e-14);
        assert!((f.constant - identity(2)).norm() < 1e-14);

        let v = s.unitary(5);
        let q = s.projection(5, 3);
        let a = certify_loop(MatPoly::constant(v).mul(&MatPoly::linear_factor(&q)).unwrap(), CERT_TOL).unwrap();
        let f = factorize(&a).unwrap();
        assert_eq!(f.rank_one_factors.len(), 3);
        let sum = f.rank_one_factors.iter().fold(CMat::zeros(5, 5), |acc, p| acc + p.projection());
        // V(1−Q+zQ) = (1−Q'+zQ')V with Q' = VQV*
        assert!((sum - &f.degree_projections[0]).norm() < 1e-10);
        assert!((f.constant.adjoint() * &f.degree_projections[0] * &f.constant - q).norm() < 1e-10);
    }

    #[test]
    fn compose_examples() {
        let mut s = Sampler::new(5);
        let v = s.unitary(3);
        let l = compose(&[], &v).unwrap();
        assert_eq!(l.degree(), 0);
        let l = compose(&[ElementaryFactor::new(e(2, 1)).unwrap()], &identity(2)).unwrap();
        assert!(l.distance(&diagonal_monomial_loop(&[0, 1])) < 1e-15);
        assert!(ElementaryFactor::new(identity(2) * c64(2.0, 0.0)).is_err());
        assert!(matches!(compose(&[], &(identity(2) * c64(2.0, 0.0))), Err(Error::NonUnitary(_))));
    }

    #[test]
    fn coefficient_form_examples() {
        let mut s = Sampler::new(6);
        let (v, q, a) = s.vq_loop(4);
        let cf = coefficient_form(&a).unwrap();
        assert_eq!(cf.projections.len(), 1);
        assert!((&cf.v - &v).norm() < 1e-10);
        assert!((&cf.projections[0] - &q).norm() < 1e-10);
        assert!((a.coeff(0) - &v * (identity(4) - &q)).norm() < 1e-10);
        assert!((a.coeff(1) - &v * &q).norm() < 1e-10);

        let cf = coefficient_form(&PolyLoop::identity(3)).unwrap();
        assert!(cf.projections.is_empty());

        let a = s.genus_loop(4, 3);
        let cf = coefficient_form(&a).unwrap();
        let p = &cf.v * (identity(4) - &cf.projections[0]) * (identity(4) - &cf.projections[1]);
        assert!((p - a.coeff(0)).norm() < 1e-9);
    }
}
