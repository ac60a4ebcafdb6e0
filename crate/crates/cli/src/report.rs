//! Serializable views of the core reports.

use loopbank::cuntz::{CuntzState, Decomposition, IntertwinerReport, Reduction, RepReport};
use loopbank::linalg::CMat;
use loopbank::Factorization;
use serde::Serialize;

use crate::doc::{matrix_rows, pair, pairs, BankDocument, LoopDocument, Pair, SCHEMA_VERSION};

type Matrix = Vec<Vec<Pair>>;

#[derive(Debug, Serialize)]
pub struct FactorizationDocument {
    pub schema_version: &'static str,
    pub n: usize,
    pub degree: usize,
    /// `A = (1 − P₁ + zP₁) ⋯ (1 − P_d + zP_d) · V`.
    pub rank_one_projections: Vec<Matrix>,
    /// One projection per degree step, in peeling order.
    pub degree_projections: Vec<Matrix>,
    pub v: Matrix,
}

impl FactorizationDocument {
    pub fn new(n: usize, f: &Factorization) -> Self {
        FactorizationDocument {
            schema_version: SCHEMA_VERSION,
            n,
            degree: f.rank_one_factors.len(),
            rank_one_projections: f.rank_one_factors.iter().map(|x| matrix_rows(x.projection())).collect(),
            degree_projections: f.degree_projections.iter().map(matrix_rows).collect(),
            v: matrix_rows(&f.constant),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClusterView {
    pub value: Pair,
    pub multiplicity: usize,
}

#[derive(Debug, Serialize)]
pub struct StateView {
    pub k: usize,
    pub v: Vec<Pair>,
    pub filter_residual: f64,
}

impl From<&CuntzState> for StateView {
    fn from(s: &CuntzState) -> Self {
        StateView { k: s.k, v: pairs(&s.v), filter_residual: s.filter_residual }
    }
}

#[derive(Debug, Serialize)]
pub struct ProjectionView {
    pub rank: usize,
    pub diagonal: bool,
    pub basis_vectors: Vec<usize>,
    pub range_vector: Vec<Pair>,
    pub matrix: Matrix,
}

#[derive(Debug, Serialize)]
pub struct ConditionsView {
    pub lambda0_is_one: bool,
    pub block_form: bool,
    pub unit_lowpass: bool,
    pub e0_eigenvector: bool,
    pub sigma_star_line: bool,
    pub block_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ReductionView {
    pub lambda0: f64,
    pub v: Matrix,
    pub b: LoopDocument,
    pub modified_bank: BankDocument,
    pub reduced_bank: Option<BankDocument>,
    pub conditions: ConditionsView,
}

impl From<&Reduction> for ReductionView {
    fn from(r: &Reduction) -> Self {
        let c = &r.conditions;
        ReductionView {
            lambda0: r.lambda0,
            v: matrix_rows(&r.v),
            b: LoopDocument::from_loop(&r.b),
            modified_bank: BankDocument::from_bank(&r.modified_bank),
            reduced_bank: r.reduced_bank.as_ref().map(BankDocument::from_bank),
            conditions: ConditionsView {
                lambda0_is_one: c.lambda0_is_one,
                block_form: c.block_form,
                unit_lowpass: c.unit_lowpass,
                e0_eigenvector: c.e0_eigenvector,
                sigma_star_line: c.sigma_star_line,
                block_residual: c.block_residual,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GenusTwoView {
    pub q00: f64,
    pub q_last: f64,
    pub q_second_last: f64,
    pub predicted_reducible: bool,
    pub agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct IntertwinerView {
    pub padded_genus: usize,
    pub dimension: usize,
    pub basis: Vec<Matrix>,
    pub disjoint: bool,
    pub e00_scalar: Pair,
    pub e00_fixed: bool,
    pub scalar_consistent: bool,
}

impl From<&IntertwinerReport> for IntertwinerView {
    fn from(r: &IntertwinerReport) -> Self {
        IntertwinerView {
            padded_genus: r.padded_genus,
            dimension: r.dimension,
            basis: r.basis.iter().map(matrix_rows).collect(),
            disjoint: r.disjoint,
            e00_scalar: pair(r.e00_scalar),
            e00_fixed: r.e00_fixed,
            scalar_consistent: r.scalar_consistent,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RepReportView {
    pub schema_version: &'static str,
    pub n: usize,
    pub genus: usize,
    pub r: usize,
    pub spectrum: Vec<Pair>,
    pub clusters: Vec<ClusterView>,
    pub spectral_radius: f64,
    pub adjoint_mismatch: f64,
    pub mult_one: usize,
    pub fixed_dimension: usize,
    pub fixed_basis: Vec<Matrix>,
    pub fixed_echelon: Vec<Matrix>,
    pub irreducible: bool,
    pub fixed_set_algebra: bool,
    pub fixed_set_abelian: bool,
    /// `None` when the fixed set is not an abelian algebra.
    pub minimal_projections: Option<Vec<ProjectionView>>,
    pub cuntz_states: Vec<StateView>,
    pub lambda0: f64,
    pub reduction: Option<ReductionView>,
    pub genus_two: Option<GenusTwoView>,
    pub observations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intertwiner: Option<IntertwinerView>,
}

fn matrices(ms: &[CMat]) -> Vec<Matrix> {
    ms.iter().map(matrix_rows).collect()
}

impl RepReportView {
    pub fn new(r: &RepReport, intertwiner: Option<&IntertwinerReport>) -> Self {
        let minimal_projections = match &r.decomposition {
            Decomposition::Resolved(ps) => Some(
                ps.iter()
                    .map(|p| ProjectionView {
                        rank: p.rank,
                        diagonal: p.diagonal,
                        basis_vectors: p.basis_vectors.clone(),
                        range_vector: pairs(&p.range_vector),
                        matrix: matrix_rows(&p.matrix),
                    })
                    .collect(),
            ),
            Decomposition::NotResolved => None,
        };
        RepReportView {
            schema_version: SCHEMA_VERSION,
            n: r.n,
            genus: r.genus,
            r: r.r,
            spectrum: pairs(&r.spectrum),
            clusters: r
                .clusters
                .iter()
                .map(|c| ClusterView { value: pair(c.value), multiplicity: c.multiplicity })
                .collect(),
            spectral_radius: r.spectral_radius,
            adjoint_mismatch: r.adjoint_mismatch,
            mult_one: r.mult_one,
            fixed_dimension: r.fixed_basis.len(),
            fixed_basis: matrices(&r.fixed_basis),
            fixed_echelon: matrices(&r.fixed_echelon),
            irreducible: r.irreducible,
            fixed_set_algebra: r.fixed_set_algebra,
            fixed_set_abelian: r.fixed_set_abelian,
            minimal_projections,
            cuntz_states: r.cuntz_states.iter().map(StateView::from).collect(),
            lambda0: r.lambda0,
            reduction: r.reduction.as_ref().map(ReductionView::from),
            genus_two: r.genus_two.map(|g| GenusTwoView {
                q00: g.q00,
                q_last: g.q_last,
                q_second_last: g.q_second_last,
                predicted_reducible: g.predicted_reducible,
                agrees: g.agrees,
            }),
            observations: r.observations.clone(),
            intertwiner: intertwiner.map(IntertwinerView::from),
        }
    }
}
