//! Graph total variation of signals and of Jordan subspaces.

use std::cmp::Ordering;

use crate::error::Result;
use crate::graph::{Graph, GraphSignal};
use crate::jordan::{JordanBasis, JordanSubspaceId};
use crate::matrix::{norm1, scale_vec, sub_vec, Matrix, Tolerances};
use crate::scalar::Scalar;

/// `‖s − A·s‖₁`.
pub fn signal_tv<S: Scalar>(g: &Graph<S>, s: &GraphSignal<S>) -> Result<f64> {
    let shifted = g.apply_shift(s)?;
    Ok(norm1(&sub_vec(s.values(), shifted.values())))
}

/// The three equivalent evaluations of `TV(V_ij)` on the normalized chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentTv {
    /// `‖V_ij − A·V_ij‖₁`.
    pub direct: f64,
    /// `‖V_ij·(I − J_ij)‖₁`.
    pub factored: f64,
    /// `max(|1−λ|·‖v₁‖₁, ‖(1−λ)v_p − v_{p−1}‖₁)`.
    pub chain: f64,
}

impl ComponentTv {
    pub fn value(&self) -> f64 {
        self.direct
    }

    /// Largest pairwise disagreement relative to `max(1, value)`.
    pub fn spread(&self) -> f64 {
        let vals = [self.direct, self.factored, self.chain];
        let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
        let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
        (hi - lo) / hi.max(1.0)
    }
}

/// TV of one Jordan subspace with its chain scaled to `‖V_ij‖₁ = 1`.
pub fn component_tv<S: Scalar>(g: &Graph<S>, basis: &JordanBasis<S>, id: &JordanSubspaceId) -> Result<ComponentTv> {
    basis.check_id(id)?;
    let normalized = basis.normalize_chains();
    Ok(tv_forms(g.adjacency(), &normalized, id))
}

fn tv_forms<S: Scalar>(a: &Matrix<S>, basis: &JordanBasis<S>, id: &JordanSubspaceId) -> ComponentTv {
    let block = basis.block(id);
    let direct = block.sub(&a.matmul(&block)).one_norm();
    let r = id.dim;
    let factored = block.matmul(&Matrix::identity(r).sub(&basis.jordan_block(id))).one_norm();
    let lambda = basis.eigenvalue_of(id);
    let one_minus = S::one() - lambda.clone();
    let vectors = basis.chain_vectors(id);
    let mut chain = one_minus.abs() * norm1(&vectors[0]);
    for p in 1..vectors.len() {
        let d = sub_vec(&scale_vec(&vectors[p], &one_minus), &vectors[p - 1]);
        chain = chain.max(norm1(&d));
    }
    ComponentTv { direct, factored, chain }
}

/// `|1 − λ| + 1`.
pub fn tv_bound<S: Scalar>(lambda: &S) -> f64 {
    (S::one() - lambda.clone()).abs() + 1.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceTv {
    pub id: JordanSubspaceId,
    pub tv: ComponentTv,
    pub bound: f64,
    pub within_bound: bool,
}

/// TV of every subspace, ascending; ties keep subspace order.
pub fn tv_ordering<S: Scalar>(g: &Graph<S>, basis: &JordanBasis<S>) -> Vec<SubspaceTv> {
    let normalized = basis.normalize_chains();
    let mut out: Vec<SubspaceTv> = normalized
        .subspaces()
        .iter()
        .map(|id| {
            let tv = tv_forms(g.adjacency(), &normalized, id);
            let bound = tv_bound(normalized.eigenvalue_of(id));
            SubspaceTv {
                id: *id,
                tv,
                bound,
                within_bound: tv.value() <= bound + BOUND_SLACK,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.tv.value()
            .partial_cmp(&b.tv.value())
            .unwrap_or(Ordering::Equal)
            .then(a.id.cmp(&b.id))
    });
    out
}

const BOUND_SLACK: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct TvReport {
    /// Whether TV was measured against `A / ρ(A)` rather than `A`.
    pub normalized_shift: bool,
    pub subspaces: Vec<SubspaceTv>,
    pub signal_tv: Option<f64>,
}

impl TvReport {
    pub fn get(&self, id: &JordanSubspaceId) -> Option<&SubspaceTv> {
        self.subspaces.iter().find(|s| s.id == *id)
    }

    pub fn all_within_bound(&self) -> bool {
        self.subspaces.iter().all(|s| s.within_bound)
    }

    pub fn max_spread(&self) -> f64 {
        self.subspaces.iter().map(|s| s.tv.spread()).fold(0.0, f64::max)
    }
}

/// TV of all subspaces and optionally of a signal. With `normalized_shift`
/// the shift is `A / ρ(A)` and the basis is rescaled to match it.
pub fn tv_report<S: Scalar>(
    g: &Graph<S>,
    basis: &JordanBasis<S>,
    signal: Option<&GraphSignal<S>>,
    normalized_shift: bool,
    tol: &Tolerances,
) -> Result<TvReport> {
    let (graph, basis) = if normalized_shift {
        let rho = basis.structure().spectral_radius();
        let g = g.normalized_shift(rho, tol.zero)?;
        let b = basis.scaled(&(S::one() / S::from_f64(rho)));
        (g, b)
    } else {
        (g.clone(), basis.clone())
    };
    let signal_tv = signal.map(|s| signal_tv(&graph, s)).transpose()?;
    Ok(TvReport {
        normalized_shift,
        subspaces: tv_ordering(&graph, &basis),
        signal_tv,
    })
}
