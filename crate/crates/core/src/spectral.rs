//! Dual basis and oblique spectral projectors onto Jordan subspaces.

use crate::error::{Error, Result};
use crate::jordan::{JordanBasis, JordanSubspaceId};
use crate::matrix::{Matrix, Tolerances};
use crate::scalar::Scalar;

/// Dual basis `W = V^{−H}`, so `Wᴴ·V = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualBasis<S> {
    w: Matrix<S>,
    /// `Wᴴ = V⁻¹`, kept because projectors and coefficients use its rows.
    w_adjoint: Matrix<S>,
}

impl<S: Scalar> DualBasis<S> {
    pub fn new(basis: &JordanBasis<S>, tol: &Tolerances) -> Result<Self> {
        let w_adjoint = basis.v().inverse(tol.zero)?;
        Ok(Self {
            w: w_adjoint.adjoint(),
            w_adjoint,
        })
    }

    pub fn w(&self) -> &Matrix<S> {
        &self.w
    }

    pub fn w_adjoint(&self) -> &Matrix<S> {
        &self.w_adjoint
    }

    /// `W_ijᴴ`: the rows of `V⁻¹` conformal with `V_ij`.
    pub fn block_adjoint(&self, id: &JordanSubspaceId) -> Matrix<S> {
        self.w_adjoint.row_block(id.columns())
    }

    /// `‖Wᴴ·V − I‖₁`.
    pub fn biorthogonality_residual(&self, basis: &JordanBasis<S>) -> f64 {
        let n = basis.dimension();
        self.w_adjoint.matmul(basis.v()).sub(&Matrix::identity(n)).one_norm()
    }
}

pub fn dual_basis<S: Scalar>(basis: &JordanBasis<S>, tol: &Tolerances) -> Result<DualBasis<S>> {
    DualBasis::new(basis, tol)
}

/// `P_ij = V_ij·W_ijᴴ`.
pub fn projector<S: Scalar>(basis: &JordanBasis<S>, dual: &DualBasis<S>, id: &JordanSubspaceId) -> Result<Matrix<S>> {
    basis.check_id(id)?;
    Ok(basis.block(id).matmul(&dual.block_adjoint(id)))
}

/// All projectors `P_ij` and first component matrices `Z_i0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralProjectorSet<S> {
    ids: Vec<JordanSubspaceId>,
    projectors: Vec<Matrix<S>>,
    components: Vec<Matrix<S>>,
}

impl<S: Scalar> SpectralProjectorSet<S> {
    /// Builds every projector. `Z_i0` is formed from its own definition,
    /// `V·diag(…, I_{a_i}, …)·V⁻¹`, independently of the `P_ij`.
    pub fn new(basis: &JordanBasis<S>, dual: &DualBasis<S>) -> Result<Self> {
        let ids = basis.subspaces().to_vec();
        let projectors = ids
            .iter()
            .map(|id| projector(basis, dual, id))
            .collect::<Result<Vec<_>>>()?;
        let components = (0..basis.structure().len())
            .map(|i| {
                let blocks: Vec<&JordanSubspaceId> = ids.iter().filter(|id| id.eigen == i).collect();
                let start = blocks.iter().map(|b| b.offset).min().unwrap_or(0);
                let end = blocks.iter().map(|b| b.offset + b.dim).max().unwrap_or(0);
                basis
                    .v()
                    .column_block(start..end)
                    .matmul(&dual.w_adjoint().row_block(start..end))
            })
            .collect();
        Ok(Self {
            ids,
            projectors,
            components,
        })
    }

    pub fn ids(&self) -> &[JordanSubspaceId] {
        &self.ids
    }

    pub fn get(&self, id: &JordanSubspaceId) -> Result<&Matrix<S>> {
        self.ids
            .iter()
            .position(|x| x == id)
            .map(|k| &self.projectors[k])
            .ok_or(Error::UnknownSubspace {
                eigen: id.eigen,
                chain: id.chain,
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&JordanSubspaceId, &Matrix<S>)> {
        self.ids.iter().zip(&self.projectors)
    }

    pub fn component_matrix(&self, eigen: usize) -> Result<&Matrix<S>> {
        self.components.get(eigen).ok_or(Error::UnknownEigenvalue(eigen))
    }

    pub fn eigenvalue_count(&self) -> usize {
        self.components.len()
    }

    /// `Σ_j P_ij` for eigenvalue `i`.
    pub fn projector_sum(&self, eigen: usize) -> Result<Matrix<S>> {
        let z = self.component_matrix(eigen)?;
        Ok(self
            .iter()
            .filter(|(id, _)| id.eigen == eigen)
            .fold(Matrix::zeros(z.rows(), z.cols()), |acc, (_, p)| acc.add(p)))
    }

    /// Largest `‖P_ij·P_kl − δ_ik δ_jl·P_ij‖₁` over all ordered pairs.
    pub fn pairwise_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, pa) in self.projectors.iter().enumerate() {
            for (b, pb) in self.projectors.iter().enumerate() {
                let prod = pa.matmul(pb);
                let r = if a == b { prod.sub(pa).one_norm() } else { prod.one_norm() };
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Largest `‖Σ_j P_ij − Z_i0‖₁`.
    pub fn component_residual(&self) -> f64 {
        (0..self.components.len())
            .map(|i| self.projector_sum(i).unwrap().sub(&self.components[i]).one_norm())
            .fold(0.0, f64::max)
    }

    /// `‖Σ_ij P_ij − I‖₁`.
    pub fn resolution_residual(&self) -> f64 {
        let Some(first) = self.projectors.first() else {
            return 0.0;
        };
        let n = first.rows();
        self.projectors
            .iter()
            .fold(Matrix::zeros(n, n), |acc, p| acc.add(p))
            .sub(&Matrix::identity(n))
            .one_norm()
    }

    /// Largest `‖P_ij·A·P_ij − A·P_ij‖₁`; zero when every subspace is
    /// `A`-invariant.
    pub fn invariance_residual(&self, a: &Matrix<S>) -> f64 {
        self.projectors
            .iter()
            .map(|p| {
                let ap = a.matmul(p);
                p.matmul(&ap).sub(&ap).one_norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Upper bound on the pairwise projector residual computed from the factors:
/// `P_ij·P_kl − δ·P_ij = V_ij·(W_ijᴴ·V_kl − δ·I)·W_klᴴ`. Costs one product
/// `Wᴴ·V` instead of a product per pair.
pub fn factored_pairwise_bound<S: Scalar>(basis: &JordanBasis<S>, dual: &DualBasis<S>) -> f64 {
    let n = basis.dimension();
    let e = dual.w_adjoint().matmul(basis.v()).sub(&Matrix::identity(n));
    let ids = basis.subspaces();
    let v_norms: Vec<f64> = ids.iter().map(|id| basis.block(id).one_norm()).collect();
    let w_norms: Vec<f64> = ids.iter().map(|id| dual.block_adjoint(id).one_norm()).collect();
    let mut worst: f64 = 0.0;
    for (a, ia) in ids.iter().enumerate() {
        for (b, ib) in ids.iter().enumerate() {
            let block = Matrix::from_fn(ia.dim, ib.dim, |r, c| e.get(ia.offset + r, ib.offset + c).clone());
            worst = worst.max(v_norms[a] * block.one_norm() * w_norms[b]);
        }
    }
    worst
}

/// `(max_i ‖Σ_j P_ij − Z_i0‖₁, ‖Σ_ij P_ij − I‖₁)` computed one projector at a
/// time, without holding the whole set in memory.
pub fn projector_sum_residuals<S: Scalar>(basis: &JordanBasis<S>, dual: &DualBasis<S>) -> (f64, f64) {
    let n = basis.dimension();
    let mut total = Matrix::zeros(n, n);
    let mut component = 0.0f64;
    for i in 0..basis.structure().len() {
        let ids: Vec<&JordanSubspaceId> = basis.subspaces().iter().filter(|id| id.eigen == i).collect();
        let start = ids.iter().map(|b| b.offset).min().unwrap_or(0);
        let end = ids.iter().map(|b| b.offset + b.dim).max().unwrap_or(0);
        let z = basis.v().column_block(start..end).matmul(&dual.w_adjoint().row_block(start..end));
        let mut sum = Matrix::zeros(n, n);
        for id in ids {
            sum = sum.add(&basis.block(id).matmul(&dual.block_adjoint(id)));
        }
        component = component.max(sum.sub(&z).one_norm());
        total = total.add(&sum);
    }
    (component, total.sub(&Matrix::identity(n)).one_norm())
}

/// Correspondence between the subspaces of two Jordan bases of one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceMatch {
    pub left: JordanSubspaceId,
    /// `None` when no subspace of the other basis spans the same space.
    pub right: Option<JordanSubspaceId>,
}

/// Pairs subspaces by eigenvalue, dimension and equality of spans (the rank
/// of the stacked blocks equals the dimension). Column position is ignored.
pub fn match_subspaces<S: Scalar>(left: &JordanBasis<S>, right: &JordanBasis<S>, tol: &Tolerances) -> Vec<SubspaceMatch> {
    let mut used = vec![false; right.subspaces().len()];
    left.subspaces()
        .iter()
        .map(|l| {
            let lv = left.block(l);
            let lambda = left.eigenvalue_of(l);
            let found = right.subspaces().iter().enumerate().find(|(k, r)| {
                if used[*k] || r.dim != l.dim {
                    return false;
                }
                let mu = right.eigenvalue_of(r);
                let same = if S::EXACT {
                    lambda == mu
                } else {
                    (lambda.clone() - mu.clone()).abs() <= tol.cluster
                };
                same && lv.hstack(&right.block(r)).rank(tol.zero) == l.dim
            });
            let right_id = found.map(|(k, r)| {
                used[k] = true;
                *r
            });
            SubspaceMatch {
                left: *l,
                right: right_id,
            }
        })
        .collect()
}
