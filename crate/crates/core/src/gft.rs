//! Graph Fourier transform as the decomposition of a signal into its
//! projections onto the Jordan subspaces, with expansion coefficients in the
//! Jordan basis and its dual and the generalized Parseval energies.
//!
//! Inner products follow `⟨x, y⟩ = yᴴx` throughout.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::GraphSignal;
use crate::jordan::{JordanBasis, JordanSubspaceId};
use crate::matrix::{add_vec, inner, Matrix};
use crate::scalar::Scalar;
use crate::spectral::{DualBasis, SpectralProjectorSet};

/// Projection of a signal onto one Jordan subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralComponent<S> {
    pub id: JordanSubspaceId,
    pub eigenvalue: S,
    /// `ŝ_ij = P_ij·s`.
    pub values: Vec<S>,
    /// Coordinates of `ŝ_ij` in the chain vectors (slice of `V⁻¹·s`).
    pub alpha: Vec<S>,
    /// Coordinates of `ŝ_ij` in the dual vectors (slice of `W⁻¹·s = Vᴴ·s`).
    pub beta: Vec<S>,
    /// `⟨α, β⟩`; complex in general for non-normal shifts.
    pub energy: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GftDecomposition<S> {
    signal: Vec<S>,
    coefficients_v: Vec<S>,
    coefficients_w: Vec<S>,
    components: Vec<SpectralComponent<S>>,
}

impl<S: Scalar> GftDecomposition<S> {
    pub fn signal(&self) -> &[S] {
        &self.signal
    }

    /// `s̃_V = V⁻¹·s`.
    pub fn coefficients_v(&self) -> &[S] {
        &self.coefficients_v
    }

    /// `s̃_W = W⁻¹·s`.
    pub fn coefficients_w(&self) -> &[S] {
        &self.coefficients_w
    }

    pub fn components(&self) -> &[SpectralComponent<S>] {
        &self.components
    }

    pub fn component(&self, id: &JordanSubspaceId) -> Result<&SpectralComponent<S>> {
        self.components.iter().find(|c| c.id == *id).ok_or(Error::UnknownSubspace {
            eigen: id.eigen,
            chain: id.chain,
        })
    }

    /// `‖s‖² = ⟨s, s⟩`.
    pub fn signal_energy(&self) -> S {
        inner(&self.signal, &self.signal)
    }

    /// `‖s − Σ ŝ_ij‖₁`.
    pub fn reconstruction_residual(&self) -> f64 {
        let sum = inverse_gft(self);
        crate::matrix::norm1(&crate::matrix::sub_vec(&self.signal, sum.values()))
    }

    /// `|⟨s, s⟩ − ⟨s̃_V, s̃_W⟩|`.
    pub fn parseval_residual(&self) -> f64 {
        (self.signal_energy() - inner(&self.coefficients_v, &self.coefficients_w)).abs()
    }

    /// `|Σ_ij ⟨α, β⟩_ij − ‖s‖²|`.
    pub fn energy_residual(&self) -> f64 {
        let total = self
            .components
            .iter()
            .fold(S::zero(), |acc, c| acc + c.energy.clone());
        (total - self.signal_energy()).abs()
    }
}

/// Decomposes `s` into `ŝ_ij = P_ij·s = V_ij·α_ij` for every Jordan subspace.
pub fn gft<S: Scalar>(s: &GraphSignal<S>, basis: &JordanBasis<S>, dual: &DualBasis<S>) -> Result<GftDecomposition<S>> {
    let n = basis.dimension();
    if s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: s.len(),
        });
    }
    let coefficients_v = dual.w_adjoint().mul_vec(s.values());
    let coefficients_w = basis.v().adjoint().mul_vec(s.values());
    let components = basis
        .subspaces()
        .iter()
        .map(|id| {
            let alpha = coefficients_v[id.columns()].to_vec();
            let beta = coefficients_w[id.columns()].to_vec();
            SpectralComponent {
                id: *id,
                eigenvalue: basis.eigenvalue_of(id).clone(),
                values: basis.block(id).mul_vec(&alpha),
                energy: inner(&alpha, &beta),
                alpha,
                beta,
            }
        })
        .collect();
    Ok(GftDecomposition {
        signal: s.values().to_vec(),
        coefficients_v,
        coefficients_w,
        components,
    })
}

/// `Σ_ij ŝ_ij`.
pub fn inverse_gft<S: Scalar>(d: &GftDecomposition<S>) -> GraphSignal<S> {
    let n = d.signal.len();
    GraphSignal::from_values(
        d.components
            .iter()
            .fold(vec![S::zero(); n], |acc, c| add_vec(&acc, &c.values)),
    )
}

/// Returns `(⟨s₁, s₂⟩, ⟨s̃₁_V, s̃₂_W⟩)`; the two agree for any Jordan basis.
pub fn parseval_pairing<S: Scalar>(
    s1: &GraphSignal<S>,
    s2: &GraphSignal<S>,
    basis: &JordanBasis<S>,
    dual: &DualBasis<S>,
) -> Result<(S, S)> {
    let n = basis.dimension();
    for s in [s1, s2] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    let direct = inner(s1.values(), s2.values());
    let c1 = dual.w_adjoint().mul_vec(s1.values());
    let c2 = basis.v().adjoint().mul_vec(s2.values());
    Ok((direct, inner(&c1, &c2)))
}

pub fn component_energy<S: Scalar>(d: &GftDecomposition<S>, id: &JordanSubspaceId) -> Result<S> {
    Ok(d.component(id)?.energy.clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankedComponent<S> {
    pub id: JordanSubspaceId,
    pub energy: S,
    /// `|⟨α, β⟩|`, the ranking key.
    pub magnitude: f64,
    /// `|⟨α, β⟩| / ‖s‖²`.
    pub fraction: f64,
}

/// Components by decreasing `|⟨α, β⟩|`, ties broken by subspace id.
pub fn energy_ranking<S: Scalar>(d: &GftDecomposition<S>) -> Result<Vec<RankedComponent<S>>> {
    let total = d.signal_energy().abs();
    if total == 0.0 {
        return Err(Error::ZeroSignal);
    }
    let mut ranked: Vec<RankedComponent<S>> = d
        .components
        .iter()
        .map(|c| {
            let magnitude = c.energy.abs();
            RankedComponent {
                id: c.id,
                energy: c.energy.clone(),
                magnitude,
                fraction: magnitude / total,
            }
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.magnitude
            .partial_cmp(&a.magnitude)
            .unwrap_or(Ordering::Equal)
            .then(a.id.cmp(&b.id))
    });
    Ok(ranked)
}

/// Largest `‖(I − P_ij)·ŝ_ij‖₁`; zero when every component lies in its
/// subspace.
pub fn containment_residual<S: Scalar>(d: &GftDecomposition<S>, projectors: &SpectralProjectorSet<S>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for c in &d.components {
        let p: &Matrix<S> = projectors.get(&c.id)?;
        let r = crate::matrix::sub_vec(&c.values, &p.mul_vec(&c.values));
        worst = worst.max(crate::matrix::norm1(&r));
    }
    Ok(worst)
}
