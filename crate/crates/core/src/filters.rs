//! Polynomial graph filters `h(A)` and shift-invariance checks.

use crate::error::{Error, Result};
use crate::gft::{gft, GftDecomposition};
use crate::graph::{Graph, GraphSignal};
use crate::jordan::JordanBasis;
use crate::matrix::{norm1, sub_vec, Matrix};
use crate::scalar::Scalar;
use crate::spectral::{DualBasis, SpectralProjectorSet};

/// `h(x) = Σ h_k x^k`, stored without trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialFilter<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> PolynomialFilter<S> {
    pub fn new(mut coefficients: Vec<S>) -> Self {
        while coefficients.last().is_some_and(Scalar::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn identity() -> Self {
        Self::new(vec![S::one()])
    }

    pub fn shift() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coefficients
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `h(A)` by Horner's scheme.
    pub fn materialize(&self, g: &Graph<S>) -> Matrix<S> {
        self.apply_to(g.adjacency())
    }

    pub fn apply_to(&self, a: &Matrix<S>) -> Matrix<S> {
        let n = a.rows();
        let mut h = Matrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            h = a.matmul(&h).add(&Matrix::identity(n).scale(c));
        }
        h
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftInvariance {
    pub invariant: bool,
    /// `‖AH − HA‖₁`.
    pub commutator: f64,
    /// Largest `‖AHs − HAs‖₁ / ‖s‖₁` over the probe signals.
    pub max_sample_residual: f64,
}

/// Checks `A·H = H·A`. The commutator decides; `trials` deterministic probe
/// signals are reported as a diagnostic.
pub fn shift_invariance_check<S: Scalar>(h: &Matrix<S>, g: &Graph<S>, trials: usize, eps_zero: f64) -> Result<ShiftInvariance> {
    let a = g.adjacency();
    let n = a.rows();
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.rows(),
        });
    }
    let ah = a.matmul(h);
    let ha = h.matmul(a);
    let commutator = ah.sub(&ha).one_norm();
    let mut max_sample_residual: f64 = 0.0;
    for t in 0..trials {
        let s: Vec<S> = (0..n).map(|k| probe_value(t, k)).collect();
        let r = norm1(&sub_vec(&ah.mul_vec(&s), &ha.mul_vec(&s)));
        let size = norm1(&s);
        if size > 0.0 {
            max_sample_residual = max_sample_residual.max(r / size);
        }
    }
    let scale = if S::EXACT { 0.0 } else { eps_zero * (a.one_norm() * h.one_norm()).max(1.0) };
    Ok(ShiftInvariance {
        invariant: commutator <= scale,
        commutator,
        max_sample_residual,
    })
}

/// Small integers with no shift-invariant pattern.
fn probe_value<S: Scalar>(trial: usize, k: usize) -> S {
    let x = (trial * 7919 + k * 104_729 + 13) % 17;
    S::from_gaussian(x as i64 - 8, ((trial + 3 * k) % 5) as i64 - 2)
}

/// Filters the decomposed signal and decomposes the output again.
pub fn filter_in_spectrum<S: Scalar>(
    h: &PolynomialFilter<S>,
    d: &GftDecomposition<S>,
    g: &Graph<S>,
    basis: &JordanBasis<S>,
    dual: &DualBasis<S>,
) -> Result<GftDecomposition<S>> {
    let n = g.node_count();
    if d.signal().len() != n || basis.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.signal().len(),
        });
    }
    let hm = h.materialize(g);
    let out = GraphSignal::from_values(hm.mul_vec(d.signal()));
    gft(&out, basis, dual)
}

/// Largest `‖P·H·P − H·P‖₁` over all projectors.
pub fn filter_leakage<S: Scalar>(h: &Matrix<S>, projectors: &SpectralProjectorSet<S>) -> f64 {
    projectors
        .iter()
        .map(|(_, p)| {
            let hp = h.matmul(p);
            p.matmul(&hp).sub(&hp).one_norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{jordan_decomposition, EigenMode};
    use crate::matrix::Tolerances;
    use crate::scalar::GaussRational;
    use crate::spectral::dual_basis;

    type Q = GaussRational;

    fn poly(c: &[i64]) -> PolynomialFilter<Q> {
        PolynomialFilter::new(c.iter().map(|&v| Q::from_i64(v)).collect())
    }

    fn nil2() -> Graph<Q> {
        Graph::new(Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])).unwrap()
    }

    #[test]
    fn materialize_examples() {
        let g = nil2();
        assert_eq!(PolynomialFilter::shift().materialize(&g), *g.adjacency());
        assert_eq!(PolynomialFilter::identity().materialize(&g), Matrix::identity(2));
        assert_eq!(poly(&[1, 2, 3]).materialize(&g), Matrix::from_i64_rows(&[&[1, 2], &[0, 1]]));
        assert_eq!(poly(&[]).materialize(&g), Matrix::zeros(2, 2));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(poly(&[1, 0, 0]).degree(), Some(0));
        assert_eq!(poly(&[0, 0]).degree(), None);
        assert_eq!(poly(&[1, 2, 3]).eval(&Q::from_i64(2)), Q::from_i64(17));
    }

    #[test]
    fn diagonal_does_not_commute_with_cycle() {
        let g = Graph::<Q>::directed_cycle(4);
        let h = Matrix::diagonal(&[Q::from_i64(1), Q::from_i64(2), Q::from_i64(3), Q::from_i64(4)]);
        let check = shift_invariance_check(&h, &g, 4, 1e-10).unwrap();
        assert!(!check.invariant);
        // AH − HA has entries d_j − d_{j+1} in the cycle positions
        assert_eq!(check.commutator, 3.0);
        assert!(check.max_sample_residual > 0.0);
        let ok = shift_invariance_check(&Matrix::identity(4), &g, 4, 1e-10).unwrap();
        assert!(ok.invariant && ok.commutator == 0.0);
        assert!(shift_invariance_check(&Matrix::identity(3), &g, 1, 1e-10).is_err());
    }

    #[test]
    fn eigen_scaling_on_diagonal() {
        let g = Graph::new(Matrix::diagonal(&[Q::from_i64(2), Q::from_i64(2), Q::from_i64(5)])).unwrap();
        let tol = Tolerances::default();
        let basis = jordan_decomposition(g.adjacency(), &EigenMode::Exact, &tol).unwrap();
        let dual = dual_basis(&basis, &tol).unwrap();
        let s = GraphSignal::from_values(vec![Q::from_i64(3), Q::from_i64(-1), Q::from_i64(4)]);
        let d = gft(&s, &basis, &dual).unwrap();
        let out = filter_in_spectrum(&PolynomialFilter::shift(), &d, &g, &basis, &dual).unwrap();
        let values: Vec<Vec<Q>> = out.components().iter().map(|c| c.values.clone()).collect();
        let q = |v: [i64; 3]| v.iter().map(|&x| Q::from_i64(x)).collect::<Vec<_>>();
        assert_eq!(values, vec![q([6, 0, 0]), q([0, -2, 0]), q([0, 0, 20])]);
        let zero = filter_in_spectrum(&poly(&[]), &d, &g, &basis, &dual).unwrap();
        assert!(zero.components().iter().all(|c| c.values.iter().all(Scalar::is_zero)));
    }

    #[test]
    fn shift_keeps_chain_vector_in_subspace() {
        let g = nil2();
        let tol = Tolerances::default();
        let basis = jordan_decomposition(g.adjacency(), &EigenMode::Exact, &tol).unwrap();
        let dual = dual_basis(&basis, &tol).unwrap();
        let set = SpectralProjectorSet::new(&basis, &dual).unwrap();
        let id = basis.subspaces()[0];
        let s = GraphSignal::from_values(basis.chain_vectors(&id)[1].clone());
        let d = gft(&s, &basis, &dual).unwrap();
        let out = filter_in_spectrum(&PolynomialFilter::shift(), &d, &g, &basis, &dual).unwrap();
        assert_eq!(out.components().len(), 1);
        assert_eq!(out.components()[0].values, basis.chain_vectors(&id)[0]);
        assert_eq!(filter_leakage(g.adjacency(), &set), 0.0);
    }
}
