//! Graphs, graph signals and the graph shift.
//!
//! A nonzero `[A]_{ij}` is a directed edge from node `j` into node `i`, so
//! `(A·s)_i` collects the values on the in-neighbours of node `i`. Nodes are
//! 0-based here and 1-based in every file format.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Graph<S> {
    adjacency: Matrix<S>,
    labels: Option<Vec<String>>,
}

impl<S: Scalar> Graph<S> {
    pub fn new(adjacency: Matrix<S>) -> Result<Self> {
        adjacency.ensure_square()?;
        Ok(Self {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &Matrix<S> {
        &self.adjacency
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of nonzero adjacency entries.
    pub fn edge_count(&self) -> usize {
        let n = self.node_count();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.adjacency.get(i, j).is_zero())
            .count()
    }

    /// Directed cycle on `n` nodes: node `i` feeds node `i+1 (mod n)`.
    pub fn directed_cycle(n: usize) -> Self {
        assert!(n >= 1, "cycle needs at least one node");
        let adjacency = Matrix::from_fn(n, n, |i, j| {
            if (j + 1) % n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        Self {
            adjacency,
            labels: None,
        }
    }

    /// Graph shift `A·s`.
    pub fn apply_shift(&self, s: &GraphSignal<S>) -> Result<GraphSignal<S>> {
        self.check_signal(s)?;
        Ok(GraphSignal::from_values(self.adjacency.mul_vec(s.values())))
    }

    /// `A / ρ` for the spectral radius `ρ`. A radius at or below
    /// `zero_threshold` is rejected.
    pub fn normalized_shift(&self, spectral_radius: f64, zero_threshold: f64) -> Result<Self> {
        if spectral_radius.partial_cmp(&zero_threshold).is_none_or(|o| o.is_le()) {
            return Err(Error::ZeroSpectralRadius);
        }
        let c = S::from_f64(1.0 / spectral_radius);
        Ok(Self {
            adjacency: self.adjacency.scale(&c),
            labels: self.labels.clone(),
        })
    }

    pub fn check_signal(&self, s: &GraphSignal<S>) -> Result<()> {
        if s.len() != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                found: s.len(),
            });
        }
        Ok(())
    }
}

/// Complex-valued signal indexed by node.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSignal<S> {
    values: Vec<S>,
}

impl<S: Scalar> GraphSignal<S> {
    /// Signal on `graph`, rejecting a length mismatch.
    pub fn new(graph: &Graph<S>, values: Vec<S>) -> Result<Self> {
        let s = Self { values };
        graph.check_signal(&s)?;
        Ok(s)
    }

    pub fn from_values(values: Vec<S>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_values(vec![S::zero(); n])
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
