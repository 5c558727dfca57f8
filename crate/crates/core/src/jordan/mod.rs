//! Jordan structure of a square matrix: eigenvalues with their algebraic and
//! geometric multiplicities, generalized eigenspaces, Jordan chains and the
//! decomposition `A = V·J·V⁻¹`.
//!
//! Chains are built top-down ("staircase"): for each eigenvalue the kernels of
//! `(A − λI)^p` are computed for `p = 1..=m`, generators of order `p` are
//! picked complementary to `Ker(A − λI)^{p−1}` plus the level-`p` vectors of
//! longer chains, and each generator is mapped down by `A − λI`.

mod eigen;
pub(crate) mod poly;
mod restricted;

use std::ops::Range;

pub use eigen::{find_eigenvalues, EigenMode};

use crate::error::{Error, Result};
use crate::matrix::{norm2, project_out, scale_vec, sub_vec, Matrix, Tolerances};
use crate::scalar::Scalar;

/// One distinct eigenvalue and its multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue<S> {
    pub value: S,
    pub algebraic: usize,
    /// Partial multiplicities (Jordan block sizes), largest first.
    pub partial: Vec<usize>,
}

impl<S> Eigenvalue<S> {
    pub fn geometric(&self) -> usize {
        self.partial.len()
    }

    /// Size of the largest Jordan block.
    pub fn index(&self) -> usize {
        self.partial.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenstructure<S> {
    eigenvalues: Vec<Eigenvalue<S>>,
}

impl<S: Scalar> Eigenstructure<S> {
    pub fn eigenvalues(&self) -> &[Eigenvalue<S>] {
        &self.eigenvalues
    }

    pub fn get(&self, i: usize) -> Result<&Eigenvalue<S>> {
        self.eigenvalues.get(i).ok_or(Error::UnknownEigenvalue(i))
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic).sum()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.value.abs()).fold(0.0, f64::max)
    }
}

/// Identifies the Jordan subspace spanned by chain `chain` of eigenvalue
/// `eigen`, and where its columns sit in `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanSubspaceId {
    pub eigen: usize,
    pub chain: usize,
    pub dim: usize,
    pub offset: usize,
}

impl JordanSubspaceId {
    pub fn columns(&self) -> Range<usize> {
        self.offset..self.offset + self.dim
    }
}

/// Eigenvector matrix `V`, Jordan form `J` and the block layout shared by both.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanBasis<S> {
    structure: Eigenstructure<S>,
    subspaces: Vec<JordanSubspaceId>,
    v: Matrix<S>,
    j: Matrix<S>,
}

/// Chains of one eigenvalue; each chain is `[v₁, …, v_r]` with `v₁` the
/// eigenvector.
pub type Chains<S> = Vec<Vec<Vec<S>>>;

impl<S: Scalar> JordanBasis<S> {
    /// Assembles `V` and `J` from chains grouped by eigenvalue. Chains of each
    /// eigenvalue are reordered by decreasing length (stable).
    pub fn from_chains(n: usize, groups: Vec<(S, Chains<S>)>) -> Result<Self> {
        let mut eigenvalues = Vec::new();
        let mut subspaces = Vec::new();
        let mut columns: Vec<Vec<S>> = Vec::with_capacity(n);
        let mut jordan_blocks: Vec<(S, usize)> = Vec::new();
        for (eigen, (value, mut chains)) in groups.into_iter().enumerate() {
            chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
            let partial: Vec<usize> = chains.iter().map(Vec::len).collect();
            for (chain, vectors) in chains.into_iter().enumerate() {
                if vectors.is_empty() {
                    return Err(Error::ChainDefect("empty chain".into()));
                }
                subspaces.push(JordanSubspaceId {
                    eigen,
                    chain,
                    dim: vectors.len(),
                    offset: columns.len(),
                });
                jordan_blocks.push((value.clone(), vectors.len()));
                for v in vectors {
                    if v.len() != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: v.len(),
                        });
                    }
                    columns.push(v);
                }
            }
            eigenvalues.push(Eigenvalue {
                value,
                algebraic: partial.iter().sum(),
                partial,
            });
        }
        if columns.len() != n {
            return Err(Error::ChainDefect(format!(
                "chains supply {} vectors for dimension {n}",
                columns.len()
            )));
        }
        Ok(Self {
            structure: Eigenstructure { eigenvalues },
            subspaces,
            v: Matrix::from_columns(n, &columns),
            j: jordan_form(n, &jordan_blocks),
        })
    }

    /// Wraps a caller-provided eigenvector matrix whose consecutive column
    /// groups are Jordan chains for `blocks = [(λ, r), …]`, and checks it
    /// against `a`: the chain recursion must hold (exactly, or within
    /// `tol.zero·‖A‖₁·‖V‖₁` for floats) and `V` must be nonsingular.
    pub fn from_parts(a: &Matrix<S>, v: Matrix<S>, blocks: &[(S, usize)], tol: &Tolerances) -> Result<Self> {
        let n = a.ensure_square()?;
        if v.rows() != n || v.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.cols(),
            });
        }
        let mut groups: Vec<(S, Chains<S>)> = Vec::new();
        let mut offset = 0;
        for (value, r) in blocks {
            let chain: Vec<Vec<S>> = (offset..offset + r).map(|c| v.column(c)).collect();
            offset += r;
            match groups.iter_mut().find(|(w, _)| same_value(w, value, tol)) {
                Some((_, chains)) => chains.push(chain),
                None => groups.push((value.clone(), vec![chain])),
            }
        }
        let basis = Self::from_chains(n, groups)?;
        basis.v.inverse(tol.zero).map_err(|_| Error::ChainDefect("eigenvector matrix is singular".into()))?;
        let residual = basis.intertwining_residual(a);
        let bound = if S::EXACT { 0.0 } else { tol.zero * a.one_norm().max(1.0) * basis.v.one_norm() };
        if residual > bound {
            return Err(Error::ChainDefect(format!("A·V − V·J has norm {residual:e}")));
        }
        Ok(basis)
    }

    pub fn structure(&self) -> &Eigenstructure<S> {
        &self.structure
    }

    pub fn subspaces(&self) -> &[JordanSubspaceId] {
        &self.subspaces
    }

    pub fn dimension(&self) -> usize {
        self.v.rows()
    }

    pub fn v(&self) -> &Matrix<S> {
        &self.v
    }

    pub fn j(&self) -> &Matrix<S> {
        &self.j
    }

    pub fn subspace(&self, eigen: usize, chain: usize) -> Result<JordanSubspaceId> {
        self.subspaces
            .iter()
            .find(|s| s.eigen == eigen && s.chain == chain)
            .copied()
            .ok_or(Error::UnknownSubspace { eigen, chain })
    }

    pub(crate) fn check_id(&self, id: &JordanSubspaceId) -> Result<()> {
        if self.subspaces.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownSubspace {
                eigen: id.eigen,
                chain: id.chain,
            })
        }
    }

    pub fn eigenvalue_of(&self, id: &JordanSubspaceId) -> &S {
        &self.structure.eigenvalues[id.eigen].value
    }

    /// `V_ij`, the `N × r_ij` block of chain vectors.
    pub fn block(&self, id: &JordanSubspaceId) -> Matrix<S> {
        self.v.column_block(id.columns())
    }

    /// `J_ij`, the `r_ij × r_ij` Jordan block.
    pub fn jordan_block(&self, id: &JordanSubspaceId) -> Matrix<S> {
        jordan_form(id.dim, &[(self.eigenvalue_of(id).clone(), id.dim)])
    }

    pub fn chain_vectors(&self, id: &JordanSubspaceId) -> Vec<Vec<S>> {
        id.columns().map(|c| self.v.column(c)).collect()
    }

    /// `‖A·V − V·J‖₁`.
    pub fn intertwining_residual(&self, a: &Matrix<S>) -> f64 {
        a.matmul(&self.v).sub(&self.v.matmul(&self.j)).one_norm()
    }

    /// Largest `‖A v_p − λ v_p − v_{p−1}‖₁` over all chain vectors.
    pub fn chain_residual(&self, a: &Matrix<S>) -> f64 {
        let mut worst: f64 = 0.0;
        for id in &self.subspaces {
            let lambda = self.eigenvalue_of(id);
            let chain = self.chain_vectors(id);
            for (p, v) in chain.iter().enumerate() {
                let mut r = sub_vec(&a.mul_vec(v), &scale_vec(v, lambda));
                if p > 0 {
                    r = sub_vec(&r, &chain[p - 1]);
                }
                worst = worst.max(crate::matrix::norm1(&r));
            }
        }
        worst
    }

    /// `V·J·V⁻¹`.
    pub fn reconstruct(&self, eps_zero: f64) -> Result<Matrix<S>> {
        Ok(self.v.matmul(&self.j).matmul(&self.v.inverse(eps_zero)?))
    }

    /// Scales every chain so that `‖V_ij‖₁ = 1`. Scaling a whole chain by a
    /// scalar keeps the recursion, so the represented operator is unchanged.
    pub fn normalize_chains(&self) -> Self {
        let mut factors = vec![S::one(); self.dimension()];
        for id in &self.subspaces {
            let block = self.block(id);
            let norm = block.one_norm();
            if norm > 0.0 && norm != 1.0 {
                let c = exact_one_norm(&block).map_or_else(|| S::from_f64(1.0 / norm), |v| S::one() / v);
                for col in id.columns() {
                    factors[col] = c.clone();
                }
            }
        }
        self.with_column_factors(&factors)
    }

    fn with_column_factors(&self, factors: &[S]) -> Self {
        let v = Matrix::from_fn(self.v.rows(), self.v.cols(), |i, j| {
            self.v.get(i, j).clone() * factors[j].clone()
        });
        Self { v, ..self.clone() }
    }

    /// Jordan basis of `c·A` derived from this basis of `A`: eigenvalues
    /// become `c·λ` and chain vector `v_p` becomes `c^{−(p−1)}·v_p`.
    pub fn scaled(&self, c: &S) -> Self {
        let inv = S::one() / c.clone();
        let mut factors = vec![S::one(); self.dimension()];
        for id in &self.subspaces {
            let mut f = S::one();
            for col in id.columns() {
                factors[col] = f.clone();
                f = f * inv.clone();
            }
        }
        let mut out = self.with_column_factors(&factors);
        for e in &mut out.structure.eigenvalues {
            e.value = e.value.clone() * c.clone();
        }
        let blocks: Vec<(S, usize)> = out
            .subspaces
            .iter()
            .map(|id| (out.structure.eigenvalues[id.eigen].value.clone(), id.dim))
            .collect();
        out.j = jordan_form(self.dimension(), &blocks);
        out
    }

    /// Regenerates each chain inside its own Jordan subspace. For subspace
    /// `k`, `coefficients[k] = [t₀, …, t_{r−1}]` with `t₀ ≠ 0` maps the chain
    /// to `v'_p = Σ_{q≤p} t_{p−q} v_q`, i.e. `V_ij ↦ V_ij·T` with `T` upper
    /// triangular Toeplitz, which commutes with `J_ij`.
    pub fn recombine_chains(&self, coefficients: &[Vec<S>]) -> Result<Self> {
        if coefficients.len() != self.subspaces.len() {
            return Err(Error::DimensionMismatch {
                expected: self.subspaces.len(),
                found: coefficients.len(),
            });
        }
        let n = self.dimension();
        let mut columns = self.v.columns();
        for (id, t) in self.subspaces.iter().zip(coefficients) {
            if t.len() != id.dim {
                return Err(Error::DimensionMismatch {
                    expected: id.dim,
                    found: t.len(),
                });
            }
            if t[0].is_zero() {
                return Err(Error::ChainDefect("leading recombination coefficient is zero".into()));
            }
            let old = self.chain_vectors(id);
            for p in 0..id.dim {
                let mut v = vec![S::zero(); n];
                for q in 0..=p {
                    for (acc, x) in v.iter_mut().zip(&old[q]) {
                        acc.add_product(&t[p - q], x);
                    }
                }
                columns[id.offset + p] = v;
            }
        }
        Ok(Self {
            v: Matrix::from_columns(n, &columns),
            ..self.clone()
        })
    }
}

fn same_value<S: Scalar>(a: &S, b: &S, tol: &Tolerances) -> bool {
    if S::EXACT {
        a == b
    } else {
        (a.clone() - b.clone()).abs() <= tol.cluster
    }
}

/// Block-diagonal Jordan form with upper ones on each block's superdiagonal.
pub fn jordan_form<S: Scalar>(n: usize, blocks: &[(S, usize)]) -> Matrix<S> {
    let mut diag = Vec::with_capacity(n);
    let mut superdiag = vec![false; n];
    for (value, r) in blocks {
        let start = diag.len();
        for k in 0..*r {
            diag.push(value.clone());
            if k > 0 {
                superdiag[start + k] = true;
            }
        }
    }
    assert_eq!(diag.len(), n, "block sizes do not sum to the dimension");
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i].clone()
        } else if j == i + 1 && superdiag[j] {
            S::one()
        } else {
            S::zero()
        }
    })
}

/// Dimensions of `Ker(A − λI)^p` for `p = 1, 2, …` until they stop growing.
pub(crate) fn generalized_kernel_dims<S: Scalar>(a: &Matrix<S>, lambda: &S, tol: &Tolerances) -> Vec<usize> {
    generalized_kernels(&a.shifted(lambda), tol)
        .iter()
        .map(Vec::len)
        .collect()
}

/// Kernel bases of `M^p` for `p = 1..=m`, where `m` is the first power at
/// which the dimension stops growing. Empty when `M` is nonsingular.
fn generalized_kernels<S: Scalar>(m: &Matrix<S>, tol: &Tolerances) -> Vec<Vec<Vec<S>>> {
    let n = m.rows();
    let mut out: Vec<Vec<Vec<S>>> = Vec::new();
    let mut power = Matrix::identity(n);
    let mut last = 0;
    for _ in 0..n {
        power = power.matmul(m);
        let basis = power.nullspace(tol.zero);
        if basis.len() == last {
            break;
        }
        last = basis.len();
        out.push(basis);
        if last == n {
            break;
        }
    }
    out
}

/// Basis of the generalized eigenspace of order `p`, `Ker(A − λI)^p`.
pub fn generalized_eigenspace<S: Scalar>(
    a: &Matrix<S>,
    lambda: &S,
    p: u32,
    tol: &Tolerances,
) -> Result<Vec<Vec<S>>> {
    a.ensure_square()?;
    if p == 0 {
        return Ok(Vec::new());
    }
    let basis = a.shifted(lambda).pow(p).nullspace(tol.zero);
    if basis.is_empty() {
        return Err(Error::NotAnEigenvalue(format!("{:?}", lambda.to_c64())));
    }
    Ok(basis)
}

/// Jordan chains of `λ`, longest first.
pub fn jordan_chains<S: Scalar>(a: &Matrix<S>, lambda: &S, tol: &Tolerances) -> Result<Chains<S>> {
    a.ensure_square()?;
    let m = a.shifted(lambda);
    let kernels = generalized_kernels(&m, tol);
    if kernels.is_empty() {
        return Err(Error::NotAnEigenvalue(format!("{:?}", lambda.to_c64())));
    }
    staircase(&m, &kernels, tol)
}

fn staircase<S: Scalar>(m: &Matrix<S>, kernels: &[Vec<Vec<S>>], tol: &Tolerances) -> Result<Chains<S>> {
    let index = kernels.len();
    let dims: Vec<usize> = std::iter::once(0).chain(kernels.iter().map(Vec::len)).collect();
    // chains of length ≥ p
    let at_least = |p: usize| if p > index { 0 } else { dims[p] - dims[p - 1] };
    let independence = tol.zero.sqrt();

    let mut tops: Vec<(usize, Vec<S>)> = Vec::new();
    let mut level: Vec<Vec<S>> = Vec::new();
    for p in (1..=index).rev() {
        let needed = at_least(p)
            .checked_sub(at_least(p + 1))
            .ok_or_else(|| Error::ChainDefect("kernel dimensions are not concave".into()))?;
        let mut orth: Vec<Vec<S>> = Vec::new();
        let lower: &[Vec<S>] = if p >= 2 { &kernels[p - 2] } else { &[] };
        for v in lower.iter().chain(&level) {
            let r = project_out(v, &orth);
            if !negligible(&r, v, independence) {
                orth.push(r);
            }
        }
        let mut candidates: Vec<&Vec<S>> = kernels[p - 1].iter().collect();
        for _ in 0..needed {
            let pick = if S::EXACT {
                candidates
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (k, project_out(c, &orth)))
                    .find(|(_, r)| r.iter().any(|x| !x.is_zero()))
            } else {
                candidates
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let r = project_out(c, &orth);
                        let score = norm2(&r) / norm2(c).max(f64::MIN_POSITIVE);
                        (k, r, score)
                    })
                    .fold(None, |best: Option<(usize, Vec<S>, f64)>, x| match best {
                        Some(b) if b.2 >= x.2 => Some(b),
                        _ => Some(x),
                    })
                    .filter(|(_, _, score)| *score > independence)
                    .map(|(k, r, _)| (k, r))
            };
            let Some((k, residual)) = pick else {
                return Err(Error::ChainDefect(format!(
                    "could not find {needed} independent generators of order {p}; \
                     try the exact backend or a different zero tolerance"
                )));
            };
            let top = candidates.remove(k).clone();
            orth.push(residual);
            level.push(top.clone());
            tops.push((p, top));
        }
        if p > 1 {
            level = level.iter().map(|v| m.mul_vec(v)).collect();
        }
    }
    Ok(tops
        .into_iter()
        .map(|(len, top)| {
            let mut chain = vec![top];
            for _ in 1..len {
                let next = m.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            chain
        })
        .collect())
}

fn negligible<S: Scalar>(residual: &[S], original: &[S], rel: f64) -> bool {
    if S::EXACT {
        residual.iter().all(Scalar::is_zero)
    } else {
        norm2(residual) <= rel * norm2(original)
    }
}

/// Full Jordan decomposition `A = V·J·V⁻¹`.
///
/// In float mode, eigenvalues that are alone in their cluster take their
/// eigenvector directly from the Schur form; clustered eigenvalues go through
/// the staircase on `A − λI` restricted to the generalized eigenspace.
pub fn jordan_decomposition<S: Scalar>(
    a: &Matrix<S>,
    mode: &EigenMode<S>,
    tol: &Tolerances,
) -> Result<JordanBasis<S>> {
    let n = a.ensure_square()?;
    let mut groups: Vec<(S, Chains<S>)> = Vec::new();
    match mode {
        EigenMode::Float => {
            let spectrum = eigen::float_spectrum(a, tol)?;
            for cluster in &spectrum.clusters {
                let value = S::from_c64(cluster.value);
                let chains = if cluster.members.len() == 1 {
                    let v = spectrum.schur.eigenvector(cluster.members[0]);
                    vec![vec![v.into_iter().map(S::from_c64).collect()]]
                } else {
                    restricted::restricted_chains(a, &value, cluster.members.len(), tol)?
                };
                groups.push((value, chains));
            }
        }
        _ => {
            for (value, algebraic) in find_eigenvalues(a, mode, tol)? {
                let chains = chains_with_multiplicity(a, &value, algebraic, tol)?;
                groups.push((value, chains));
            }
        }
    }
    let basis = JordanBasis::from_chains(n, groups)?;
    if basis.v.inverse(tol.zero).is_err() {
        return Err(Error::ChainDefect(
            "computed chains are linearly dependent; try the exact backend or adjust the zero tolerance".into(),
        ));
    }
    Ok(basis)
}

fn chains_with_multiplicity<S: Scalar>(
    a: &Matrix<S>,
    value: &S,
    algebraic: usize,
    tol: &Tolerances,
) -> Result<Chains<S>> {
    let chains = jordan_chains(a, value, tol)?;
    let total: usize = chains.iter().map(Vec::len).sum();
    if total != algebraic {
        return Err(Error::ChainDefect(format!(
            "eigenvalue {:?}: chains cover {total} dimensions, algebraic multiplicity is {algebraic}",
            value.to_c64()
        )));
    }
    Ok(chains)
}

/// Free-function form of [`JordanBasis::normalize_chains`].
/// Column-sum norm in the scalar field, if every modulus is representable.
fn exact_one_norm<S: Scalar>(m: &Matrix<S>) -> Option<S> {
    let mut best: Option<(num_rational::BigRational, S)> = None;
    for j in 0..m.cols() {
        let mut sum = S::zero();
        for i in 0..m.rows() {
            sum = sum + m.get(i, j).modulus()?;
        }
        let key = sum.to_exact().re().clone();
        if best.as_ref().is_none_or(|(b, _)| key > *b) {
            best = Some((key, sum));
        }
    }
    best.map(|(_, s)| s)
}

pub fn normalize_chains<S: Scalar>(basis: &JordanBasis<S>) -> JordanBasis<S> {
    basis.normalize_chains()
}
