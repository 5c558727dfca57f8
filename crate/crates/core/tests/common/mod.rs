//! Generators shared by the integration tests.
#![allow(dead_code)]

use jordan_gft::jordan::{jordan_form, JordanBasis};
use jordan_gft::{Complex64, GaussRational, Graph, GraphSignal, Matrix, Scalar, Tolerances};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Q = GaussRational;

/// `A = V₀·J·V₀⁻¹` with integer unimodular `V₀` and a known Jordan form.
#[derive(Clone, Debug)]
pub struct Planted {
    pub a: Matrix<Q>,
    pub v0: Matrix<Q>,
    /// `(λ, block size)` in the column order of `V₀`.
    pub blocks: Vec<(Q, usize)>,
}

impl Planted {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Distinct eigenvalues, each with its block sizes in decreasing order.
    pub fn partial_multiplicities(&self) -> Vec<(Q, Vec<usize>)> {
        let mut out: Vec<(Q, Vec<usize>)> = Vec::new();
        for (l, r) in &self.blocks {
            match out.iter_mut().find(|(m, _)| m == l) {
                Some((_, sizes)) => sizes.push(*r),
                None => out.push((l.clone(), vec![*r])),
            }
        }
        for (_, sizes) in &mut out {
            sizes.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(|b| b.1).max().unwrap_or(0)
    }

    pub fn float(&self) -> Matrix<Complex64> {
        self.a.map_into(Scalar::to_c64)
    }

    /// The planted basis itself, which is a Jordan basis of `A`.
    pub fn planted_basis(&self) -> JordanBasis<Q> {
        JordanBasis::from_parts(&self.a, self.v0.clone(), &self.blocks, &Tolerances::default()).unwrap()
    }
}

/// Random unimodular integer matrix: a product of unit triangular factors
/// with entries in `{−1, 0, 1}` and a column permutation.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix<Q> {
    let entry = |rng: &mut R| Q::from_i64(rng.gen_range(-1..=1));
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Q::one(),
        std::cmp::Ordering::Greater => entry(rng),
        std::cmp::Ordering::Less => Q::zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Q::one(),
        std::cmp::Ordering::Less => entry(rng),
        std::cmp::Ordering::Greater => Q::zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_fn(n, n, |i, j| if perm[j] == i { Q::one() } else { Q::zero() });
    lower.matmul(&upper).matmul(&p)
}

/// Planted Jordan structure of size `2..=max_n` with blocks of size up to 4,
/// integer or Gaussian-integer eigenvalues, and repeated eigenvalues.
pub fn planted<R: Rng>(rng: &mut R, max_n: usize, complex: bool) -> Planted {
    let n = rng.gen_range(2..=max_n);
    let distinct = rng.gen_range(1..=n.min(4));
    let mut pool: Vec<Q> = Vec::new();
    while pool.len() < distinct {
        let im = if complex && rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
        let c = Q::from_gaussian(rng.gen_range(-3..=3), im);
        if !pool.contains(&c) {
            pool.push(c);
        }
    }
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let r = rng.gen_range(1..=left.min(4));
        blocks.push((pool[rng.gen_range(0..pool.len())].clone(), r));
        left -= r;
    }
    from_blocks(rng, blocks)
}

/// Planted structure from an explicit block list.
pub fn from_blocks<R: Rng>(rng: &mut R, blocks: Vec<(Q, usize)>) -> Planted {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let v0 = unimodular(rng, n);
    let j = jordan_form(n, &blocks);
    let a = v0.matmul(&j).matmul(&v0.inverse(0.0).unwrap());
    Planted { a, v0, blocks }
}

/// Planted family whose every member has a block of size at least 2.
pub fn planted_defective<R: Rng>(rng: &mut R, max_n: usize) -> Planted {
    loop {
        let p = planted(rng, max_n, true);
        if p.max_block() >= 2 {
            return p;
        }
    }
}

/// Random Gaussian-integer signal with entries in `[−5, 5]`.
pub fn integer_signal<R: Rng>(rng: &mut R, n: usize) -> GraphSignal<Q> {
    GraphSignal::from_values(
        (0..n)
            .map(|_| Q::from_gaussian(rng.gen_range(-5..=5), rng.gen_range(-2..=2)))
            .collect(),
    )
}

pub fn to_float_signal(s: &GraphSignal<Q>) -> GraphSignal<Complex64> {
    GraphSignal::from_values(s.values().iter().map(Scalar::to_c64).collect())
}

/// Strongly connected weighted digraph: a directed Hamiltonian cycle in
/// random node order plus random extra edges with probability `p`.
pub fn strongly_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph<Complex64> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        let (src, dst) = (order[k], order[(k + 1) % n]);
        data[dst * n + src] = Complex64::new(rng.gen_range(0.5..1.5), 0.0);
    }
    for dst in 0..n {
        for src in 0..n {
            if src != dst && rng.gen_bool(p) {
                data[dst * n + src] = Complex64::new(rng.gen_range(0.5..1.5), 0.0);
            }
        }
    }
    Graph::new(Matrix::new(n, n, data)).unwrap()
}

/// Unit-norm vector of independent complex Gaussians.
pub fn gaussian_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Upper triangular Toeplitz coefficients with a nonzero leading term.
pub fn toeplitz_coefficients<R: Rng>(rng: &mut R, r: usize) -> Vec<Q> {
    (0..r)
        .map(|k| loop {
            let c = Q::from_ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            if k > 0 || !c.is_zero() {
                break c;
            }
        })
        .collect()
}
