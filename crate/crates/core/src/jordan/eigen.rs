//! Eigenvalue acquisition: exact rational-root extraction, numerically
//! computed and clustered roots, or a user-supplied list.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Complex64, GaussRational, Scalar};
use crate::Tolerances;

/// How eigenvalues are obtained.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenMode<S> {
    /// Gaussian-rational roots of the characteristic polynomial (exact backend).
    Exact,
    /// Roots from a complex Schur form, merged within `Tolerances::cluster`.
    Float,
    /// Caller provides every distinct eigenvalue; the list is validated.
    Supplied(Vec<S>),
}

impl<S: Scalar> EigenMode<S> {
    /// Natural computed mode for the scalar backend.
    pub fn computed() -> Self {
        if S::EXACT {
            EigenMode::Exact
        } else {
            EigenMode::Float
        }
    }
}

/// Distinct eigenvalues with algebraic multiplicities, ascending by real then
/// imaginary part for computed modes and in the given order for supplied ones.
pub fn find_eigenvalues<S: Scalar>(
    a: &Matrix<S>,
    mode: &EigenMode<S>,
    tol: &Tolerances,
) -> Result<Vec<(S, usize)>> {
    a.ensure_square()?;
    match mode {
        EigenMode::Exact => exact_eigenvalues(a),
        EigenMode::Float => Ok(float_spectrum(a, tol)?
            .clusters
            .into_iter()
            .map(|c| (S::from_c64(c.value), c.members.len()))
            .collect()),
        EigenMode::Supplied(values) => supplied_eigenvalues(a, values, tol),
    }
}

fn exact_eigenvalues<S: Scalar>(a: &Matrix<S>) -> Result<Vec<(S, usize)>> {
    if !S::EXACT {
        return Err(Error::Config("exact eigenvalue mode needs the exact backend".into()));
    }
    let mut remaining = Poly::characteristic(a);
    let square_free = remaining.square_free();
    let mut found: Vec<(S, usize)> = Vec::new();
    for candidate in rational_root_candidates(&square_free)? {
        if found.iter().any(|(v, _)| *v == candidate) {
            continue;
        }
        if !square_free.eval(&candidate).is_zero() {
            continue;
        }
        let linear = Poly::new(vec![-candidate.clone(), S::one()]);
        let mut mult = 0;
        loop {
            let (q, r) = remaining.div_rem(&linear);
            if !r.is_zero() {
                break;
            }
            remaining = q;
            mult += 1;
        }
        found.push((candidate, mult));
    }
    let left = remaining.degree().unwrap_or(0);
    if left > 0 {
        return Err(Error::IrrationalSpectrum {
            remaining_degree: left,
        });
    }
    sort_ascending(&mut found);
    Ok(found)
}

fn sort_ascending<S: Scalar, T>(items: &mut [(S, T)]) {
    items.sort_by(|(x, _), (y, _)| {
        let (x, y) = (x.to_c64(), y.to_c64());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });
}

/// Candidate Gaussian-rational roots of a square-free polynomial.
///
/// Numeric roots are polished by Newton steps and then snapped: for a root
/// `p/q` in lowest terms of a polynomial with Gaussian-integer coefficients,
/// `q` divides the leading coefficient `c`, so `c·z` is a Gaussian integer.
fn rational_root_candidates<S: Scalar>(square_free: &Poly<S>) -> Result<Vec<S>> {
    let Some(degree) = square_free.degree() else {
        return Ok(Vec::new());
    };
    if degree == 0 {
        return Ok(Vec::new());
    }
    let exact: Vec<GaussRational> = square_free
        .coeffs()
        .iter()
        .map(Scalar::to_exact)
        .collect();
    let denom = exact
        .iter()
        .fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, &c.denominator_lcm()));
    let scale = GaussRational::new(BigRational::from_integer(denom), BigRational::zero());
    let integral: Vec<GaussRational> = exact.iter().map(|c| c.clone() * scale.clone()).collect();
    let lead = integral.last().unwrap().clone();
    let lead_f = lead.to_c64();

    let float_poly: Vec<Complex64> = square_free.coeffs().iter().map(Scalar::to_c64).collect();
    let roots = polynomial_roots(&float_poly)?;
    let mut out = Vec::new();
    for z in roots {
        let z = newton_polish(&float_poly, z);
        let scaled = lead_f * z;
        let (Some(re), Some(im)) = (BigInt::from_f64(scaled.re.round()), BigInt::from_f64(scaled.im.round())) else {
            continue;
        };
        let snapped = GaussRational::new(BigRational::from_integer(re), BigRational::from_integer(im)) / lead.clone();
        out.push(S::from_exact(&snapped));
    }
    Ok(out)
}

fn newton_polish(p: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (mut f, mut df) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in p.iter().rev() {
            df = df * z + f;
            f = f * z + c;
        }
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

fn polynomial_roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let poly = Poly::new(p.to_vec());
    let companion = poly.companion();
    Ok(schur(&companion)?.eigenvalues())
}

/// Complex Schur factorization `A = Q·T·Qᴴ` in double precision.
pub(crate) struct SchurForm {
    pub q: DMatrix<Complex64>,
    pub t: DMatrix<Complex64>,
}

impl SchurForm {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.nrows()).map(|i| self.t[(i, i)]).collect()
    }

    /// Eigenvector for the `k`-th diagonal entry of `T`, mapped back through
    /// `Q` and scaled to unit 2-norm.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let t = &self.t;
        let n = t.nrows();
        let lambda = t[(k, k)];
        let tnorm = (0..n)
            .map(|j| (0..n).map(|i| t[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let small = f64::EPSILON * tnorm.max(f64::MIN_POSITIVE);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                acc += t[(i, j)] * y[j];
            }
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            y[i] = -acc / d;
        }
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| (0..=k).map(|j| self.q[(i, j)] * y[j]).sum())
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v {
            *z /= norm;
        }
        v
    }
}

pub(crate) fn schur<S: Scalar>(a: &Matrix<S>) -> Result<SchurForm> {
    let n = a.rows();
    if n == 0 {
        return Ok(SchurForm {
            q: DMatrix::zeros(0, 0),
            t: DMatrix::zeros(0, 0),
        });
    }
    let m = DMatrix::from_fn(n, n, |i, j| a.get(i, j).to_c64());
    if let Some(d) = m.clone().try_schur(f64::EPSILON, 10_000 * n) {
        let (q, t) = d.unpack();
        return Ok(SchurForm { q, t });
    }
    // Highly symmetric inputs such as cycles can stall the shifted QR
    // iteration; a unitary similarity with a reflector breaks the symmetry.
    for attempt in 1..=4 {
        let h = reflector(n, attempt);
        if let Some(d) = (&h * &m * &h).try_schur(f64::EPSILON, 10_000 * n) {
            let (u, t) = d.unpack();
            return Ok(SchurForm { q: h * u, t });
        }
    }
    Err(Error::ChainDefect("Schur iteration did not converge".into()))
}

/// Householder reflector `I − 2uuᴴ` for a fixed irregular unit vector `u`.
fn reflector(n: usize, seed: usize) -> DMatrix<Complex64> {
    let u: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = (k + 1) as f64 * (0.7548776662 * seed as f64 + 0.5698402910);
            Complex64::new(t.sin() + 1.5, (1.3 * t).cos())
        })
        .collect();
    let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - (u[i] * u[j].conj() / (norm * norm)) * 2.0
    })
}

/// A group of numerically computed eigenvalues treated as one.
pub(crate) struct Cluster {
    pub value: Complex64,
    /// Diagonal positions in the Schur form.
    pub members: Vec<usize>,
}

pub(crate) struct FloatSpectrum {
    pub clusters: Vec<Cluster>,
    pub schur: SchurForm,
}

/// Schur eigenvalues merged by single linkage within `tol.cluster`; each
/// cluster is represented by its mean.
pub(crate) fn float_spectrum<S: Scalar>(a: &Matrix<S>, tol: &Tolerances) -> Result<FloatSpectrum> {
    if S::EXACT {
        return Err(Error::Config("float eigenvalue mode needs the float backend".into()));
    }
    let schur = schur(a)?;
    let values = schur.eigenvalues();
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol.cluster {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    let mut clusters: Vec<(Complex64, Cluster)> = groups
        .into_iter()
        .map(|(_, members)| {
            let sum: Complex64 = members.iter().map(|&i| values[i]).sum();
            let value = sum / members.len() as f64;
            (value, Cluster { value, members })
        })
        .collect();
    clusters.sort_by(|(x, _), (y, _)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(FloatSpectrum {
        clusters: clusters.into_iter().map(|(_, c)| c).collect(),
        schur,
    })
}

fn supplied_eigenvalues<S: Scalar>(
    a: &Matrix<S>,
    values: &[S],
    tol: &Tolerances,
) -> Result<Vec<(S, usize)>> {
    let n = a.rows();
    let mut out: Vec<(S, usize)> = Vec::new();
    for v in values {
        let duplicate = out.iter().any(|(w, _)| {
            if S::EXACT {
                w == v
            } else {
                (w.clone() - v.clone()).abs() <= tol.cluster
            }
        });
        if duplicate {
            return Err(Error::BadSuppliedSpectrum(format!(
                "{:?} listed more than once",
                v.to_c64()
            )));
        }
        let dims = super::generalized_kernel_dims(a, v, tol);
        let algebraic = dims.last().copied().unwrap_or(0);
        if algebraic == 0 {
            return Err(Error::BadSuppliedSpectrum(format!(
                "{:?} is not an eigenvalue",
                v.to_c64()
            )));
        }
        out.push((v.clone(), algebraic));
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    if total != n {
        return Err(Error::BadSuppliedSpectrum(format!(
            "multiplicities sum to {total}, expected {n}; eigenvalues are missing or misplaced"
        )));
    }
    Ok(out)
}
