//! Float chains for a clustered eigenvalue. The staircase runs on the
//! restriction of `A − λI` to its generalized eigenspace, with kernels from
//! singular value decompositions.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{staircase, Chains};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Tolerances};
use crate::scalar::Scalar;

pub(super) fn restricted_chains<S: Scalar>(
    a: &Matrix<S>,
    value: &S,
    algebraic: usize,
    tol: &Tolerances,
) -> Result<Chains<S>> {
    let n = a.rows();
    let lambda = value.to_c64();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let x = a.get(i, j).to_c64();
        if i == j {
            x - lambda
        } else {
            x
        }
    });
    let mut power = DMatrix::identity(n, n);
    for _ in 0..algebraic {
        power = &power * &m;
    }
    let (_, b) = right_singular(&power);
    let b = b.columns(0, algebraic).into_owned();
    let restricted = b.adjoint() * &m * &b;

    let threshold = tol.zero.sqrt();
    let mut kernels: Vec<Vec<Vec<S>>> = Vec::new();
    let mut power = DMatrix::identity(algebraic, algebraic);
    let mut last = 0;
    while last < algebraic && kernels.len() < algebraic {
        power = &power * &restricted;
        let (sigma, vecs) = right_singular(&power);
        let scale = sigma.last().copied().unwrap_or(0.0).max(1.0);
        let nullity = if kernels.len() + 1 == algebraic {
            algebraic
        } else {
            sigma.iter().take_while(|&&s| s <= threshold * scale).count().max(last)
        };
        if nullity == last {
            break;
        }
        last = nullity;
        kernels.push(
            (0..nullity)
                .map(|k| vecs.column(k).iter().map(|&z| S::from_c64(z)).collect())
                .collect(),
        );
    }
    if last != algebraic {
        return Err(Error::ChainDefect(format!(
            "eigenvalue {lambda:?}: generalized eigenspace has dimension {last}, algebraic multiplicity is {algebraic}"
        )));
    }
    let local = Matrix::from_fn(algebraic, algebraic, |i, j| S::from_c64(restricted[(i, j)]));
    let chains = staircase(&local, &kernels, tol)?;
    Ok(chains
        .into_iter()
        .map(|chain| {
            chain
                .into_iter()
                .map(|c| {
                    (0..n)
                        .map(|i| {
                            let z: Complex64 = (0..algebraic).map(|k| b[(i, k)] * c[k].to_c64()).sum();
                            S::from_c64(z)
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Singular values in ascending order with the matching right singular
/// vectors as columns.
fn right_singular(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.ncols();
    // Pad to square so that `V` is complete.
    let square = if m.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = DMatrix::from_fn(n, n, |r, c| v_t[(order[c], r)].conj());
    (sigma, v)
}
