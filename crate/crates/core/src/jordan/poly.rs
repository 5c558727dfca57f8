//! Dense univariate polynomials over a field, lowest degree first.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = S::one() / lc.clone();
                Self::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
            None => self.clone(),
        }
    }

    /// Quotient and remainder of polynomial long division.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let neg = -c.clone();
                rem[k + i].add_product(&neg, d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (exact fields only).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Polynomial with the same roots, each of multiplicity one.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier
    /// recursion. Requires exact arithmetic to stay accurate.
    pub fn characteristic(a: &Matrix<S>) -> Self {
        let n = a.rows();
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Matrix::<S>::zeros(n, n);
        for k in 1..=n {
            let shift = coeffs[n + 1 - k].clone();
            m = a.matmul(&m).add(&Matrix::identity(n).scale(&shift));
            let am = a.matmul(&m);
            let mut trace = S::zero();
            for i in 0..n {
                trace = trace + am.get(i, i).clone();
            }
            coeffs[n - k] = -(trace / S::from_i64(k as i64));
        }
        Self::new(coeffs)
    }

    /// Companion matrix of the monic version of `self`, whose eigenvalues are
    /// the roots.
    pub fn companion(&self) -> Matrix<S> {
        let p = self.monic();
        let d = p.degree().unwrap_or(0);
        Matrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -p.coeffs[i].clone()
            } else if i == j + 1 {
                S::one()
            } else {
                S::zero()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;

    type Q = GaussRational;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&v| Q::from_i64(v)).collect())
    }

    #[test]
    fn characteristic_of_cycle() {
        let c = Matrix::<Q>::from_i64_rows(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(Poly::characteristic(&c), p(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn characteristic_of_nilpotent_example() {
        let a = Matrix::<Q>::from_i64_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(Poly::characteristic(&a), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn square_free_part() {
        // (x-2)^2 (x-5) = x^3 - 9x^2 + 24x - 20
        let f = p(&[-20, 24, -9, 1]);
        assert_eq!(f.square_free(), p(&[10, -7, 1]));
        let (q, r) = f.div_rem(&p(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[10, -7, 1]));
    }
}
