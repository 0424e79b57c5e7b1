use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::form::{convolve, rational_to_f64, BinaryForm, Coeffs};
use crate::error::{Error, Result};

/// A 2x2 matrix `T = [[a, b], [c, d]]` acting on forms by
/// `F_T(X, Y) = F(aX + bY, cX + dY)`.
///
/// Entries are stored as exact rationals; finite f64 entries convert
/// exactly, so transforming an exact form never loses precision.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl LinearMap {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        LinearMap { a, b, c, d }
    }

    pub fn from_integers(a: i64, b: i64, c: i64, d: i64) -> Self {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        LinearMap::new(q(a), q(b), q(c), q(d))
    }

    pub fn from_f64(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let q = |v: f64| {
            BigRational::from_float(v)
                .ok_or_else(|| Error::InvalidArgument(format!("non-finite matrix entry {v}")))
        };
        Ok(LinearMap::new(q(a)?, q(b)?, q(c)?, q(d)?))
    }

    pub fn identity() -> Self {
        LinearMap::from_integers(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Integer entries and determinant +-1.
    pub fn is_gl2z(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|e| e.is_integer())
            && self.det().abs().is_one()
    }

    pub fn entries_f64(&self) -> [f64; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(rational_to_f64)
    }

    /// Matrix product `self * rhs`.
    ///
    /// Since `(F_S)_T(v) = F(S T v)`, transforming by `S` and then by `T`
    /// equals a single transform by `S.product(&T)`.
    pub fn product(&self, rhs: &LinearMap) -> LinearMap {
        LinearMap::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

/// `F_T(X, Y) = F(aX + bY, cX + dY)`; exact for exact forms.
pub fn transform(form: &BinaryForm, t: &LinearMap) -> Result<BinaryForm> {
    if !t.is_invertible() {
        return Err(Error::SingularMap);
    }
    match form.coeffs() {
        Coeffs::Exact(c) => {
            let out = substitute(
                c,
                [t.a.clone(), t.b.clone()],
                [t.c.clone(), t.d.clone()],
                BigRational::one(),
            );
            BinaryForm::from_rationals(out)
        }
        Coeffs::Complex(c) => {
            let [a, b, cc, d] = t.entries_f64().map(|v| Complex64::new(v, 0.0));
            let out = substitute(c, [a, b], [cc, d], Complex64::new(1.0, 0.0));
            BinaryForm::from_complex(out)
        }
    }
}

/// Expands `sum_k coeffs[k] * L1^{n-k} * L2^k` for linear forms `L1`, `L2`.
fn substitute<T>(coeffs: &[T], l1: [T; 2], l2: [T; 2], one: T) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    let n = coeffs.len() - 1;
    let powers = |l: &[T; 2]| {
        let mut p = vec![vec![one.clone()]];
        for _ in 0..n {
            let next = convolve(p.last().unwrap(), l);
            p.push(next);
        }
        p
    };
    let p1 = powers(&l1);
    let p2 = powers(&l2);
    let mut out = vec![T::zero(); n + 1];
    for (k, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = convolve(&p1[n - k], &p2[k]);
        for (o, t) in out.iter_mut().zip(term) {
            *o = o.clone() + a.clone() * t;
        }
    }
    out
}
