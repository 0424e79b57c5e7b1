//! Discriminants of binary forms.
//!
//! For `F = lambda * prod (alpha_i X - beta_i Y)` the discriminant is
//! `lambda^{2(n-1)} * prod_{i<j} (alpha_i beta_j - alpha_j beta_i)^2`.
//! The exact route goes through the Sylvester resultant of `F(x,1)` and its
//! derivative; the floating route multiplies the root brackets directly.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::form::BinaryForm;
use super::roots::RootSet;
use crate::error::{Error, Result};

/// Exact discriminant of a form with rational coefficients.
///
/// A single leading zero coefficient (one root at infinity, `F = Y * G`)
/// gives `D_F = a_1^2 * D_G`; two or more give a repeated root and `D_F = 0`.
pub fn discriminant_exact(form: &BinaryForm) -> Result<BigRational> {
    let c = form.exact_coeffs().ok_or(Error::NotExact)?;
    let n = form.degree();
    if n == 1 {
        return Ok(BigRational::one());
    }
    match form.leading_zeros() {
        0 => Ok(poly_discriminant(c)),
        1 => {
            let a1 = &c[1];
            Ok(a1 * a1 * poly_discriminant(&c[1..]))
        }
        _ => Ok(BigRational::zero()),
    }
}

/// Discriminant of the univariate polynomial with descending coefficients
/// `p` (leading coefficient nonzero), using
/// `disc(p) = (-1)^{m(m-1)/2} Res(p, p') / a_0`.
pub(crate) fn poly_discriminant(p: &[BigRational]) -> BigRational {
    let m = p.len() - 1;
    if m <= 1 {
        return BigRational::one();
    }
    let dp = derivative(p);
    let res = resultant(p, &dp);
    let sign = if (m * (m - 1) / 2) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * res / &p[0]
}

/// Derivative of a polynomial with descending coefficients.
pub(crate) fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    let m = p.len() - 1;
    p[..m]
        .iter()
        .enumerate()
        .map(|(i, a)| a * BigRational::from_integer(((m - i) as i64).into()))
        .collect()
}

/// Determinant of the Sylvester matrix of `p` (degree m) and `q` (degree k),
/// both with nonzero leading coefficients.
pub(crate) fn resultant(p: &[BigRational], q: &[BigRational]) -> BigRational {
    let m = p.len() - 1;
    let k = q.len() - 1;
    let size = m + k;
    if size == 0 {
        return BigRational::one();
    }
    let mut rows = vec![vec![BigRational::zero(); size]; size];
    for i in 0..k {
        for (j, a) in p.iter().enumerate() {
            rows[i][i + j] = a.clone();
        }
    }
    for i in 0..m {
        for (j, b) in q.iter().enumerate() {
            rows[k + i][i + j] = b.clone();
        }
    }
    determinant(rows)
}

/// Gaussian elimination over the rationals.
fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Number of distinct real roots of a polynomial (descending coefficients,
/// leading coefficient nonzero), by a Sturm sequence.
pub(crate) fn count_real_roots(p: &[BigRational]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let len = seq.len();
        let r = remainder(&seq[len - 2], &seq[len - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|a| -a).collect());
    }
    let changes = |signs: Vec<i8>| {
        let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos_inf = seq.iter().map(|s| sign(&s[0])).collect();
    let at_neg_inf = seq
        .iter()
        .map(|s| {
            let deg = s.len() - 1;
            if deg % 2 == 1 { -sign(&s[0]) } else { sign(&s[0]) }
        })
        .collect();
    changes(at_neg_inf) - changes(at_pos_inf)
}

/// Number of real roots counted with multiplicity: the distinct real roots
/// of `p`, of `gcd(p, p')`, of the next gcd, and so on.
pub(crate) fn count_real_roots_with_multiplicity(p: &[BigRational]) -> usize {
    let mut q = trim(p.to_vec());
    let mut total = 0;
    while q.len() > 1 {
        total += count_real_roots(&q);
        q = gcd(q.clone(), derivative(&q));
    }
    total
}

fn gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sign(a: &BigRational) -> i8 {
    if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    let lead = p.iter().take_while(|a| a.is_zero()).count();
    p.drain(..lead);
    p
}

/// Remainder of `a / b` (descending coefficients); empty vec for zero.
fn remainder(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let factor = &r[0] / &b[0];
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[i] -= delta;
        }
        r.remove(0);
        r = trim(r);
    }
    r
}

/// Discriminant from a factorisation, `lambda^{2(n-1)} prod_{i<j} [i,j]^2`.
pub fn discriminant_float(roots: &RootSet) -> Complex64 {
    let pairs = roots.pairs();
    let n = pairs.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let br = pairs[i].alpha * pairs[j].beta - pairs[j].alpha * pairs[i].beta;
            acc *= br * br;
        }
    }
    acc * roots.scale().powu(2 * (n as u32).saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn quadratic_discriminant() {
        // x^2 + 3x + 2 -> 9 - 8
        assert_eq!(poly_discriminant(&[q(1), q(3), q(2)]), q(1));
        assert_eq!(poly_discriminant(&[q(2), q(0), q(1)]), q(-8));
    }

    #[test]
    fn leading_zero_bookkeeping() {
        let xy = BinaryForm::from_integers(&[0, 1, 0]).unwrap();
        assert_eq!(discriminant_exact(&xy).unwrap(), q(1));
        let y2x = BinaryForm::from_integers(&[0, 0, 1, 0]).unwrap();
        assert_eq!(discriminant_exact(&y2x).unwrap(), q(0));
        let lin = BinaryForm::from_integers(&[0, 5]).unwrap();
        assert_eq!(discriminant_exact(&lin).unwrap(), q(1));
    }

    #[test]
    fn not_exact_rejected() {
        let f = BinaryForm::from_reals(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(discriminant_exact(&f), Err(Error::NotExact));
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x+2)(x^2+1)
        let p = [q(1), q(1), q(-1), q(1), q(-2)];
        assert_eq!(count_real_roots(&p), 2);
        assert_eq!(count_real_roots(&[q(1), q(0), q(1)]), 0);
        // (x-1)^2 (x+1): distinct real roots only
        assert_eq!(count_real_roots(&[q(1), q(-1), q(-1), q(1)]), 2);
        assert_eq!(count_real_roots(&[q(3), q(-6)]), 1);
    }

    #[test]
    fn resultant_of_linear_factors() {
        // monic p: Res(p, q) = q(root of p) = 2 - 5
        assert_eq!(resultant(&[q(1), q(-2)], &[q(1), q(-5)]), q(-3));
    }
}
