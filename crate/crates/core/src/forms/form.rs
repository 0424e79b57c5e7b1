use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient storage of a binary form, `a_0 .. a_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coeffs {
    Exact(Vec<BigRational>),
    Complex(Vec<Complex64>),
}

/// A binary form `F(X,Y) = a_0 X^n + a_1 X^{n-1} Y + ... + a_n Y^n`.
///
/// Coefficients are either exact rationals or complex floats. Exact forms
/// support the exact discriminant and exact lattice evaluation; complex
/// forms only the floating-point paths.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    coeffs: Coeffs,
}

impl BinaryForm {
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument(
                "a binary form needs degree >= 1 (at least two coefficients)".into(),
            ));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(BinaryForm { coeffs: Coeffs::Exact(coeffs) })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_rationals(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Result<Self> {
        Self::from_rationals(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn from_complex(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument(
                "a binary form needs degree >= 1 (at least two coefficients)".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        if coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
            return Err(Error::ZeroForm);
        }
        Ok(BinaryForm { coeffs: Coeffs::Complex(coeffs) })
    }

    pub fn from_reals(coeffs: &[f64]) -> Result<Self> {
        Self::from_complex(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.len() - 1
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.len(),
            Coeffs::Complex(c) => c.len(),
        }
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coeffs::Exact(_))
    }

    pub fn exact_coeffs(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coeffs::Exact(c) => Some(c),
            Coeffs::Complex(_) => None,
        }
    }

    /// Integer coefficients, if the form is exact with all denominators 1.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        let c = self.exact_coeffs()?;
        c.iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    /// Coefficients as complex floats (lossy for exact forms).
    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().map(|r| Complex64::new(rational_to_f64(r), 0.0)).collect(),
            Coeffs::Complex(c) => c.clone(),
        }
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        match &self.coeffs {
            Coeffs::Exact(_) => true,
            Coeffs::Complex(c) => c.iter().all(|z| z.im == 0.0),
        }
    }

    pub fn to_complex(&self) -> BinaryForm {
        BinaryForm { coeffs: Coeffs::Complex(self.complex_coeffs()) }
    }

    /// Number of leading zero coefficients (multiplicity of the root at infinity).
    pub fn leading_zeros(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().take_while(|a| a.is_zero()).count(),
            Coeffs::Complex(c) => c.iter().take_while(|a| a.norm_sqr() == 0.0).count(),
        }
    }

    /// Number of trailing zero coefficients (multiplicity of the factor X).
    pub fn trailing_zeros(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().rev().take_while(|a| a.is_zero()).count(),
            Coeffs::Complex(c) => c.iter().rev().take_while(|a| a.norm_sqr() == 0.0).count(),
        }
    }

    pub fn scale_exact(&self, c: &BigRational) -> Result<BinaryForm> {
        match &self.coeffs {
            Coeffs::Exact(v) => BinaryForm::from_rationals(v.iter().map(|a| a * c).collect()),
            Coeffs::Complex(_) => self.scale(Complex64::new(rational_to_f64(c), 0.0)),
        }
    }

    pub fn scale(&self, c: Complex64) -> Result<BinaryForm> {
        BinaryForm::from_complex(self.complex_coeffs().into_iter().map(|a| a * c).collect())
    }

    /// Product of two forms; exact when both factors are exact.
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => Coeffs::Exact(convolve(a, b)),
            _ => Coeffs::Complex(convolve(&self.complex_coeffs(), &other.complex_coeffs())),
        };
        BinaryForm { coeffs }
    }

    pub fn pow(&self, k: u32) -> BinaryForm {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation. `None` for complex-coefficient forms.
    pub fn eval_exact(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let c = self.exact_coeffs()?;
        Some(horner(c, x.clone(), y.clone(), BigRational::zero(), BigRational::one()))
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        match &self.coeffs {
            Coeffs::Complex(c) => horner(c, x, y, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            Coeffs::Exact(_) => horner(
                &self.complex_coeffs(),
                x,
                y,
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ),
        }
    }

    /// `|F(x, y)|` at a real point.
    pub fn abs_at(&self, x: f64, y: f64) -> f64 {
        self.eval(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).norm()
    }
}

/// Homogeneous Horner: `sum a_k x^{n-k} y^k`.
fn horner<T>(coeffs: &[T], x: T, y: T, zero: T, one: T) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    let mut acc = zero;
    let mut ypow = one;
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            ypow = ypow * y.clone();
        }
        acc = acc * x.clone() + a.clone() * ypow.clone();
    }
    acc
}

pub(crate) fn convolve<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Rational to the nearest f64, without overflowing on huge numerators
/// and denominators that individually exceed the f64 range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let (m, e) = rational_to_mantissa_exp(r);
    m * 2f64.powi(e as i32)
}

/// Natural logarithm of `|r|`, finite for any nonzero rational.
pub fn ln_abs_rational(r: &BigRational) -> f64 {
    let (m, e) = rational_to_mantissa_exp(r);
    m.abs().ln() + e as f64 * std::f64::consts::LN_2
}

fn rational_to_mantissa_exp(r: &BigRational) -> (f64, i64) {
    let (mn, en) = bigint_mantissa_exp(r.numer());
    let (md, ed) = bigint_mantissa_exp(r.denom());
    (mn / md, en - ed)
}

fn bigint_mantissa_exp(x: &BigInt) -> (f64, i64) {
    let bits = x.bits() as i64;
    if bits <= 1000 {
        return (x.to_f64().unwrap_or(0.0), 0);
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> (shift as usize);
    let m = top.to_f64().unwrap_or(0.0);
    (if x.is_negative() { -m } else { m }, shift)
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_complex(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

impl BinaryForm {
    /// Coefficients rendered one string each (rationals as `p/q`).
    pub fn coeff_strings(&self) -> Vec<String> {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().map(fmt_rational).collect(),
            Coeffs::Complex(c) => c.iter().map(fmt_complex).collect(),
        }
    }
}

/// Renders the coefficient list `[a0, a1, ..., an]` accepted by the parser.
impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_zero_and_short() {
        assert_eq!(BinaryForm::from_integers(&[0, 0, 0]), Err(Error::ZeroForm));
        assert!(BinaryForm::from_integers(&[1]).is_err());
        assert!(BinaryForm::from_reals(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn eval_examples() {
        let xy = BinaryForm::from_integers(&[0, 1, -1, 0]).unwrap();
        assert_eq!(xy.eval_exact(&q(1, 1), &q(1, 1)), Some(q(0, 1)));
        let f = BinaryForm::from_integers(&[1, 0, 1, 0]).unwrap();
        assert_eq!(f.eval_exact(&q(1, 1), &q(0, 1)), Some(q(1, 1)));
        assert_eq!(f.eval_exact(&q(1, 2), &q(3, 1)), Some(q(1, 8) + q(9, 2)));
        let z = f.eval(Complex64::new(0.5, 0.0), Complex64::new(3.0, 0.0));
        assert!((z.re - 4.625).abs() < 1e-14 && z.im == 0.0);
    }

    #[test]
    fn zeros_bookkeeping() {
        let xy = BinaryForm::from_integers(&[0, 1, -1, 0]).unwrap();
        assert_eq!(xy.leading_zeros(), 1);
        assert_eq!(xy.trailing_zeros(), 1);
        assert_eq!(xy.degree(), 3);
    }

    #[test]
    fn display_lists_coefficients() {
        let f = BinaryForm::from_rationals(vec![q(3, 4), q(0, 1), q(-1, 4)]).unwrap();
        assert_eq!(f.to_string(), "[3/4, 0, -1/4]");
        let g = BinaryForm::from_reals(&[0.5, -2.0]).unwrap();
        assert_eq!(g.to_string(), "[0.5, -2]");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::from(3) << 2000usize;
        let r = BigRational::new(big.clone(), BigInt::from(1) << 1999usize);
        assert!((rational_to_f64(&r) - 6.0).abs() < 1e-12);
        assert!((ln_abs_rational(&BigRational::from_integer(big)) - (3f64.ln() + 2000.0 * std::f64::consts::LN_2)).abs() < 1e-9);
    }
}
