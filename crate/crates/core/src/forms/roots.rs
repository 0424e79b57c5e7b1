use std::f64::consts::PI;

use num_complex::Complex64;

use super::discriminant::count_real_roots_with_multiplicity;
use super::form::BinaryForm;
use crate::error::{Error, Result};

/// Iteration budget of the simultaneous refinement.
pub const MAX_ITERATIONS: usize = 200;
/// Stopping threshold on the relative Aberth correction.
pub const STEP_TOL: f64 = 1e-13;
/// Default reconstruction tolerance accepted by [`roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;
/// Tolerance on the imaginary part of a normalised pair for it to count as real.
pub const REAL_TOL: f64 = 1e-9;

/// One linear factor `alpha X - beta Y`, normalised so that the larger
/// component is exactly 1. It vanishes at the projective point `(beta : alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootPair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl RootPair {
    /// Root at infinity, `(x : y) = (1 : 0)`, factor `-Y` up to scale.
    pub fn infinity() -> Self {
        RootPair { alpha: Complex64::new(0.0, 0.0), beta: Complex64::new(1.0, 0.0) }
    }

    pub fn is_infinite(&self) -> bool {
        self.alpha.norm_sqr() == 0.0
    }

    /// Real up to a common complex scalar.
    pub fn is_real(&self, tol: f64) -> bool {
        self.alpha.im.abs() <= tol && self.beta.im.abs() <= tol
    }

    /// Direction angle in `[0, pi)` of the zero `(beta : alpha)`; meaningful
    /// for real pairs only.
    pub fn angle(&self) -> f64 {
        let mut phi = self.alpha.re.atan2(self.beta.re);
        if phi < 0.0 {
            phi += PI;
        }
        if phi >= PI {
            phi -= PI;
        }
        phi
    }
}

/// Factorisation `F = scale * prod (alpha_i X - beta_i Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pairs: Vec<RootPair>,
    scale: Complex64,
    iterations: usize,
}

impl RootSet {
    /// Builds a root set directly, normalising every pair.
    pub fn new(pairs: Vec<(Complex64, Complex64)>, scale: Complex64) -> Result<Self> {
        let mut lambda = scale;
        let mut out = Vec::with_capacity(pairs.len());
        for (alpha, beta) in pairs {
            if alpha.norm_sqr() == 0.0 && beta.norm_sqr() == 0.0 {
                return Err(Error::InvalidArgument("root pair (0, 0)".into()));
            }
            let (p, s) = normalise(alpha, beta);
            lambda *= s;
            out.push(p);
        }
        Ok(RootSet { pairs: out, scale: lambda, iterations: 0 })
    }

    pub fn pairs(&self) -> &[RootPair] {
        &self.pairs
    }

    pub fn scale(&self) -> Complex64 {
        self.scale
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    /// Iterations used by the refinement that produced this set.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Coefficients `a_0..a_n` of `scale * prod (alpha X - beta Y)`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let mut c = vec![self.scale];
        for p in &self.pairs {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k] += p.alpha * a;
                next[k + 1] -= p.beta * a;
            }
            c = next;
        }
        c
    }

    /// Real pairs as direction angles in `[0, pi)`, sorted.
    pub fn real_angles(&self, tol: f64) -> Vec<f64> {
        let mut v: Vec<f64> =
            self.pairs.iter().filter(|p| p.is_real(tol)).map(RootPair::angle).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Smallest `|alpha_i beta_j - alpha_j beta_i|` over pairs; zero iff a
    /// root repeats.
    pub fn min_bracket(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                let (p, q) = (self.pairs[i], self.pairs[j]);
                m = m.min((p.alpha * q.beta - q.alpha * p.beta).norm());
            }
        }
        m
    }
}

/// Normalises `(alpha, beta)` so the larger-modulus component is 1 and
/// returns the factor pulled out.
fn normalise(alpha: Complex64, beta: Complex64) -> (RootPair, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    if alpha.norm_sqr() >= beta.norm_sqr() {
        (RootPair { alpha: one, beta: beta / alpha }, alpha)
    } else {
        (RootPair { alpha: alpha / beta, beta: one }, beta)
    }
}

/// Factors `F` into `n` projective root pairs.
///
/// Leading zero coefficients give roots at infinity, trailing zeros give
/// the factor `X`; the remaining roots of `F(x, 1)` are found by Aberth
/// iteration and validated by reconstructing the coefficient vector to
/// relative error `tol`.
pub fn roots(form: &BinaryForm, tol: f64) -> Result<RootSet> {
    let c = form.complex_coeffs();
    let n = form.degree();
    let lead = form.leading_zeros();
    let trail = form.trailing_zeros();
    let core = &c[lead..=n - trail];

    let mut pairs: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    // Y = -(0 X - 1 Y)
    let mut scale = core[0] * if lead % 2 == 1 { -1.0 } else { 1.0 };
    for _ in 0..lead {
        pairs.push((Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)));
    }
    for _ in 0..trail {
        pairs.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }

    let (mut finite, iterations) = aberth(core);
    if form.is_real() && !finite.is_empty() {
        let expected_real = form.exact_coeffs().map(|ex| count_real_roots_with_multiplicity(&ex[lead..=n - trail]));
        snap_real(&mut finite, core, expected_real);
    }
    for r in finite {
        pairs.push((Complex64::new(1.0, 0.0), r));
    }
    if scale.norm_sqr() == 0.0 {
        scale = Complex64::new(1.0, 0.0);
    }
    let mut set = RootSet::new(pairs, scale)?;
    set.iterations = iterations;

    let rec = set.reconstruct();
    let size = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let err = rec.iter().zip(&c).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / size;
    if !(err <= tol) {
        return Err(Error::NoConvergence { tol, achieved: err });
    }
    Ok(set)
}

/// `p(z) / p'(z)` for descending coefficients, evaluated through the
/// reversed polynomial when `|z| > 1` to keep the evaluation stable.
fn newton_ratio(p: &[Complex64], z: Complex64) -> Complex64 {
    let m = p.len() - 1;
    if z.norm_sqr() <= 1.0 {
        let (v, d) = eval_with_derivative(p.iter(), z);
        if d.norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        v / d
    } else {
        // p(z) = z^m q(w), w = 1/z, q with reversed coefficients
        let w = z.inv();
        let (q, dq) = eval_with_derivative(p.iter().rev(), w);
        let denom = w * (m as f64 - w * dq / q);
        if q.norm_sqr() == 0.0 || denom.norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // p'/p = w (m - w q'/q)
        denom.inv()
    }
}

fn eval_with_derivative<'a>(
    coeffs: impl Iterator<Item = &'a Complex64>,
    z: Complex64,
) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in coeffs {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// Simultaneous Aberth-Ehrlich iteration on a polynomial with nonzero
/// leading and constant coefficients. Returns the roots and iteration count.
fn aberth(p: &[Complex64]) -> (Vec<Complex64>, usize) {
    let m = p.len() - 1;
    match m {
        0 => return (Vec::new(), 0),
        1 => return (vec![-p[1] / p[0]], 0),
        _ => {}
    }
    let monic: Vec<Complex64> = p.iter().map(|a| a / p[0]).collect();
    let radius = monic[m].norm().powf(1.0 / m as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64 + 0.4))
        .collect();
    let mut done = vec![false; m];
    let mut iterations = 0;
    for it in 0..MAX_ITERATIONS {
        iterations = it + 1;
        let mut all_done = true;
        for j in 0..m {
            if done[j] {
                continue;
            }
            let ratio = newton_ratio(&monic, z[j]);
            let repulsion: Complex64 = (0..m)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .filter(|v| v.re.is_finite() && v.im.is_finite())
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm_sqr() == 0.0 { ratio } else { ratio / denom };
            if step.re.is_finite() && step.im.is_finite() {
                z[j] -= step;
            }
            if step.norm() <= STEP_TOL * z[j].norm().max(1e-300) {
                done[j] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    (z, iterations)
}

/// Forces the roots of a real polynomial that should be real onto the real
/// axis and polishes them with real Newton steps. When the exact number of
/// real roots is known it decides how many to snap; otherwise a relative
/// imaginary-part tolerance does.
fn snap_real(z: &mut [Complex64], p: &[Complex64], expected: Option<usize>) {
    let rel_im = |r: &Complex64| r.im.abs() / r.norm().max(1.0);
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| rel_im(&z[a]).total_cmp(&rel_im(&z[b])));
    let count = expected.unwrap_or_else(|| order.iter().filter(|&&i| rel_im(&z[i]) <= REAL_TOL).count());
    let monic: Vec<Complex64> = p.iter().map(|a| a / p[0]).collect();
    for &i in order.iter().take(count.min(z.len())) {
        let mut x = Complex64::new(z[i].re, 0.0);
        for _ in 0..3 {
            let step = newton_ratio(&monic, x);
            // at a multiple root the ratio is rounding noise
            if !step.re.is_finite() || step.re.abs() > 1e-6 * x.re.abs().max(1.0) {
                break;
            }
            let next = Complex64::new(x.re - step.re, 0.0);
            if (next.re - x.re).abs() <= 4.0 * f64::EPSILON * x.re.abs() {
                x = next;
                break;
            }
            x = next;
        }
        z[i] = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_angles(f: &BinaryForm) -> Vec<f64> {
        roots(f, DEFAULT_ROOT_TOL).unwrap().real_angles(REAL_TOL)
    }

    #[test]
    fn xy_x_minus_y() {
        let f = BinaryForm::from_integers(&[0, 1, -1, 0]).unwrap();
        let r = roots(&f, 1e-12).unwrap();
        assert_eq!(r.degree(), 3);
        assert!(r.pairs().iter().any(RootPair::is_infinite));
        let a = sorted_angles(&f);
        let want = [0.0, PI / 4.0, PI / 2.0];
        for (x, y) in a.iter().zip(want) {
            assert!((x - y).abs() < 1e-14, "{a:?}");
        }
    }

    #[test]
    fn monomial_triple_root() {
        let f = BinaryForm::from_integers(&[1, 0, 0, 0]).unwrap();
        let r = roots(&f, 1e-14).unwrap();
        for p in r.pairs() {
            assert_eq!(*p, RootPair { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) });
        }
        assert_eq!(r.min_bracket(), 0.0);
    }

    #[test]
    fn one_real_two_conjugate() {
        // Y (X^2 + Y^2)
        let f = BinaryForm::from_integers(&[0, 1, 0, 1]).unwrap();
        let r = roots(&f, 1e-12).unwrap();
        assert_eq!(r.real_angles(REAL_TOL), vec![0.0]);
        let nonreal: Vec<_> = r.pairs().iter().filter(|p| !p.is_real(REAL_TOL)).collect();
        assert_eq!(nonreal.len(), 2);
        for p in nonreal {
            assert!((p.beta.norm() - 1.0).abs() < 1e-12 && p.beta.re.abs() < 1e-12);
        }
    }

    #[test]
    fn complex_coefficients() {
        // (X - iY)(X - 2Y) = X^2 - (2 + i) XY + 2i Y^2
        let f = BinaryForm::from_complex(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, -1.0),
            Complex64::new(0.0, 2.0),
        ])
        .unwrap();
        let r = roots(&f, 1e-12).unwrap();
        assert_eq!(r.real_angles(REAL_TOL).len(), 1);
        let rec = r.reconstruct();
        assert!((rec[1] - Complex64::new(-2.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn large_and_small_roots() {
        // (X - 1000 Y)(X - Y/1000)(X + Y) scaled to integers
        let a = BinaryForm::from_integers(&[1, -1000]).unwrap();
        let b = BinaryForm::from_integers(&[1000, -1]).unwrap();
        let c = BinaryForm::from_integers(&[1, 1]).unwrap();
        let f = a.mul(&b).mul(&c);
        let r = roots(&f, 1e-12).unwrap();
        assert_eq!(r.real_angles(REAL_TOL).len(), 3);
    }
}
