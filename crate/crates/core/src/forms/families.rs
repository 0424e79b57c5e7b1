use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::form::BinaryForm;

/// `P_k = X^{2k} + (X - Y)^2 (2X - Y)^2 ... (kX - Y)^2`.
///
/// Positive definite, yet `P_k(1, j) = 1` for `j = 1..=k`, so the region
/// `|P_k| <= 1` holds the `2k` lattice points `+-(1, j)`.
pub fn make_pk(k: u32) -> Result<BinaryForm> {
    if k == 0 {
        return Err(Error::InvalidArgument("P_k needs k >= 1".into()));
    }
    let x = BinaryForm::from_integers(&[1, 0])?;
    let mut prod = BinaryForm::from_integers(&[1, -1])?.pow(2);
    for j in 2..=k as i64 {
        let lin = BinaryForm::from_integers(&[j, -1])?;
        prod = prod.mul(&lin.mul(&lin));
    }
    let lead = x.pow(2 * k);
    add_same_degree(&lead, &prod)
}

/// `F_n^* = prod_{k=1}^{n} (X sin(k pi / n) - Y cos(k pi / n))`, the form
/// whose real roots are equally spaced in direction.
pub fn make_fstar(n: u32) -> Result<BinaryForm> {
    if n < 3 {
        return Err(Error::InvalidArgument("F_n^* needs n >= 3".into()));
    }
    let angles: Vec<f64> = (1..=n).map(|k| k as f64 * PI / n as f64).collect();
    product_of_directions(&angles, |k| exact_sin_cos(k as u32 + 1, n))
}

/// `prod_i (X sin t_i - Y cos t_i)`; `trig(i)` may supply exact values for
/// angles where the floating sine or cosine should vanish.
pub(crate) fn product_of_directions(
    angles: &[f64],
    trig: impl Fn(usize) -> Option<(f64, f64)>,
) -> Result<BinaryForm> {
    let mut coeffs = vec![1.0];
    for (i, &t) in angles.iter().enumerate() {
        let (s, c) = trig(i).unwrap_or_else(|| t.sin_cos());
        let mut next = vec![0.0; coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j] += s * a;
            next[j + 1] -= c * a;
        }
        coeffs = next;
    }
    BinaryForm::from_reals(&coeffs)
}

/// `(sin, cos)` of `k pi / n` when the angle is a multiple of `pi / 2`.
fn exact_sin_cos(k: u32, n: u32) -> Option<(f64, f64)> {
    if !(2 * k).is_multiple_of(n) {
        return None;
    }
    match (2 * k / n) % 4 {
        0 => Some((0.0, 1.0)),
        1 => Some((1.0, 0.0)),
        2 => Some((0.0, -1.0)),
        _ => Some((-1.0, 0.0)),
    }
}

fn add_same_degree(a: &BinaryForm, b: &BinaryForm) -> Result<BinaryForm> {
    match (a.exact_coeffs(), b.exact_coeffs()) {
        (Some(x), Some(y)) if x.len() == y.len() => {
            BinaryForm::from_rationals(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        _ => Err(Error::InvalidArgument("degree mismatch".into())),
    }
}
