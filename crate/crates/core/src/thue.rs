//! Lattice solutions of the Thue inequality `|F(x, y)| <= h`.
//!
//! Definite forms are counted exactly: the region is bounded, so it fits in
//! a disk whose radius follows from the minimum of `|F|` on the unit circle.
//! Indefinite forms have unbounded regions; their counts are restricted to a
//! box and labelled as such.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::area::area;
use crate::error::{Error, Result};
use crate::forms::{count_real_roots, BinaryForm};

/// Samples of `|F|` on the half circle before refinement.
const CIRCLE_SAMPLES: usize = 4096;
/// The enumeration disk uses `0.99 * min |F|` to stay on the generous side.
const MIN_SAFETY: f64 = 0.99;
/// Width to which column roots are bisected.
const ROOT_WIDTH: f64 = 1e-9;
/// Integers this close to a breakpoint are decided by exact evaluation.
const EXACT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    DefiniteExact,
    BoxRestricted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeCount {
    pub count: u64,
    pub h: u64,
    pub strategy: Strategy,
    /// Half-width of the box for box-restricted counts.
    pub halfwidth: Option<u64>,
    /// Radius of the enumeration disk for definite counts.
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MahlerDiagnostic {
    pub h: u64,
    pub n_count: u64,
    pub area_term: f64,
    pub scaled_error: f64,
}

/// How `mahler_table` counts lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountStrategy {
    Definite,
    Box(u64),
}

fn integer_coeffs(form: &BinaryForm) -> Result<Vec<BigInt>> {
    form.integer_coeffs().ok_or(Error::NotInteger)
}

/// True when the form has no real projective root.
pub fn is_definite(form: &BinaryForm) -> Result<bool> {
    let c = form.exact_coeffs().ok_or(Error::NotExact)?;
    if form.leading_zeros() > 0 {
        return Ok(false);
    }
    Ok(count_real_roots(c) == 0)
}

/// Minimum of `|F(cos t, sin t)|` over the circle: dense sampling, then
/// golden-section refinement around the smallest sample.
pub fn min_on_circle(form: &BinaryForm) -> f64 {
    let g = |t: f64| form.abs_at(t.cos(), t.sin());
    let step = PI / CIRCLE_SAMPLES as f64;
    let (best, _) = (0..CIRCLE_SAMPLES)
        .map(|i| (i, g(i as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("samples");
    let (mut lo, mut hi) = ((best as f64 - 1.0) * step, (best as f64 + 1.0) * step);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = g(x2);
        }
    }
    f1.min(f2).min(g(best as f64 * step))
}

fn eval_int(c: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut yp = BigInt::one();
    for (k, a) in c.iter().enumerate() {
        if k > 0 {
            yp *= y;
        }
        acc = acc * x + a * &yp;
    }
    acc
}

/// Every integer point with `|F(x, y)| <= h` for a definite integer form,
/// sorted.
pub fn definite_points(form: &BinaryForm, h: u64) -> Result<(Vec<(i64, i64)>, f64)> {
    let c = integer_coeffs(form)?;
    if !is_definite(form)? {
        return Err(Error::NotDefinite);
    }
    let n = form.degree() as f64;
    let m = min_on_circle(form) * MIN_SAFETY;
    let radius = (h as f64 / m).powf(1.0 / n);
    let r = radius.floor() as i64;
    let hb = BigInt::from(h);
    let mut pts: Vec<(i64, i64)> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|x| {
            let span = (radius * radius - (x * x) as f64).max(0.0).sqrt().floor() as i64;
            let xb = BigInt::from(x);
            let c = &c;
            let hb = &hb;
            (-span..=span).filter_map(move |y| {
                (eval_int(c, &xb, &BigInt::from(y)).abs() <= *hb).then_some((x, y))
            })
        })
        .collect();
    pts.sort_unstable();
    Ok((pts, radius))
}

/// Exact `N_F(h)` for a definite integer form.
pub fn count_definite(form: &BinaryForm, h: u64) -> Result<LatticeCount> {
    let (pts, radius) = definite_points(form, h)?;
    Ok(LatticeCount {
        count: pts.len() as u64,
        h,
        strategy: Strategy::DefiniteExact,
        halfwidth: None,
        radius: Some(radius),
    })
}

/// Number of integer points in `[-w, w]^2` with `|F(x, y)| <= h`, counted
/// column by column from the real roots of `F(x, .) -+ h`.
pub fn count_box(form: &BinaryForm, h: u64, halfwidth: u64) -> Result<LatticeCount> {
    let c = integer_coeffs(form)?;
    let w = halfwidth as i64;
    let hb = BigInt::from(h);
    let count: u64 = (-w..=w).into_par_iter().map(|x| column_count(&c, x, &hb, w)).sum();
    Ok(LatticeCount { count, h, strategy: Strategy::BoxRestricted, halfwidth: Some(halfwidth), radius: None })
}

/// Largest half-width `box_points` will enumerate point by point.
pub const MAX_POINTS_HALFWIDTH: u64 = 1000;

/// The integer points counted by `count_box`, sorted; enumerated directly,
/// so the box is limited to `MAX_POINTS_HALFWIDTH`.
pub fn box_points(form: &BinaryForm, h: u64, halfwidth: u64) -> Result<Vec<(i64, i64)>> {
    let c = integer_coeffs(form)?;
    if halfwidth > MAX_POINTS_HALFWIDTH {
        return Err(Error::InvalidArgument(format!(
            "listing points needs a half-width <= {MAX_POINTS_HALFWIDTH}"
        )));
    }
    let w = halfwidth as i64;
    let hb = BigInt::from(h);
    let mut pts: Vec<(i64, i64)> = (-w..=w)
        .into_par_iter()
        .flat_map_iter(|x| {
            let xb = BigInt::from(x);
            let (c, hb) = (&c, &hb);
            (-w..=w).filter_map(move |y| (eval_int(c, &xb, &BigInt::from(y)).abs() <= *hb).then_some((x, y)))
        })
        .collect();
    pts.sort_unstable();
    Ok(pts)
}

/// Ascending coefficients of `y -> F(x, y)`.
fn column_poly(c: &[BigInt], x: i64) -> Vec<BigInt> {
    let n = c.len() - 1;
    let xb = BigInt::from(x);
    (0..=n).map(|k| &c[k] * num_traits::pow(xb.clone(), n - k)).collect()
}

fn eval_asc_exact(p: &[BigInt], y: i64) -> BigInt {
    let yb = BigInt::from(y);
    p.iter().rev().fold(BigInt::zero(), |acc, a| acc * &yb + a)
}

fn eval_asc(p: &[f64], y: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, a| acc * y + a)
}

/// Count of `y` in `[-w, w]` with `|g(y)| <= h` for `g = F(x, .)`.
pub(crate) fn column_count(c: &[BigInt], x: i64, h: &BigInt, w: i64) -> u64 {
    let mut p = column_poly(c, x);
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.len() == 1 {
        return if p[0].abs() <= *h { (2 * w + 1) as u64 } else { 0 };
    }
    let pf: Vec<f64> = p.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect();
    let hf = h.to_f64().unwrap_or(f64::INFINITY);
    let (lo, hi) = (-(w as f64) - 1.0, w as f64 + 1.0);

    let mut breaks = Vec::new();
    for shift in [-hf, hf] {
        let mut q = pf.clone();
        q[0] -= shift;
        breaks.extend(real_roots_in(&q, lo, hi));
    }
    breaks.extend(real_roots_in(&derivative(&pf), lo, hi));
    breaks.sort_by(f64::total_cmp);

    let inside = |y: i64| eval_asc_exact(&p, y).abs() <= *h;
    let mut total = 0u64;
    // Integers near a breakpoint: exact decision, each once.
    let mut near: Vec<i64> = breaks
        .iter()
        .filter_map(|&b| {
            let k = b.round();
            ((k - b).abs() <= EXACT_MARGIN && k.abs() <= w as f64).then_some(k as i64)
        })
        .collect();
    near.sort_unstable();
    near.dedup();
    total += near.iter().filter(|&&k| inside(k)).count() as u64;

    // Between consecutive breakpoints the sign of |g| - h is constant; test
    // one interior integer exactly and take the whole run.
    let mut fences = vec![lo];
    fences.extend(&breaks);
    fences.push(hi);
    for seg in fences.windows(2) {
        let first = ((seg[0] + EXACT_MARGIN).ceil() as i64).max(-w);
        let last = ((seg[1] - EXACT_MARGIN).floor() as i64).min(w);
        if first > last {
            continue;
        }
        let run: Vec<i64> = (first..=last).filter(|k| near.binary_search(k).is_err()).collect();
        if let Some(&probe) = run.first() {
            if inside(probe) {
                total += run.len() as u64;
            }
        }
    }
    total
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect()
}

/// Real roots of an ascending-coefficient polynomial inside `(lo, hi)`,
/// isolated between the roots of its derivative and refined by bisection.
pub(crate) fn real_roots_in(p: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last() == Some(&0.0) {
        p.pop();
    }
    let deg = p.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = -p[0] / p[1];
        return if r > lo && r < hi { vec![r] } else { Vec::new() };
    }
    let mut pts = vec![lo];
    pts.extend(real_roots_in(&derivative(&p), lo, hi));
    pts.push(hi);
    let mut out = Vec::new();
    for seg in pts.windows(2) {
        let (mut a, mut b) = (seg[0], seg[1]);
        let (fa, fb) = (eval_asc(&p, a), eval_asc(&p, b));
        if fa == 0.0 {
            if a > lo {
                out.push(a);
            }
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let sa = fa.signum();
        while b - a > ROOT_WIDTH {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = eval_asc(&p, m);
            if fm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if fm.signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// `|N_F(h) - A_F h^{2/n}| / h^{1/(n-1)}` for each `h`.
pub fn mahler_table(
    form: &BinaryForm,
    h_values: &[u64],
    strategy: CountStrategy,
    tol: f64,
) -> Result<Vec<MahlerDiagnostic>> {
    if h_values.iter().any(|&h| h == 0) {
        return Err(Error::InvalidArgument("h values must be >= 1".into()));
    }
    let a = area(form, tol)?.area;
    let n = form.degree() as f64;
    h_values
        .iter()
        .map(|&h| {
            let count = match strategy {
                CountStrategy::Definite => count_definite(form, h)?,
                CountStrategy::Box(w) => count_box(form, h, w)?,
            };
            let hf = h as f64;
            let area_term = a * hf.powf(2.0 / n);
            Ok(MahlerDiagnostic {
                h,
                n_count: count.count,
                area_term,
                scaled_error: (count.count as f64 - area_term).abs() / hf.powf(1.0 / (n - 1.0)),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::make_pk;

    #[test]
    fn xy_x_minus_y_unit_box() {
        let f = BinaryForm::from_integers(&[0, 1, -1, 0]).unwrap();
        assert_eq!(count_box(&f, 1, 1).unwrap().count, 7);
        let pts = box_points(&f, 1, 1).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(!pts.contains(&(1, -1)) && !pts.contains(&(-1, 1)));
        assert!(box_points(&f, 1, MAX_POINTS_HALFWIDTH + 1).is_err());
    }

    #[test]
    fn origin_only_box() {
        let f = BinaryForm::from_integers(&[1, 0, -2, 5]).unwrap();
        assert_eq!(count_box(&f, 3, 0).unwrap().count, 1);
    }

    #[test]
    fn quartic_h_zero() {
        let f = BinaryForm::from_integers(&[1, 0, 0, 0, 1]).unwrap();
        let c = count_definite(&f, 0).unwrap();
        assert_eq!(c.count, 1);
        assert_eq!(c.strategy, Strategy::DefiniteExact);
    }

    #[test]
    fn indefinite_rejected() {
        let f = BinaryForm::from_integers(&[1, 0, -2, 0]).unwrap();
        assert_eq!(count_definite(&f, 1), Err(Error::NotDefinite));
        let xy = BinaryForm::from_integers(&[0, 1, 1]).unwrap();
        assert_eq!(count_definite(&xy, 1), Err(Error::NotDefinite));
        let fl = BinaryForm::from_reals(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(count_definite(&fl, 1), Err(Error::NotInteger));
    }

    #[test]
    fn p2_unit_solutions() {
        let (pts, _) = definite_points(&make_pk(2).unwrap(), 1).unwrap();
        for p in [(0, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, 2), (-1, -2)] {
            assert!(pts.contains(&p), "{p:?} missing from {pts:?}");
        }
    }

    #[test]
    fn tangent_column_counts_touch_point() {
        // F(1, y) = (y - 2)^2 touches h = 0 at y = 2: form (Y - 2X)^2 X
        let f = BinaryForm::from_integers(&[4, -4, 1, 0]).unwrap();
        let c = f.integer_coeffs().unwrap();
        assert_eq!(column_count(&c, 1, &BigInt::zero(), 5), 1);
    }

    #[test]
    fn root_isolation() {
        // (y - 1)(y + 2)(y - 3.5)
        let p = [7.0, -5.5, -2.5, 1.0];
        let r = real_roots_in(&p, -10.0, 10.0);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-2.0, 1.0, 3.5]) {
            assert!((got - want).abs() < 1e-8);
        }
    }

    #[test]
    fn mahler_rejects_zero_h() {
        let f = make_pk(2).unwrap();
        assert!(matches!(mahler_table(&f, &[1, 0], CountStrategy::Definite, 1e-9), Err(Error::InvalidArgument(_))));
    }
}
