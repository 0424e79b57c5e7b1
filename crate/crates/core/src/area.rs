//! Area of `{(x, y) : |F(x, y)| <= 1}` and the invariant
//! `|D_F|^{1/n(n-1)} A_F`.
//!
//! In polar coordinates the region is `r <= |F(cos t, sin t)|^{-1/n}`, so
//! `A_F = 1/2 int_0^{2 pi} |F(cos t, sin t)|^{-2/n} dt = int_0^pi (...) dt`.
//! The integrand blows up like `|t - phi|^{-2/n}` at every real root
//! direction `phi`, which is integrable for `n >= 3`. The interval is split
//! at those directions and at the midpoints between them, and each panel is
//! integrated with tanh-sinh. The integrand is evaluated in factored form,
//! `|lambda| prod |alpha_i cos t - beta_i sin t|`, and the factor that
//! vanishes at a panel end is computed from the node's exact offset.

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{
    discriminant_exact, discriminant_float, ln_abs_rational, roots, BinaryForm, RootPair, RootSet,
    REAL_TOL,
};
use crate::quadrature::{tanh_sinh, Node};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Total integrand evaluations allowed for one area.
pub const MAX_EVALUATIONS: usize = 1 << 20;
/// Normalised bracket below which a complex-coefficient form is treated as
/// having a repeated root.
const REPEATED_ROOT_TOL: f64 = 1e-7;
/// Complex root pairs with imaginary parts below this (normalised pair)
/// produce a narrow integrand peak and get their own panel end.
const NEAR_REAL_TOL: f64 = 0.05;
/// Reconstruction tolerance for the roots used by the integrand. Nearly
/// coincident complex pairs (P_k has some 1e-7 apart) are only determined to
/// about 1e-9, and the integrand does not need more.
const AREA_ROOT_TOL: f64 = 1e-7;
/// Minimum separation of distinct real root directions.
const ANGLE_SEPARATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaResult {
    pub area: f64,
    pub abs_error_estimate: f64,
    /// Zeros of `F(cos t, sin t)` in `[0, 2 pi)`, in antipodal pairs.
    pub singular_angles: Vec<f64>,
    pub panels: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantValue {
    pub value: f64,
    pub disc_magnitude: f64,
    pub area: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    root_a: Option<usize>,
    root_b: Option<usize>,
}

/// `|F(cos t, sin t)|` in factored form.
#[derive(Debug, Clone)]
pub(crate) struct Integrand {
    degree: usize,
    ln_scale: f64,
    /// Real root directions in `[0, pi)`, sorted; factor `|sin(phi - t)|`.
    real: Vec<f64>,
    complex: Vec<RootPair>,
    /// Directions of complex roots close to the real line, where the
    /// integrand has a narrow peak; used as extra panel ends.
    peaks: Vec<f64>,
}

impl Integrand {
    pub(crate) fn from_roots(set: &RootSet) -> Result<Self> {
        let mut ln_scale = set.scale().norm().ln();
        let mut real = Vec::new();
        let mut complex = Vec::new();
        let mut peaks = Vec::new();
        for p in set.pairs() {
            if p.is_real(REAL_TOL) {
                ln_scale += p.alpha.re.hypot(p.beta.re).ln();
                real.push(p.angle());
            } else {
                if p.is_real(NEAR_REAL_TOL) {
                    peaks.push(p.angle());
                }
                complex.push(*p);
            }
        }
        real.sort_by(f64::total_cmp);
        check_separated(&real)?;
        peaks.sort_by(f64::total_cmp);
        Ok(Integrand { degree: set.degree(), ln_scale, real, complex, peaks })
    }

    /// `prod (X sin t_i - Y cos t_i)` for the given directions.
    pub(crate) fn from_angles(angles: &[f64]) -> Result<Self> {
        let mut real: Vec<f64> = angles.iter().map(|t| t.rem_euclid(PI)).collect();
        real.sort_by(f64::total_cmp);
        check_separated(&real)?;
        Ok(Integrand { degree: angles.len(), ln_scale: 0.0, real, complex: Vec::new(), peaks: Vec::new() })
    }

    fn singular_angles(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.real.iter().flat_map(|&p| [p, p + PI]).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Panels between consecutive break directions (real roots and peaks),
    /// each halved at its midpoint.
    fn panels(&self) -> Vec<Panel> {
        let mut breaks: Vec<(f64, Option<usize>)> = self.real.iter().enumerate().map(|(i, &t)| (t, Some(i))).collect();
        for &t in &self.peaks {
            let near = |u: f64| {
                let d = (t - u).rem_euclid(PI);
                d.min(PI - d) < ANGLE_SEPARATION_TOL
            };
            if !breaks.iter().any(|&(u, _)| near(u)) {
                breaks.push((t, None));
            }
        }
        breaks.sort_by(|a, b| a.0.total_cmp(&b.0));
        if breaks.is_empty() {
            return vec![
                Panel { a: 0.0, b: FRAC_PI_2, root_a: None, root_b: None },
                Panel { a: FRAC_PI_2, b: PI, root_a: None, root_b: None },
            ];
        }
        let r = breaks.len();
        let mut out = Vec::with_capacity(2 * r);
        for i in 0..r {
            let (a, root_a) = breaks[i];
            let (b, root_b) = if i + 1 < r { breaks[i + 1] } else { (breaks[0].0 + PI, breaks[0].1) };
            let mid = 0.5 * (a + b);
            out.push(Panel { a, b: mid, root_a, root_b: None });
            out.push(Panel { a: mid, b, root_a: None, root_b });
        }
        out
    }

    /// `|F(cos t, sin t)|^{-2/n}` at a node of `panel`.
    fn eval(&self, panel: &Panel, node: Node) -> f64 {
        let at_a = node.from_a <= node.from_b;
        let t = if at_a { panel.a + node.from_a } else { panel.b - node.from_b };
        let (ct, st) = (t.cos(), t.sin());
        let mut prod = 1.0;
        let mut ln_near = 0.0;
        for (j, &phi) in self.real.iter().enumerate() {
            if at_a && panel.root_a == Some(j) {
                ln_near += node.from_a.sin().ln();
            } else if !at_a && panel.root_b == Some(j) {
                ln_near += node.from_b.sin().ln();
            } else {
                prod *= (phi - t).sin().abs();
            }
        }
        for p in &self.complex {
            prod *= (p.alpha * ct - p.beta * st).norm();
        }
        let ln_abs = self.ln_scale + prod.ln() + ln_near;
        (-2.0 / self.degree as f64 * ln_abs).exp()
    }

    pub(crate) fn integrate(&self, tol: f64, parallel: bool) -> Result<AreaResult> {
        let panels = self.panels();
        let per_tol = tol / panels.len() as f64;
        let per_budget = MAX_EVALUATIONS / panels.len();
        let run = |p: &Panel| tanh_sinh(|node| self.eval(p, node), p.a, p.b, per_tol, per_budget);
        let results: Vec<_> = if parallel {
            panels.par_iter().map(run).collect()
        } else {
            panels.iter().map(run).collect()
        };
        let mut area = 0.0;
        let mut err = 0.0;
        let mut evaluations = 0;
        for r in &results {
            area += r.value;
            err += r.error;
            evaluations += r.evaluations;
        }
        if !(err <= tol) || !area.is_finite() {
            return Err(Error::QuadratureFailure { tol, achieved: err });
        }
        Ok(AreaResult {
            area,
            abs_error_estimate: err,
            singular_angles: self.singular_angles(),
            panels: panels.len(),
            evaluations,
        })
    }
}

fn check_separated(sorted: &[f64]) -> Result<()> {
    for w in sorted.windows(2) {
        if w[1] - w[0] < ANGLE_SEPARATION_TOL {
            return Err(Error::DegenerateRoot(w[0]));
        }
    }
    if let (Some(&first), Some(&last)) = (sorted.first(), sorted.last()) {
        if sorted.len() > 1 && first + PI - last < ANGLE_SEPARATION_TOL {
            return Err(Error::DegenerateRoot(last));
        }
    }
    Ok(())
}

fn repeated_real_root(set: &RootSet) -> Option<f64> {
    let near_real: Vec<&RootPair> = set.pairs().iter().filter(|p| p.is_real(1e-6)).collect();
    for (i, p) in near_real.iter().enumerate() {
        for q in &near_real[i + 1..] {
            if (p.alpha * q.beta - q.alpha * p.beta).norm() < REPEATED_ROOT_TOL {
                return Some(p.angle());
            }
        }
    }
    None
}

/// All `t` in `[0, 2 pi)` with `F(cos t, sin t) = 0`, sorted. `tol` decides
/// whether a root pair is real.
pub fn singular_angles(form: &BinaryForm, tol: f64) -> Result<Vec<f64>> {
    let set = roots(form, AREA_ROOT_TOL)?;
    // a multiple root is only found to about sqrt(eps), so look for nearly
    // coincident, nearly real pairs; exact forms must also have D = 0
    let may_repeat = match form.exact_coeffs() {
        Some(_) => discriminant_exact(form)?.is_zero(),
        None => true,
    };
    if may_repeat {
        if let Some(phi) = repeated_real_root(&set) {
            return Err(Error::DegenerateRoot(phi));
        }
    }
    let mut real = set.real_angles(tol);
    real.sort_by(f64::total_cmp);
    check_separated(&real)?;
    let mut v: Vec<f64> = real.iter().flat_map(|&p| [p, p + PI]).collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Checks the area preconditions and factors the form.
fn prepare(form: &BinaryForm) -> Result<(RootSet, f64)> {
    let n = form.degree();
    if n < 3 {
        return Err(Error::DegreeTooLow(n));
    }
    let ln_disc = match form.exact_coeffs() {
        Some(_) => {
            let d = discriminant_exact(form)?;
            if d.is_zero() {
                return Err(Error::DiscriminantZero);
            }
            Some(ln_abs_rational(&d))
        }
        None => None,
    };
    let set = roots(form, AREA_ROOT_TOL)?;
    let ln_disc = match ln_disc {
        Some(v) => v,
        None => {
            if set.min_bracket() < REPEATED_ROOT_TOL {
                return Err(Error::DiscriminantZero);
            }
            discriminant_float(&set).norm().ln()
        }
    };
    Ok((set, ln_disc))
}

/// `A_F` for a form of degree `n >= 3` with nonzero discriminant.
pub fn area(form: &BinaryForm, tol: f64) -> Result<AreaResult> {
    let (set, _) = prepare(form)?;
    Integrand::from_roots(&set)?.integrate(tol, true)
}

/// `|D_F|^{1/n(n-1)} A_F`; the discriminant is exact for exact forms.
pub fn invariant(form: &BinaryForm, tol: f64) -> Result<InvariantValue> {
    let (set, ln_disc) = prepare(form)?;
    let res = Integrand::from_roots(&set)?.integrate(tol, true)?;
    let n = form.degree() as f64;
    Ok(InvariantValue {
        value: (ln_disc / (n * (n - 1.0))).exp() * res.area,
        disc_magnitude: ln_disc.exp(),
        area: res.area,
    })
}

/// Invariant of `prod (X sin t_i - Y cos t_i)`, computed straight from the
/// root directions.
pub fn invariant_from_angles(angles: &[f64], tol: f64) -> Result<InvariantValue> {
    invariant_from_angles_with(angles, tol, true)
}

pub(crate) fn invariant_from_angles_with(
    angles: &[f64],
    tol: f64,
    parallel: bool,
) -> Result<InvariantValue> {
    let n = angles.len();
    if n < 3 {
        return Err(Error::DegreeTooLow(n));
    }
    let integrand = Integrand::from_angles(angles)?;
    let res = integrand.integrate(tol, parallel)?;
    let mut ln_disc = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            ln_disc += 2.0 * (angles[i] - angles[j]).sin().abs().ln();
        }
    }
    let nf = n as f64;
    Ok(InvariantValue {
        value: (ln_disc / (nf * (nf - 1.0))).exp() * res.area,
        disc_magnitude: ln_disc.exp(),
        area: res.area,
    })
}

/// Midpoint cell count of `|F| <= 1` over `[-halfwidth, halfwidth]^2`.
///
/// Independent of the polar quadrature. Converges to the area of the region
/// clipped to the box, so the box must contain (nearly) all of it.
pub fn area_oracle_grid(form: &BinaryForm, halfwidth: f64, cells: usize) -> f64 {
    let step = 2.0 * halfwidth / cells as f64;
    let real = form.is_real();
    let coeffs: Vec<f64> = form.complex_coeffs().iter().map(|c| c.re).collect();
    let inside: usize = (0..cells)
        .into_par_iter()
        .map(|i| {
            let x = -halfwidth + (i as f64 + 0.5) * step;
            (0..cells)
                .filter(|&j| {
                    let y = -halfwidth + (j as f64 + 0.5) * step;
                    let v = if real { eval_real(&coeffs, x, y).abs() } else { form.abs_at(x, y) };
                    v <= 1.0
                })
                .count()
        })
        .sum();
    inside as f64 * step * step
}

fn eval_real(c: &[f64], x: f64, y: f64) -> f64 {
    let mut acc = 0.0;
    let mut yp = 1.0;
    for (k, a) in c.iter().enumerate() {
        if k > 0 {
            yp *= y;
        }
        acc = acc * x + a * yp;
    }
    acc
}
