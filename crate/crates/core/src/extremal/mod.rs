//! Numerical exploration of `M_n`, the maximum of `|D_F|^{1/n(n-1)} A_F`
//! over degree-`n` forms, restricted to forms with `n` distinct real roots.
//!
//! Such a form is determined up to scalar by its root directions
//! `t_1 < ... < t_n` in `[0, pi)`, `F = prod (X sin t_i - Y cos t_i)`, and
//! the invariant is unchanged under GL2(R), which acts on directions as the
//! projective group of the line. That group is triply transitive, so three
//! cyclically consecutive roots can be sent to `0, pi/4, pi/2`; every other
//! root then lands in `(pi/2, pi)`. Those `n - 3` angles are the search
//! variables.

mod nelder_mead;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::area::{invariant, invariant_from_angles_with, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::forms::{make_fstar, product_of_directions, BinaryForm};

pub use nelder_mead::{minimize, SimplexResult};

pub const TWO_PI: f64 = 2.0 * PI;
/// Directions the three gauge-fixed roots are pinned to.
pub const GAUGE: [f64; 3] = [0.0, FRAC_PI_4, FRAC_PI_2];
/// Minimum separation between free root directions.
pub const MIN_SEPARATION: f64 = 1e-6;
const DISTINCT_TOL: f64 = 1e-12;

/// Root directions of a form with all roots real.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealRootConfig {
    angles: Vec<f64>,
}

impl RealRootConfig {
    /// Strictly increasing directions in `[0, pi)`.
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.len() < 3 {
            return Err(Error::InvalidArgument("need at least three root directions".into()));
        }
        for &t in &angles {
            if !(0.0..PI).contains(&t) {
                return Err(Error::InvalidArgument(format!("angle {t} outside [0, pi)")));
            }
        }
        for w in angles.windows(2) {
            if w[1] - w[0] < DISTINCT_TOL {
                return Err(Error::DegenerateAngles(w[0], w[1]));
            }
        }
        let (first, last) = (angles[0], angles[angles.len() - 1]);
        if first + PI - last < DISTINCT_TOL {
            return Err(Error::DegenerateAngles(last, first));
        }
        Ok(RealRootConfig { angles })
    }

    /// `[0, pi/4, pi/2]` followed by the free directions in `(pi/2, pi)`.
    pub fn gauge_fixed(free: &[f64]) -> Result<Self> {
        if free.iter().any(|&t| !(t > FRAC_PI_2 && t < PI)) {
            return Err(Error::InvalidArgument("free directions must lie in (pi/2, pi)".into()));
        }
        let mut angles = GAUGE.to_vec();
        angles.extend_from_slice(free);
        RealRootConfig::new(angles)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn degree(&self) -> usize {
        self.angles.len()
    }

    pub fn is_gauge_fixed(&self) -> bool {
        self.angles[..3] == GAUGE
    }

    pub fn free_angles(&self) -> &[f64] {
        &self.angles[3..]
    }
}

/// `prod_i (X sin t_i - Y cos t_i)`.
pub fn form_from_angles(config: &RealRootConfig) -> Result<BinaryForm> {
    product_of_directions(config.angles(), |i| {
        // pinned directions get exact trig values
        let t = config.angles()[i];
        if t == 0.0 {
            Some((0.0, 1.0))
        } else if t == FRAC_PI_2 {
            Some((1.0, 0.0))
        } else {
            None
        }
    })
}

/// Sends the roots `start, start+1, start+2` (cyclically, in sorted order)
/// to `0, pi/4, pi/2` by a projective map; with `reflect` the directions are
/// mirrored first. The result describes a GL2(R)-equivalent form.
pub fn gauge_fix(angles: &[f64], start: usize, reflect: bool) -> Result<RealRootConfig> {
    let mut sorted: Vec<f64> = angles
        .iter()
        .map(|&t| if reflect { (-t).rem_euclid(PI) } else { t.rem_euclid(PI) })
        .collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n < 3 {
        return Err(Error::InvalidArgument("need at least three root directions".into()));
    }
    let (t1, t2, t3) = (sorted[start % n], sorted[(start + 1) % n], sorted[(start + 2) % n]);
    let k = (t2 - t3).sin() / (t2 - t1).sin();
    let mut free = Vec::with_capacity(n - 3);
    for j in 3..n {
        let t = sorted[(start + j) % n];
        let m = (t - t1).sin() * k / (t - t3).sin();
        let mut u = m.atan();
        if u < 0.0 {
            u += PI;
        }
        free.push(u);
    }
    free.sort_by(f64::total_cmp);
    RealRootConfig::gauge_fixed(&free)
}

/// Maps unconstrained coordinates to free directions in `(pi/2, pi)` whose
/// gaps are at least `MIN_SEPARATION`: the `n - 2` gaps are a softmax of
/// `(0, z_1, ..., z_{n-3})` scaled into the available length.
fn free_from_params(z: &[f64]) -> Vec<f64> {
    let k = z.len();
    let logits: Vec<f64> = std::iter::once(0.0).chain(z.iter().copied()).collect();
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = w.iter().sum();
    let room = FRAC_PI_2 - (k + 1) as f64 * MIN_SEPARATION;
    let mut t = FRAC_PI_2;
    w[..k]
        .iter()
        .map(|wi| {
            t += MIN_SEPARATION + room * wi / total;
            t
        })
        .collect()
}

fn params_from_free(free: &[f64]) -> Vec<f64> {
    let k = free.len();
    let room = FRAC_PI_2 - (k + 1) as f64 * MIN_SEPARATION;
    let mut edges = vec![FRAC_PI_2];
    edges.extend_from_slice(free);
    edges.push(PI);
    let w: Vec<f64> = edges
        .windows(2)
        .map(|e| ((e[1] - e[0] - MIN_SEPARATION) / room).max(1e-300))
        .collect();
    w[1..].iter().map(|wi| (wi / w[0]).ln()).collect()
}

#[derive(Debug, Clone)]
pub struct ExtremalOptions {
    pub restarts: usize,
    /// Simplex diameter in angle space at which a run stops.
    pub tol: f64,
    /// Absolute quadrature tolerance of each objective evaluation.
    pub quad_tol: f64,
    pub seed: u64,
    /// Relative gap within which two restarts count as agreeing.
    pub agree_tol: f64,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions { restarts: 8, tol: 1e-7, quad_tol: 1e-11, seed: 0x5eed_1994, agree_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizerReport {
    pub iterations: usize,
    pub evaluations: usize,
    pub restarts: usize,
    /// Best run's simplex converged and at least two restarts agree on the
    /// best value (always true when there is nothing to optimise).
    pub converged: bool,
    pub restart_values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MnEstimate {
    pub n: usize,
    pub value: f64,
    pub argmax_config: RealRootConfig,
    pub optimizer_report: OptimizerReport,
    /// Smallest max-norm distance between a gauge image of the maximiser
    /// and the gauge image of `F_n^*`.
    pub distance_to_fstar: f64,
}

/// Directions `k pi / n` of `F_n^*`, brought to the gauge.
pub fn fstar_config(n: usize) -> Result<RealRootConfig> {
    let angles: Vec<f64> = (0..n).map(|k| k as f64 * PI / n as f64).collect();
    gauge_fix(&angles, 0, false)
}

fn objective(free: &[f64], quad_tol: f64) -> f64 {
    let mut angles = GAUGE.to_vec();
    angles.extend_from_slice(free);
    match invariant_from_angles_with(&angles, quad_tol, false) {
        Ok(v) => v.value,
        Err(_) => f64::NEG_INFINITY,
    }
}

fn angle_diameter(simplex: &[Vec<f64>]) -> f64 {
    let pts: Vec<Vec<f64>> = simplex.iter().map(|z| free_from_params(z)).collect();
    pts.iter()
        .flat_map(|a| pts.iter().map(move |b| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)))
        .fold(0.0, f64::max)
}

/// Estimates `M_n` by maximising the invariant over gauge-fixed real-root
/// configurations. Restart 0 starts at `F_n^*`; odd restarts jitter it,
/// even ones start from uniformly random directions.
pub fn estimate_mn(n: usize, opts: &ExtremalOptions) -> Result<MnEstimate> {
    if n < 3 {
        return Err(Error::InvalidArgument("M_n is defined for n >= 3".into()));
    }
    let fstar = fstar_config(n)?;
    let base = params_from_free(fstar.free_angles());
    let k = n - 3;
    let restarts = opts.restarts.max(1);
    let max_iterations = 2000 + 1000 * k;

    let runs: Vec<SimplexResult> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let start: Vec<f64> = if r == 0 || k == 0 {
                base.clone()
            } else if r % 2 == 1 {
                base.iter().map(|z| z + rng.gen_range(-0.5..0.5)).collect()
            } else {
                let mut free: Vec<f64> = (0..k).map(|_| rng.gen_range(FRAC_PI_2..PI)).collect();
                free.sort_by(f64::total_cmp);
                params_from_free(&free)
            };
            minimize(
                |z| -objective(&free_from_params(z), opts.quad_tol),
                &start,
                0.5,
                max_iterations,
                |s| angle_diameter(s) < opts.tol,
            )
        })
        .collect();

    let best = (0..runs.len())
        .min_by(|&a, &b| runs[a].f.total_cmp(&runs[b].f).then(a.cmp(&b)))
        .expect("at least one restart");
    let value = -runs[best].f;
    let restart_values: Vec<f64> = runs.iter().map(|r| -r.f).collect();
    let agreeing = restart_values.iter().filter(|v| (value - *v).abs() <= opts.agree_tol * value).count();
    let converged = runs[best].converged && (agreeing >= 2 || restarts == 1 || k == 0);

    let argmax = RealRootConfig::gauge_fixed(&free_from_params(&runs[best].x))?;
    let distance_to_fstar = orbit_distance(&argmax, &fstar)?;
    Ok(MnEstimate {
        n,
        value,
        argmax_config: argmax,
        optimizer_report: OptimizerReport {
            iterations: runs.iter().map(|r| r.iterations).sum(),
            evaluations: runs.iter().map(|r| r.evaluations).sum(),
            restarts,
            converged,
            restart_values,
        },
        distance_to_fstar,
    })
}

/// Minimum over the `2n` gauge images of `config` of the max-norm distance
/// to `target`'s free directions.
pub fn orbit_distance(config: &RealRootConfig, target: &RealRootConfig) -> Result<f64> {
    let n = config.degree();
    let mut best = f64::INFINITY;
    for start in 0..n {
        for reflect in [false, true] {
            let img = gauge_fix(config.angles(), start, reflect)?;
            let d = img
                .free_angles()
                .iter()
                .zip(target.free_angles())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            best = best.min(d);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub mn_estimate: f64,
    pub fstar_invariant: f64,
    /// `mn_estimate - fstar_invariant`; positive beyond optimiser noise
    /// would contradict extremality of `F_n^*`.
    pub fstar_excess: f64,
    /// `mn_estimate - 2 pi`.
    pub gap_to_two_pi: f64,
    /// Strictly below the previous row's estimate (true for the first row).
    pub monotone: bool,
    pub above_two_pi: bool,
    pub converged: bool,
    pub distance_to_fstar: f64,
}

pub fn conjecture_report(n_max: usize, opts: &ExtremalOptions) -> Result<Vec<ConjectureRow>> {
    if n_max < 3 {
        return Err(Error::InvalidArgument("n_max must be >= 3".into()));
    }
    let mut rows: Vec<ConjectureRow> = Vec::new();
    for n in 3..=n_max {
        let est = estimate_mn(n, opts)?;
        let fstar_invariant = invariant(&make_fstar(n as u32)?, DEFAULT_TOL)?.value;
        let monotone = rows.last().is_none_or(|prev| est.value < prev.mn_estimate);
        rows.push(ConjectureRow {
            n,
            mn_estimate: est.value,
            fstar_invariant,
            fstar_excess: est.value - fstar_invariant,
            gap_to_two_pi: est.value - TWO_PI,
            monotone,
            above_two_pi: est.value > TWO_PI,
            converged: est.optimizer_report.converged,
            distance_to_fstar: est.distance_to_fstar,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(RealRootConfig::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(matches!(
            RealRootConfig::new(vec![0.0, 1.0, 1.0 + 1e-13]),
            Err(Error::DegenerateAngles(..))
        ));
        assert!(RealRootConfig::new(vec![0.0, 1.0, 4.0]).is_err());
        assert!(RealRootConfig::gauge_fixed(&[1.0]).is_err());
        let c = RealRootConfig::gauge_fixed(&[2.0, 3.0]).unwrap();
        assert!(c.is_gauge_fixed());
        assert_eq!(c.free_angles(), &[2.0, 3.0]);
    }

    #[test]
    fn parameterisation_round_trip() {
        let free = [1.7, 2.2, 2.25, 3.0];
        let back = free_from_params(&params_from_free(&free));
        for (a, b) in free.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
        let pts = free_from_params(&[40.0, -40.0, 0.0]);
        assert!(pts.windows(2).all(|w| w[1] - w[0] >= MIN_SEPARATION * 0.999));
        assert!(pts[0] > FRAC_PI_2 && *pts.last().unwrap() < PI);
    }

    #[test]
    fn gauge_pins_three_consecutive_roots() {
        let angles = [0.2, 0.9, 1.4, 2.5, 3.0];
        let g = gauge_fix(&angles, 1, false).unwrap();
        assert!(g.is_gauge_fixed());
        assert_eq!(g.degree(), 5);
    }

    #[test]
    fn cubic_gauge_is_xy_x_minus_y() {
        let f = form_from_angles(&RealRootConfig::gauge_fixed(&[]).unwrap()).unwrap();
        // (-Y)(s X - s Y)(X) with s = sqrt(2)/2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = [0.0, -s, s, 0.0];
        for (a, w) in f.complex_coeffs().iter().zip(want) {
            assert!((a.re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn n3_has_nothing_to_optimise() {
        let est = estimate_mn(3, &ExtremalOptions { restarts: 2, ..Default::default() }).unwrap();
        assert!(est.optimizer_report.converged);
        assert_eq!(est.optimizer_report.iterations, 0);
        assert!((est.value - 15.899_748_752_569_05).abs() < 1e-8);
    }
}
