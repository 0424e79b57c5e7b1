/// Outcome of one Nelder-Mead run (minimisation).
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Standard Nelder-Mead with reflection 1, expansion 2, contraction 1/2
/// and shrink 1/2. `converged(simplex)` decides termination.
pub fn minimize<F, C>(
    f: F,
    start: &[f64],
    step: f64,
    max_iterations: usize,
    converged: C,
) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
    C: Fn(&[Vec<f64>]) -> bool,
{
    let dim = start.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() { f64::INFINITY } else { v }
    };
    if dim == 0 {
        let v = eval(start);
        return SimplexResult { x: Vec::new(), f: v, iterations: 0, evaluations, converged: true };
    }

    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    let mut iterations = 0;
    let mut done = false;
    while iterations < max_iterations {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if converged(&simplex) {
            done = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|v| v[k]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[dim]).map(|(c, w)| c + t * (w - c)).collect()
        };

        let reflected = along(-1.0);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[dim] = expanded;
                values[dim] = fe;
            } else {
                simplex[dim] = reflected;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            simplex[dim] = reflected;
            values[dim] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[dim] {
            let c = along(-0.5);
            let fc = eval(&c);
            (c, fc)
        } else {
            let c = along(0.5);
            let fc = eval(&c);
            (c, fc)
        };
        if fc < values[dim].min(fr) {
            simplex[dim] = contracted;
            values[dim] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=dim {
            simplex[i] = best.iter().zip(&simplex[i]).map(|(b, v)| b + 0.5 * (v - b)).collect();
            values[i] = eval(&simplex[i]);
        }
    }
    let best = (0..=dim).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    SimplexResult {
        x: simplex[best].clone(),
        f: values[best],
        iterations,
        evaluations,
        converged: done,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diameter(s: &[Vec<f64>]) -> f64 {
        s.iter()
            .flat_map(|a| s.iter().map(move |b| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)))
            .fold(0.0, f64::max)
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let r = minimize(f, &[-1.2, 1.0], 0.5, 5000, |s| diameter(s) < 1e-9);
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn one_dimensional_quadratic() {
        let r = minimize(|x| (x[0] - 3.0).powi(2), &[0.0], 1.0, 500, |s| diameter(s) < 1e-10);
        assert!((r.x[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn zero_dimensional() {
        let r = minimize(|_| 4.0, &[], 1.0, 10, |_| true);
        assert_eq!(r.f, 4.0);
        assert!(r.converged);
    }
}
