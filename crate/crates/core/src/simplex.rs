//! Derivative-free Nelder-Mead refinement for the low-dimensional
//! measurement-angle objectives. Deterministic: no randomized restarts.

/// Stopping rules for the simplex search.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop when the simplex value spread falls below this.
    pub ftol: f64,
    /// Hard iteration cap.
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { ftol: 1e-8, max_iter: 200 }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Minimize `f` starting from `start`, with per-coordinate initial steps.
pub fn minimize<F>(mut f: F, start: &[f64], steps: &[f64], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(start.len(), steps.len());
    let dim = start.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(start.to_vec());
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += steps[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if (values[worst] - values[best]).abs() < opts.ftol {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for &idx in order.iter().take(dim) {
            for d in 0..dim {
                centroid[d] += simplex[idx][d];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let reflect: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + alpha * (centroid[d] - simplex[worst][d]))
            .collect();
        let f_reflect = f(&reflect);

        if f_reflect < values[best] {
            let expand: Vec<f64> = (0..dim)
                .map(|d| centroid[d] + gamma * (reflect[d] - centroid[d]))
                .collect();
            let f_expand = f(&expand);
            if f_expand < f_reflect {
                simplex[worst] = expand;
                values[worst] = f_expand;
            } else {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            }
            continue;
        }
        if f_reflect < values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = f_reflect;
            continue;
        }

        let contract: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + rho * (simplex[worst][d] - centroid[d]))
            .collect();
        let f_contract = f(&contract);
        if f_contract < values[worst] {
            simplex[worst] = contract;
            values[worst] = f_contract;
            continue;
        }

        // Shrink toward the best vertex.
        let best_point = simplex[best].clone();
        for idx in 0..=dim {
            if idx == best {
                continue;
            }
            for d in 0..dim {
                simplex[idx][d] = best_point[d] + sigma * (simplex[idx][d] - best_point[d]);
            }
            values[idx] = f(&simplex[idx]);
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if values[i] < values[best] {
            best = i;
        }
    }
    SimplexResult { x: simplex[best].clone(), value: values[best], iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_a_shifted_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 0.5).powi(2) + 3.0;
        let res = minimize(f, &[0.0, 0.0], &[0.3, 0.3], SimplexOptions::default());
        assert!((res.value - 3.0).abs() < 1e-7);
        assert!((res.x[0] - 1.5).abs() < 1e-3);
        assert!((res.x[1] + 0.5).abs() < 1e-3);
    }

    #[test]
    fn minimizes_rosenbrock_reasonably() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let res = minimize(
            f,
            &[-1.0, 1.0],
            &[0.5, 0.5],
            SimplexOptions { ftol: 1e-12, max_iter: 2000 },
        );
        assert!(res.value < 1e-6, "rosenbrock value {}", res.value);
    }

    #[test]
    fn respects_iteration_cap() {
        let f = |x: &[f64]| x[0].powi(2);
        let res = minimize(f, &[10.0], &[0.1], SimplexOptions { ftol: 0.0, max_iter: 5 });
        assert!(res.iterations <= 5);
    }
}
