//! Derivative-free Nelder-Mead minimization.

/// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). After the simplex collapses it is rebuilt
/// around the best point and the search continues until a restart brings no
/// further improvement.
#[derive(Debug, Clone)]
pub struct NelderMead {
    pub max_evaluations: usize,
    /// Convergence when every vertex lies within this infinity-norm distance of the best.
    pub x_tol: f64,
    /// Improvement below which a restart is considered unproductive.
    pub f_tol: f64,
    pub initial_step: f64,
    pub max_restarts: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_evaluations: 100_000,
            x_tol: 1e-10,
            f_tol: 1e-15,
            initial_step: 1.0,
            max_restarts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let mut evaluations = 0;
        let mut best_x = x0.to_vec();
        let mut best_f = f(&best_x);
        evaluations += 1;
        if x0.is_empty() {
            return Minimum {
                x: best_x,
                value: best_f,
                evaluations,
                converged: true,
            };
        }
        let mut converged = false;
        for _ in 0..=self.max_restarts {
            let budget = self.max_evaluations.saturating_sub(evaluations);
            let (x, value, used, ok) = self.run(&mut f, &best_x, best_f, budget);
            evaluations += used;
            let improvement = best_f - value;
            if value <= best_f {
                best_x = x;
                best_f = value;
            }
            converged = ok;
            if !ok || improvement.is_nan() || improvement <= self.f_tol {
                break;
            }
        }
        Minimum {
            x: best_x,
            value: best_f,
            evaluations,
            converged,
        }
    }

    fn run<F: FnMut(&[f64]) -> f64>(
        &self,
        f: &mut F,
        x0: &[f64],
        f0: f64,
        budget: usize,
    ) -> (Vec<f64>, f64, usize, bool) {
        let n = x0.len();
        let mut used = 0;
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), f0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.initial_step;
            let fx = f(&x);
            used += 1;
            simplex.push((x, fx));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let diameter = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter <= self.x_tol {
                let (x, fx) = simplex.swap_remove(0);
                return (x, fx, used, true);
            }
            if used >= budget {
                let (x, fx) = simplex.swap_remove(0);
                return (x, fx, used, false);
            }

            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let worst = simplex[n].clone();
            let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

            let xr = along(1.0);
            let fr = f(&xr);
            used += 1;
            if fr < simplex[0].1 {
                let xe = along(2.0);
                let fe = f(&xe);
                used += 1;
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            used += 1;
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                for (xi, bi) in vertex.0.iter_mut().zip(&best) {
                    *xi = bi + 0.5 * (*xi - bi);
                }
                vertex.1 = f(&vertex.0);
                used += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = NelderMead::default().minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0]);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-9);
        assert!((m.x[1] + 2.0).abs() < 1e-9);
        assert!(m.value < 1e-18);
    }

    #[test]
    fn rosenbrock() {
        let m = NelderMead::default().minimize(
            |x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
            &[-1.2, 1.0],
        );
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-7, "{m:?}");
        assert!((m.x[1] - 1.0).abs() < 1e-7, "{m:?}");
    }

    #[test]
    fn kinked_one_dimensional() {
        let m = NelderMead::default().minimize(|x| (x[0] - 0.3).abs(), &[5.0]);
        assert!(m.converged);
        assert!((m.x[0] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let nm = NelderMead {
            max_evaluations: 10,
            ..NelderMead::default()
        };
        let m = nm.minimize(|x| x.iter().map(|v| v * v).sum(), &[3.0, 4.0, 5.0]);
        assert!(!m.converged);
        assert!(m.evaluations <= 20);
    }

    #[test]
    fn zero_dimensional() {
        let m = NelderMead::default().minimize(|_| 2.5, &[]);
        assert_eq!(m.value, 2.5);
        assert!(m.converged);
    }
}
