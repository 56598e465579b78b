//! Derivative-free multi-start maximization over real parameter vectors.
//!
//! Restarts are independent; with the `parallel` feature they run on the
//! rayon pool (bounded by `RAYON_NUM_THREADS`), otherwise sequentially.
//! Results are bit-identical across both paths and across thread counts:
//! every restart derives its own RNG from `(seed, restart index)` and the
//! winner is chosen by value with index tie-breaking.

use crate::{CVec, C64};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Nelder-Mead settings.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub max_iter: usize,
    pub xatol: f64,
    pub fatol: f64,
    /// absolute displacement used to build the initial simplex
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_iter: 4000,
            xatol: 1e-10,
            fatol: 1e-12,
            initial_step: 0.25,
        }
    }
}

/// Result of one local search.
#[derive(Debug, Clone)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Standard Nelder-Mead simplex minimization.
pub fn nelder_mead_minimize(
    f: &(impl Fn(&[f64]) -> f64 + ?Sized),
    x0: &[f64],
    opts: &NelderMead,
) -> LocalResult {
    let n = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.initial_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;
        // order ascending by value, stable
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| {
            values[a]
                .partial_cmp(&values[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread_f = (values[n] - values[0]).abs();
        let spread_x = (0..n)
            .map(|j| {
                simplex
                    .iter()
                    .map(|p| (p[j] - simplex[0][j]).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread_f < opts.fatol && spread_x < opts.xatol {
            converged = true;
            break;
        }

        // centroid of all but worst
        let mut centroid = vec![0.0; n];
        for p in simplex.iter().take(n) {
            for j in 0..n {
                centroid[j] += p[j] / n as f64;
            }
        }
        let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
        };

        let reflected = lerp(&centroid, &simplex[n], -alpha);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = lerp(&centroid, &simplex[n], -gamma);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let contracted = if fr < values[n] {
                lerp(&centroid, &simplex[n], -rho)
            } else {
                lerp(&centroid, &simplex[n], rho)
            };
            let fc = f(&contracted);
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                // shrink toward the best vertex
                for i in 1..=n {
                    simplex[i] = lerp(&simplex[0], &simplex[i], sigma);
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    LocalResult {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

/// One multi-start restart: standard-normal start from the restart's own RNG,
/// then a local maximization (implemented as NM on the negated objective).
fn run_restart(
    f: &(impl Fn(&[f64]) -> f64 + Sync + ?Sized),
    dim: usize,
    seed: u64,
    restart: usize,
    opts: &NelderMead,
) -> LocalResult {
    let mut rng = restart_rng(seed, restart);
    let x0: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    let neg = |x: &[f64]| -f(x);
    let mut res = nelder_mead_minimize(&neg, &x0, opts);
    // one polish pass from the found point tightens simplex collapse
    let polish = nelder_mead_minimize(&neg, &res.x, opts);
    if polish.value < res.value {
        res = LocalResult {
            iterations: res.iterations + polish.iterations,
            ..polish
        };
    } else {
        res.iterations += polish.iterations;
    }
    LocalResult {
        value: -res.value,
        ..res
    }
}

/// ChaCha stream for a given restart, independent of execution order.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

// Box-Muller normal; keeps the dependency list short and the stream
// reproducible across platforms.
struct StandardNormal;

impl rand::distributions::Distribution<f64> for StandardNormal {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.gen::<f64>();
            let v: f64 = rng.gen::<f64>();
            if u > f64::MIN_POSITIVE {
                return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
            }
        }
    }
}

/// Outcome of a multi-start maximization.
#[derive(Debug, Clone)]
pub struct MultiStartResult {
    pub best: LocalResult,
    pub best_restart: usize,
    pub per_restart_values: Vec<f64>,
    pub total_iterations: usize,
    pub all_converged: bool,
}

fn pick_best(results: Vec<LocalResult>) -> MultiStartResult {
    let mut best_idx = 0;
    for i in 1..results.len() {
        if results[i].value > results[best_idx].value {
            best_idx = i;
        }
    }
    MultiStartResult {
        best: results[best_idx].clone(),
        best_restart: best_idx,
        per_restart_values: results.iter().map(|r| r.value).collect(),
        total_iterations: results.iter().map(|r| r.iterations).sum(),
        all_converged: results.iter().all(|r| r.converged),
    }
}

/// Sequential multi-start maximization (always available).
pub fn multi_start_maximize_seq(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    restarts: usize,
    seed: u64,
    opts: &NelderMead,
) -> MultiStartResult {
    let results: Vec<LocalResult> = (0..restarts)
        .map(|r| run_restart(f, dim, seed, r, opts))
        .collect();
    pick_best(results)
}

/// Parallel multi-start maximization over the rayon pool.
#[cfg(feature = "parallel")]
pub fn multi_start_maximize_par(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    restarts: usize,
    seed: u64,
    opts: &NelderMead,
) -> MultiStartResult {
    use rayon::prelude::*;
    let results: Vec<LocalResult> = (0..restarts)
        .into_par_iter()
        .map(|r| run_restart(f, dim, seed, r, opts))
        .collect();
    pick_best(results)
}

/// Multi-start maximization; parallel when the `parallel` feature is on.
pub fn multi_start_maximize(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    restarts: usize,
    seed: u64,
    opts: &NelderMead,
) -> MultiStartResult {
    #[cfg(feature = "parallel")]
    {
        multi_start_maximize_par(f, dim, restarts, seed, opts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        multi_start_maximize_seq(f, dim, restarts, seed, opts)
    }
}

/// Map a real parameter vector of length `2D - 1` to a normalized complex
/// amplitude vector with the global phase fixed (first amplitude real).
pub fn params_to_state(x: &[f64]) -> Option<CVec> {
    debug_assert!(x.len() % 2 == 1);
    let d = (x.len() + 1) / 2;
    let mut c = CVec::zeros(d);
    c[0] = C64::new(x[0], 0.0);
    for j in 1..d {
        c[j] = C64::new(x[2 * j - 1], x[2 * j]);
    }
    let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return None;
    }
    Some(c / C64::new(norm, 0.0))
}

/// Number of real parameters for a D-dimensional state.
pub fn param_dim(state_dim: usize) -> usize {
    2 * state_dim - 1
}

/// Simple parallel/sequential map used by grid sweeps.
pub fn map_points<T: Send + Sync, U: Send>(
    points: Vec<T>,
    f: impl Fn(T) -> U + Sync + Send,
) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.into_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 2.0).powi(2) + 0.5;
        let r = nelder_mead_minimize(&f, &[0.0, 0.0], &NelderMead::default());
        assert_abs_diff_eq!(r.x[0], 1.5, epsilon = 1e-6);
        assert_abs_diff_eq!(r.x[1], -2.0, epsilon = 1e-6);
        assert!(r.converged);
    }

    #[test]
    fn multistart_maximizes_multimodal() {
        // two peaks, the higher one at x = 3
        let f = |x: &[f64]| {
            let a = (-((x[0] + 2.0) * (x[0] + 2.0))).exp();
            let b = 2.0 * (-((x[0] - 3.0) * (x[0] - 3.0))).exp();
            a + b
        };
        let r = multi_start_maximize(&f, 1, 24, 42, &NelderMead::default());
        assert_abs_diff_eq!(r.best.value, 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.best.x[0], 3.0, epsilon = 1e-5);
    }

    #[test]
    fn deterministic_across_paths() {
        let f = |x: &[f64]| -(x[0] * x[0]) - (x[1] - 1.0).powi(2);
        let a = multi_start_maximize_seq(&f, 2, 8, 7, &NelderMead::default());
        #[cfg(feature = "parallel")]
        {
            let b = multi_start_maximize_par(&f, 2, 8, 7, &NelderMead::default());
            assert_eq!(a.per_restart_values, b.per_restart_values);
            assert_eq!(a.best.x, b.best.x);
        }
        let c = multi_start_maximize_seq(&f, 2, 8, 7, &NelderMead::default());
        assert_eq!(a.per_restart_values, c.per_restart_values);
    }

    #[test]
    fn params_round_trip_norm() {
        let x = vec![0.3, -0.2, 0.9, 0.1, 0.4];
        let c = params_to_state(&x).unwrap();
        let n: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(n, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c[0].im, 0.0);
        assert!(params_to_state(&[0.0, 0.0, 0.0]).is_none());
    }
}
