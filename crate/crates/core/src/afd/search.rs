//! Global search for the maximum selection step: a coarse product grid over
//! radii × directions followed by a clipped Nelder–Mead refinement.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hardy::{BallPoint, DEFAULT_RHO_MAX};
use crate::quat::{Quaternion, UnitImaginary};

use super::{objective, AfdState};

/// Remainders with norm below this end the decomposition.
pub const TERMINATION_NORM: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub radial_levels: usize,
    pub sphere_points: usize,
    pub rho_max: f64,
    pub refine_iters: usize,
    pub refine_tol: f64,
    /// Restrict the search to the slice `C_I` instead of the whole ball.
    pub slice: Option<UnitImaginary>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            radial_levels: 24,
            sphere_points: 512,
            rho_max: DEFAULT_RHO_MAX,
            refine_iters: 200,
            refine_tol: 1e-10,
            slice: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rho_max > 0.0 && self.rho_max < 1.0) {
            return Err(crate::Error::Input(format!(
                "rho_max {} must lie in (0, 1)",
                self.rho_max
            )));
        }
        if self.radial_levels == 0 || self.sphere_points == 0 {
            return Err(crate::Error::Input("search grid must be non-empty".into()));
        }
        if self.refine_tol.is_nan() || self.refine_tol < 0.0 {
            return Err(crate::Error::Input("refine_tol must be non-negative".into()));
        }
        Ok(())
    }

    /// Search coordinates to a point of the ball, clipped to `|a| <= rho_max`.
    fn embed(&self, x: &[f64]) -> Quaternion {
        let q = match self.slice {
            Some(i) => i.point(x[0], x[1]),
            None => Quaternion::new(x[0], x[1], x[2], x[3]),
        };
        let n = q.norm();
        if n > self.rho_max {
            q * (self.rho_max / n)
        } else {
            q
        }
    }

    fn coords(&self, q: Quaternion) -> Vec<f64> {
        match self.slice {
            Some(i) => {
                let d = i.direction();
                vec![q.w, q.x * d[0] + q.y * d[1] + q.z * d[2]]
            }
            None => q.to_array().to_vec(),
        }
    }
}

/// Outcome of one maximum-selection search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Selection {
    pub point: BallPoint,
    /// Objective at `point`.
    pub value: f64,
    /// Best value on the coarse grid, before refinement.
    pub grid_value: f64,
    /// The point sits on the `rho_max` shell, so the cap may have excluded the true maximizer.
    pub on_shell: bool,
}

/// Chebyshev-spaced radii in `[0, rho_max]`, both ends included.
pub fn radial_levels(levels: usize, rho_max: f64) -> Vec<f64> {
    if levels <= 1 {
        return vec![0.0];
    }
    let m = (levels - 1) as f64;
    (0..levels)
        .map(|i| rho_max * 0.5 * (1.0 - (std::f64::consts::PI * i as f64 / m).cos()))
        .collect()
}

/// Super-Fibonacci spiral: `n` well-spread unit quaternions on `S^3`.
pub fn sphere_directions(n: usize) -> Vec<Quaternion> {
    const PHI: f64 = std::f64::consts::SQRT_2;
    const PSI: f64 = 1.533_751_168_755_204_3;
    let tau = std::f64::consts::TAU;
    (0..n)
        .map(|i| {
            let s = i as f64 + 0.5;
            let t = s / n as f64;
            let r = t.sqrt();
            let big_r = (1.0 - t).sqrt();
            let alpha = tau * s / PHI;
            let beta = tau * s / PSI;
            Quaternion::new(r * alpha.sin(), r * alpha.cos(), big_r * beta.sin(), big_r * beta.cos())
        })
        .collect()
}

/// All coarse candidates in their fixed evaluation order. The origin appears once.
pub fn candidate_grid(cfg: &SearchConfig) -> Vec<Quaternion> {
    let dirs: Vec<Quaternion> = match cfg.slice {
        Some(i) => (0..cfg.sphere_points)
            .map(|k| i.exp(std::f64::consts::TAU * k as f64 / cfg.sphere_points as f64))
            .collect(),
        None => sphere_directions(cfg.sphere_points),
    };
    let mut out = Vec::with_capacity(cfg.radial_levels * dirs.len());
    for r in radial_levels(cfg.radial_levels, cfg.rho_max) {
        if r == 0.0 {
            out.push(Quaternion::ZERO);
        } else {
            out.extend(dirs.iter().map(|&d| d * r));
        }
    }
    out
}

/// Larger value wins; ties go to the smaller modulus, then to the lexicographically
/// smaller components.
fn better(a: (f64, Quaternion), b: (f64, Quaternion)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => {
            let (na, nb) = (a.1.norm_sqr(), b.1.norm_sqr());
            if na != nb {
                return na < nb;
            }
            a.1.to_array()
                .iter()
                .zip(b.1.to_array())
                .find(|(x, y)| **x != *y)
                .is_some_and(|(x, y)| *x < y)
        }
    }
}

/// Maximizes `|⟨f_n, e_a⟩|` over `|a| <= rho_max`. `None` means the remainder vanished
/// and the decomposition is complete.
pub fn maximize_objective(state: &AfdState, cfg: &SearchConfig) -> Option<Selection> {
    if state.remainder().norm() < TERMINATION_NORM {
        return None;
    }
    let grid = candidate_grid(cfg);
    let eval = |q: Quaternion| -> f64 {
        let v = objective(BallPoint::new(q).expect("grid inside rho_max"), state);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let values: Vec<f64> = grid.par_iter().map(|&q| eval(q)).collect();
    let (mut best_v, mut best_q) = (values[0], grid[0]);
    for (&v, &q) in values.iter().zip(&grid).skip(1) {
        if better((v, q), (best_v, best_q)) {
            best_v = v;
            best_q = q;
        }
    }
    let grid_value = best_v;

    if cfg.refine_iters > 0 {
        let step = cfg.rho_max / cfg.radial_levels.max(2) as f64;
        let (x, v) = nelder_mead(
            |x| -eval(cfg.embed(x)),
            &cfg.coords(best_q),
            step,
            cfg.refine_iters,
            cfg.refine_tol,
        );
        let q = cfg.embed(&x);
        if better((-v, q), (best_v, best_q)) {
            best_v = -v;
            best_q = q;
        }
    }

    Some(Selection {
        point: BallPoint::new(best_q).expect("clipped to rho_max"),
        value: best_v,
        grid_value,
        on_shell: best_q.norm() >= cfg.rho_max * (1.0 - 1e-9),
    })
}

/// Plain Nelder–Mead minimization. Stops after `max_iters` iterations or once every
/// vertex lies within `tol` of the best one.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_iters: usize, tol: f64) -> (Vec<f64>, f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }

    let combine =
        |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect() };

    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max);
        if diameter < tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = combine(&centroid, &worst.0, -REFLECT);
        let fr = f(&reflected);

        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst.0, -EXPAND);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            // outside contraction if the reflection helped at all, inside otherwise
            let target = if fr < worst.1 {
                combine(&centroid, &reflected, CONTRACT)
            } else {
                combine(&centroid, &worst.0, CONTRACT)
            };
            let fc = f(&target);
            if fc < fr.min(worst.1) {
                simplex[n] = (target, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    v.0 = combine(&best, &v.0, SHRINK);
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_are_chebyshev() {
        let r = radial_levels(5, 0.9);
        assert_eq!(r.len(), 5);
        assert_eq!(r[0], 0.0);
        assert!((r[4] - 0.9).abs() < 1e-15);
        assert!((r[2] - 0.45).abs() < 1e-15);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fibonacci_directions_are_unit_and_spread() {
        let d = sphere_directions(512);
        assert!(d.iter().all(|q| (q.norm() - 1.0).abs() < 1e-14));
        // covering radius: every random direction has a close grid neighbor
        let mut r = crate::fixtures::rng(61);
        let mut worst = 0.0f64;
        for _ in 0..2000 {
            let u = crate::fixtures::random_unit_quaternion(&mut r);
            let best = d.iter().map(|q| (*q - u).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        assert!(worst < 0.45, "{worst}");
    }

    #[test]
    fn grid_has_single_origin() {
        let cfg = SearchConfig {
            radial_levels: 4,
            sphere_points: 10,
            ..Default::default()
        };
        let g = candidate_grid(&cfg);
        assert_eq!(g.len(), 1 + 3 * 10);
        assert_eq!(g.iter().filter(|q| q.is_zero()).count(), 1);
        assert!(g.iter().all(|q| q.norm() <= cfg.rho_max + 1e-15));
    }

    #[test]
    fn tie_breaking() {
        let a = Quaternion::new(0.1, 0.0, 0.0, 0.0);
        let b = Quaternion::new(0.0, 0.2, 0.0, 0.0);
        assert!(better((1.0, a), (1.0, b)));
        assert!(!better((1.0, b), (1.0, a)));
        let c = Quaternion::new(0.0, 0.1, 0.0, 0.0);
        assert!(better((1.0, c), (1.0, a)));
        assert!(better((2.0, b), (1.0, a)));
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let target = [0.3, -0.2, 0.1, 0.05];
        let f = |x: &[f64]| x.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        let (x, v) = nelder_mead(f, &[0.0; 4], 0.1, 2000, 1e-12);
        assert!(v < 1e-16);
        for (a, b) in x.iter().zip(&target) {
            assert!((a - b).abs() < 1e-7);
        }
    }

    #[test]
    fn config_json_defaults() {
        let c: SearchConfig = serde_json::from_str(r#"{"rho_max": 0.9}"#).unwrap();
        assert_eq!(c.rho_max, 0.9);
        assert_eq!(c.radial_levels, 24);
        assert!(serde_json::from_str::<SearchConfig>(r#"{"bogus": 1}"#).is_err());
        let bad = SearchConfig {
            rho_max: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
