//! Inner product from boundary samples, averaged over imaginary units.
//!
//! Per slice the boundary average `(1/2π) ∫ conj(g(e^{It})) f(e^{It}) dt` is taken with
//! the uniform trapezoid rule, which is exact once the grid resolves every frequency
//! `n - m` appearing in the product. Slices are then averaged over `I(θ1, θ2)` with
//! weight `sin θ1`, normalized to total mass one.

use rayon::prelude::*;

use crate::quat::{imaginary_from_angles, Quaternion, UnitImaginary};
use crate::series::SliceSeries;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureInner {
    pub value: Quaternion,
    /// `n_t < 2N + 2`; the value may carry aliasing error.
    pub underresolved: bool,
    /// Largest deviation of a single slice value from the weighted mean.
    pub slice_spread: f64,
}

/// Boundary average on the single slice `C_I` with `n_t` uniform nodes.
pub fn slice_inner_product(f: &SliceSeries, g: &SliceSeries, i: UnitImaginary, n_t: usize) -> Quaternion {
    let step = std::f64::consts::TAU / n_t as f64;
    let mut acc = Quaternion::ZERO;
    for k in 0..n_t {
        let z = i.exp(step * k as f64);
        acc += g.eval(z).conj() * f.eval(z);
    }
    acc * (1.0 / n_t as f64)
}

pub fn inner_product_quadrature(f: &SliceSeries, g: &SliceSeries, n_t: usize, n_theta: usize) -> QuadratureInner {
    let n_t = n_t.max(1);
    let n_theta = n_theta.max(1);
    let order = f.order().max(g.order());
    let h = std::f64::consts::PI / n_theta as f64;

    // Midpoint nodes in each angle.
    let nodes: Vec<(f64, f64)> = (0..n_theta)
        .flat_map(|a| (0..n_theta).map(move |b| ((a as f64 + 0.5) * h, (b as f64 + 0.5) * h)))
        .collect();

    let samples: Vec<(f64, Quaternion)> = nodes
        .par_iter()
        .map(|&(t1, t2)| {
            let unit = imaginary_from_angles(t1, t2).expect("midpoints lie inside [0, pi]");
            (t1.sin(), slice_inner_product(f, g, unit, n_t))
        })
        .collect();

    let total: f64 = samples.iter().map(|(w, _)| w).sum();
    let value = samples.iter().fold(Quaternion::ZERO, |acc, &(w, v)| acc + v * w) * (1.0 / total);
    let slice_spread = samples.iter().map(|(_, v)| v.max_abs_diff(value)).fold(0.0, f64::max);

    QuadratureInner {
        value,
        underresolved: n_t < 2 * order + 2,
        slice_spread,
    }
}
