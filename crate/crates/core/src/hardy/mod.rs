//! The slice Hardy space `H^2(B)` over the quaternionic unit ball.
//!
//! Functions are [`SliceSeries`]; the inner product reduces to the coefficient sum
//! `⟨f, g⟩ = Σ conj(b_n) a_n` because the boundary integral on any slice kills every
//! cross term `e^{Ikt}`, `k != 0`. The quadrature form in [`quadrature`] computes the
//! same quantity from boundary samples and is kept as an independent check.

mod blaschke;
pub mod quadrature;
mod shift;
mod tm;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::SliceSeries;

pub use blaschke::{
    blaschke_conj_eval, blaschke_eval, blaschke_factor, blaschke_product, blaschke_product_conj_eval,
    blaschke_product_eval,
};
pub use quadrature::{inner_product_quadrature, slice_inner_product, QuadratureInner};
pub use shift::{backward_shift, backward_shift_parts, ShiftParts};
pub use tm::TmSystem;

/// Default cap on kernel parameters selected by the greedy search.
pub const DEFAULT_RHO_MAX: f64 = 0.95;

/// A point of the open unit ball, used as a kernel / Blaschke parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BallPoint(Quaternion);

impl BallPoint {
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if n.is_nan() || n >= 1.0 {
            return Err(Error::Domain(format!("parameter {q} not inside the unit ball")));
        }
        Ok(BallPoint(q))
    }

    pub const ORIGIN: BallPoint = BallPoint(Quaternion::ZERO);

    #[inline]
    pub fn value(self) -> Quaternion {
        self.0
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    /// `sqrt(1 - |a|^2)`.
    #[inline]
    pub fn weight(self) -> f64 {
        (1.0 - self.0.norm_sqr()).sqrt()
    }
}

impl<'de> Deserialize<'de> for BallPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = Quaternion::deserialize(d)?;
        BallPoint::new(q).map_err(serde::de::Error::custom)
    }
}

/// `⟨f, g⟩ = Σ conj(b_n) a_n`. Right-linear in `f`.
pub fn inner_product(f: &SliceSeries, g: &SliceSeries) -> Quaternion {
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + b.conj() * a)
}

/// Normalized Szegő kernel `e_a(q) = sqrt(1-|a|^2) (1 - q conj(a))^{-*}`,
/// with coefficients `sqrt(1-|a|^2) conj(a)^n`.
pub fn szego_kernel(a: BallPoint, order: usize) -> SliceSeries {
    let w = a.weight();
    let ab = a.value().conj();
    let mut pow = Quaternion::real(w);
    let mut coeffs = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        coeffs.push(pow);
        pow = pow * ab;
    }
    SliceSeries::new(coeffs)
}

/// A boundary function `Σ_{k in Z} e^{Ikt} c_k` given by its two-sided Fourier
/// coefficients. `negative[j]` is the coefficient of `e^{-I(j+1)t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySignal {
    pub negative: Vec<Quaternion>,
    pub nonnegative: Vec<Quaternion>,
}

impl BoundarySignal {
    pub fn norm(&self) -> f64 {
        self.negative
            .iter()
            .chain(&self.nonnegative)
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn project(&self) -> SliceSeries {
        szego_projection(&self.negative, &self.nonnegative)
    }
}

/// Orthogonal projection of `L^2` of the boundary onto `H^2(B)`: keep the
/// non-negative modes, discard the rest.
pub fn szego_projection(_neg_coeffs: &[Quaternion], pos_coeffs: &[Quaternion]) -> SliceSeries {
    SliceSeries::new(pos_coeffs.to_vec())
}
