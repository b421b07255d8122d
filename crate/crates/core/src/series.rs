//! Truncated quaternionic power series `f(q) = Σ q^n a_n` and the `*`-product calculus.
//!
//! Coefficients sit to the right of the powers of `q`. Binary operations return a series
//! at the larger of the two input orders; modes above that order are dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitImaginary};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 256;

/// Values with modulus at or below this are treated as zero in the pointwise
/// `*`-product formulas.
pub const ZERO_TOL: f64 = 1e-13;

/// Truncated power series with right quaternionic coefficients `a_0 ..= a_N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct SliceSeries {
    coeffs: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    trunc_order: usize,
    coeffs: Vec<Quaternion>,
}

impl TryFrom<SeriesRepr> for SliceSeries {
    type Error = Error;

    fn try_from(r: SeriesRepr) -> Result<Self> {
        if r.coeffs.len() > r.trunc_order + 1 {
            return Err(Error::Input(format!(
                "{} coefficients exceed trunc_order {}",
                r.coeffs.len(),
                r.trunc_order
            )));
        }
        Ok(SliceSeries::new(r.coeffs).with_order(r.trunc_order))
    }
}

impl From<SliceSeries> for SeriesRepr {
    fn from(s: SliceSeries) -> Self {
        SeriesRepr {
            trunc_order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl SliceSeries {
    /// Series from its coefficients; an empty list is the zero constant.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Quaternion::ZERO);
        }
        SliceSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        SliceSeries {
            coeffs: vec![Quaternion::ZERO; order + 1],
        }
    }

    pub fn constant(c: Quaternion, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Quaternion::ONE, order)
    }

    /// `q^k c`, padded to `order` (which must be at least `k`).
    pub fn monomial(k: usize, c: Quaternion, order: usize) -> Self {
        let mut s = Self::zero(order.max(k));
        s.coeffs[k] = c;
        s
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Quaternion> {
        self.coeffs
    }

    /// Zero-pads or truncates to the given order.
    pub fn with_order(mut self, order: usize) -> Self {
        self.coeffs.resize(order + 1, Quaternion::ZERO);
        self
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `H^2` norm, `sqrt(Σ |a_n|^2)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Largest componentwise deviation between coefficient lists (missing modes are zero).
    pub fn max_abs_diff(&self, other: &SliceSeries) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| self.coeff(k).max_abs_diff(other.coeff(k)))
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &SliceSeries) -> SliceSeries {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SliceSeries) -> SliceSeries {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &SliceSeries, op: impl Fn(Quaternion, Quaternion) -> Quaternion) -> SliceSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        SliceSeries {
            coeffs: (0..n).map(|k| op(self.coeff(k), other.coeff(k))).collect(),
        }
    }

    /// `f(q) λ`: right scalar multiplication, the module action of `H^2`.
    pub fn mul_right(&self, lambda: Quaternion) -> SliceSeries {
        SliceSeries {
            coeffs: self.coeffs.iter().map(|&c| c * lambda).collect(),
        }
    }

    /// `λ * f`, the `*`-product with the constant `λ` on the left.
    pub fn mul_left(&self, lambda: Quaternion) -> SliceSeries {
        SliceSeries {
            coeffs: self.coeffs.iter().map(|&c| lambda * c).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> SliceSeries {
        SliceSeries {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// `(f * g)_n = Σ_k a_k b_{n-k}`, at the larger of the two orders.
    pub fn star_mul(&self, other: &SliceSeries) -> SliceSeries {
        let order = self.order().max(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=order)
            .map(|n| {
                let lo = n.saturating_sub(b.len() - 1);
                let hi = n.min(a.len() - 1);
                let mut acc = Quaternion::ZERO;
                for k in lo..=hi {
                    acc += a[k] * b[n - k];
                }
                acc
            })
            .collect();
        SliceSeries { coeffs }
    }

    /// `f^c(q) = Σ q^n conj(a_n)`.
    pub fn regular_conj(&self) -> SliceSeries {
        SliceSeries {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `f^s = f * f^c`. Its coefficients are real up to rounding.
    pub fn symmetrize(&self) -> SliceSeries {
        self.star_mul(&self.regular_conj())
    }

    /// `f^{-*} = (1 / f^s) f^c`, as a series at the same order.
    ///
    /// Requires `a_0 != 0`; a series vanishing at the origin has no power-series
    /// reciprocal there and the caller has to factor out `q` first.
    pub fn regular_reciprocal(&self) -> Result<SliceSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "reciprocal has no power-series expansion at 0 (a_0 = 0)".into(),
            ));
        }
        let sym: Vec<f64> = self.symmetrize().coeffs.iter().map(|c| c.w).collect();
        let inv_sym = invert_real_series(&sym);
        let out = real_star_mul(&inv_sym, &self.regular_conj().coeffs);
        if out.iter().any(|c| !c.is_finite()) {
            return Err(Error::Overflow("regular reciprocal coefficients overflowed".into()));
        }
        Ok(SliceSeries { coeffs: out })
    }

    /// Left-nested Horner evaluation `a_0 + q(a_1 + q(a_2 + ...))`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = q * acc + c;
        }
        acc
    }

    /// `f^c(q)` without materializing the conjugate series.
    pub fn eval_conj(&self, q: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = q * acc + c.conj();
        }
        acc
    }
}

/// `1/s` for a real power series with `s_0 != 0`.
fn invert_real_series(s: &[f64]) -> Vec<f64> {
    let inv0 = 1.0 / s[0];
    let mut out = Vec::with_capacity(s.len());
    out.push(inv0);
    for n in 1..s.len() {
        let acc: f64 = (1..=n).map(|k| s[k] * out[n - k]).sum();
        out.push(-acc * inv0);
    }
    out
}

fn real_star_mul(r: &[f64], b: &[Quaternion]) -> Vec<Quaternion> {
    let order = r.len().max(b.len()) - 1;
    (0..=order)
        .map(|n| {
            let mut acc = Quaternion::ZERO;
            for k in 0..=n {
                if k < r.len() && n - k < b.len() {
                    acc += b[n - k] * r[k];
                }
            }
            acc
        })
        .collect()
}

/// A point together with its rotation inside the same sphere `[q]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistedPoint {
    pub original: Quaternion,
    pub twisted: Quaternion,
}

impl TwistedPoint {
    /// `by^{-1} q by`; `by` must be nonzero.
    pub fn new(q: Quaternion, by: Quaternion) -> Self {
        TwistedPoint {
            original: q,
            twisted: q.conjugated_by(by),
        }
    }
}

/// Pointwise value of `f * g` at `q`: `f(q) g(q~)` with `q~ = f(q)^{-1} q f(q)`,
/// or zero when `f(q)` vanishes.
pub fn eval_star_pointwise(f: &SliceSeries, g: &SliceSeries, q: Quaternion) -> Quaternion {
    let fq = f.eval(q);
    if fq.norm() <= ZERO_TOL {
        return Quaternion::ZERO;
    }
    let tw = TwistedPoint::new(q, fq);
    fq * g.eval(tw.twisted)
}

/// Pointwise value of `f^{-*} * g` at `q`: `f(q^)^{-1} g(q^)` with
/// `q^ = f^c(q)^{-1} q f^c(q)`.
///
/// Fails on the zero set of `f^s`, reported as the sphere `[q]`.
pub fn eval_reciprocal_star(f: &SliceSeries, g: &SliceSeries, q: Quaternion) -> Result<Quaternion> {
    let on_zero_sphere = || {
        Error::Domain(format!(
            "point lies on the zero set of f^s: sphere [x = {}, |y| = {}]",
            q.w,
            q.imag_norm()
        ))
    };
    let fc = f.eval_conj(q);
    if fc.norm() <= ZERO_TOL {
        // f^s = f^c * f vanishes wherever f^c does.
        return Err(on_zero_sphere());
    }
    let hat = TwistedPoint::new(q, fc).twisted;
    let f_hat = f.eval(hat);
    // |f^s(q)| = |f^c(q)| |f(q^)|
    if fc.norm() * f_hat.norm() <= ZERO_TOL {
        return Err(on_zero_sphere());
    }
    Ok(f_hat.inv_unchecked() * g.eval(hat))
}

/// Value at `x + yJ` reconstructed from the two conjugate values on slice `I`.
pub fn slice_extension_eval(f: &SliceSeries, x: f64, y: f64, i: UnitImaginary, j: UnitImaginary) -> Quaternion {
    let plus = f.eval(i.point(x, y));
    let minus = f.eval(i.point(x, -y));
    let ji = j.as_quaternion() * i.as_quaternion();
    (plus + minus) * 0.5 + ji * ((minus - plus) * 0.5)
}
