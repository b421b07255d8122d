//! Slice Blaschke factors `B_a(q) = (1 - q conj(a))^{-*} * (a - q) a/|a|` and their products.
//!
//! `B_0` is taken to be `q`: the unit `a/|a|` is undefined at the origin and `q` keeps a
//! zero at `0` and unimodular boundary values.

use crate::quat::Quaternion;
use crate::series::{SliceSeries, ZERO_TOL};

use super::BallPoint;

#[inline]
fn unit_of(a: Quaternion) -> Quaternion {
    a * (1.0 / a.norm())
}

/// Series of `B_a` truncated at `order`: `c_0 = a u`, `c_n = (conj(a)^n a - conj(a)^{n-1}) u`
/// with `u = a/|a|`.
pub fn blaschke_factor(a: BallPoint, order: usize) -> SliceSeries {
    let av = a.value();
    if av.is_zero() {
        return SliceSeries::monomial(1, Quaternion::ONE, order.max(1)).with_order(order);
    }
    let u = unit_of(av);
    let ab = av.conj();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(av * u);
    let mut prev = Quaternion::ONE; // conj(a)^{n-1}
    for _ in 1..=order {
        let cur = prev * ab;
        coeffs.push((cur * av - prev) * u);
        prev = cur;
    }
    SliceSeries::new(coeffs)
}

/// Pointwise `B_a(q)` through the reciprocal twist: with `h(q) = 1 - q conj(a)`,
/// `q^ = h^c(q)^{-1} q h^c(q)` and `B_a(q) = h(q^)^{-1} (a - q^) u`.
///
/// No truncation is involved, so this stays exact up to rounding on the boundary.
pub fn blaschke_eval(a: BallPoint, q: Quaternion) -> Quaternion {
    let av = a.value();
    if av.is_zero() {
        return q;
    }
    // h^c(q) = 1 - q a never vanishes on the closed ball since |q a| < 1.
    let hc = Quaternion::ONE - q * av;
    let hat = q.conjugated_by(hc);
    let h_hat = Quaternion::ONE - hat * av.conj();
    h_hat.inv_unchecked() * (av - hat) * unit_of(av)
}

/// Pointwise `B_a^c(q)`.
///
/// `B_a = (1/h^s) * P u` with the real-coefficient `h^s = 1 - 2Re(a) q + |a|^2 q^2` and
/// `P = (1 - q a) * (a - q) = a - q(1 + a^2) + q^2 a`. Conjugation leaves `1/h^s`
/// alone and real-coefficient factors act pointwise, so
/// `B_a^c(q) = h^s(q)^{-1} Σ q^i conj(p_i u)`.
pub fn blaschke_conj_eval(a: BallPoint, q: Quaternion) -> Quaternion {
    let av = a.value();
    if av.is_zero() {
        return q;
    }
    let u = unit_of(av);
    let p0 = (av * u).conj();
    let p1 = ((Quaternion::ONE + av * av) * u).conj() * -1.0;
    let p2 = p0;
    let poly = p0 + q * (p1 + q * p2);
    let hs = Quaternion::ONE - q * (2.0 * av.w) + q * q * av.norm_sqr();
    hs.inv_unchecked() * poly
}

/// `B_{a_1} * ... * B_{a_k}`; the empty product is `1`.
pub fn blaschke_product(params: &[BallPoint], order: usize) -> SliceSeries {
    params.iter().fold(SliceSeries::one(order), |acc, &a| {
        acc.star_mul(&blaschke_factor(a, order))
    })
}

/// Pointwise value of `B_{a_1} * ... * B_{a_k}` at `q`, composed factor by factor with
/// `(F * G)(q) = F(q) G(F(q)^{-1} q F(q))`.
pub fn blaschke_product_eval(params: &[BallPoint], q: Quaternion) -> Quaternion {
    compose(params.iter().copied(), q, blaschke_eval)
}

/// Pointwise value of `(B_{a_1} * ... * B_{a_k})^c = B_{a_k}^c * ... * B_{a_1}^c` at `q`.
pub fn blaschke_product_conj_eval(params: &[BallPoint], q: Quaternion) -> Quaternion {
    compose(params.iter().rev().copied(), q, blaschke_conj_eval)
}

fn compose(
    factors: impl Iterator<Item = BallPoint>,
    q: Quaternion,
    eval: impl Fn(BallPoint, Quaternion) -> Quaternion,
) -> Quaternion {
    let mut value = Quaternion::ONE;
    let mut point = q;
    for a in factors {
        let w = eval(a, point);
        if w.norm() <= ZERO_TOL {
            return Quaternion::ZERO;
        }
        value = value * w;
        point = point.conjugated_by(w);
    }
    value
}
