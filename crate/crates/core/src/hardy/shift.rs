use crate::quat::Quaternion;
use crate::series::SliceSeries;

use super::{inner_product, szego_kernel, BallPoint};

/// Pieces of `f = e_a ⟨f, e_a⟩ + B_a * S_a f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftParts {
    /// `⟨f, e_a⟩`.
    pub coefficient: Quaternion,
    /// Standard remainder `f - e_a ⟨f, e_a⟩`.
    pub remainder: SliceSeries,
    /// Reduced remainder `S_a f`.
    pub shifted: SliceSeries,
}

/// Hyperbolic backward shift `S_a f = B_a^{-*} * (f - e_a ⟨f, e_a⟩)`.
pub fn backward_shift(f: &SliceSeries, a: BallPoint) -> SliceSeries {
    backward_shift_parts(f, a).shifted
}

/// Backward shift together with the kernel coefficient and the standard remainder.
///
/// The division by `B_a` never forms the series of `B_a^{-*}`. Writing
/// `B_a = (1 - q conj(a))^{-*} * (a - q) u`, the quotient `y = u S_a f` solves
/// `(a - q) * y = h` with `h = (1 - q conj(a)) * r`. For a polynomial `r` of degree `N`
/// the quotient is a polynomial of degree `N`, and the recurrence
/// `y_{n-1} = a y_n - h_n`, run downward from `y_{N+1} = 0`, damps errors by `|a|`
/// per step.
pub fn backward_shift_parts(f: &SliceSeries, a: BallPoint) -> ShiftParts {
    let order = f.order();
    let kernel = szego_kernel(a, order);
    let coefficient = inner_product(f, &kernel);
    let remainder = f.sub(&kernel.mul_right(coefficient));
    let r = remainder.coeffs();

    let av = a.value();
    let shifted = if av.is_zero() {
        // B_0 = q: drop the (vanishing) constant term.
        SliceSeries::new(r[1..].to_vec()).with_order(order)
    } else {
        let ab = av.conj();
        // h_n = r_n - conj(a) r_{n-1}, n = 0 ..= N + 1
        let h = |n: usize| -> Quaternion {
            let cur = if n <= order { r[n] } else { Quaternion::ZERO };
            let prev = if n >= 1 { ab * r[n - 1] } else { Quaternion::ZERO };
            cur - prev
        };
        let mut y = vec![Quaternion::ZERO; order + 1];
        let mut next = Quaternion::ZERO; // y_{N+1}
        for n in (1..=order + 1).rev() {
            let cur = av * next - h(n);
            y[n - 1] = cur;
            next = cur;
        }
        let u_inv = (av * (1.0 / av.norm())).conj();
        SliceSeries::new(y.into_iter().map(|c| u_inv * c).collect())
    };

    ShiftParts {
        coefficient,
        remainder,
        shifted,
    }
}
