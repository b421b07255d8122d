//! Real quaternions and the slice decomposition `q = x + yI`.
//!
//! The basis is `{1, e1, e2, e3}` with `e_i e_j + e_j e_i = -2 δ_ij` and
//! `e3 = e1 e2`, i.e. the Hamilton product. Every quaternion lies on some
//! complex slice `C_I = span{1, I}` where `I` is a unit imaginary quaternion.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A quaternion `w + x e1 + y e2 + z e3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Imaginary part as a pure quaternion.
    #[inline]
    pub fn imag(self) -> Self {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self == Quaternion::ZERO
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::Domain("quaternion inverse of zero".into()));
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Inverse without the zero check. Callers guarantee `self != 0`.
    #[inline]
    pub(crate) fn inv_unchecked(self) -> Self {
        self.conj() * (1.0 / self.norm_sqr())
    }

    /// `by^{-1} self by`: the rotation of `self` inside its sphere `[self]`.
    #[inline]
    pub fn conjugated_by(self, by: Quaternion) -> Self {
        by.inv_unchecked() * self * by
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self * (1.0 / s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Quaternion::from_array)
    }
}

/// Hamilton product as a free function.
#[inline]
pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

#[inline]
pub fn qinv(q: Quaternion) -> Result<Quaternion> {
    q.inv()
}

/// A unit imaginary quaternion `I`, so that `I^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitImaginary([f64; 3]);

impl UnitImaginary {
    pub const E1: UnitImaginary = UnitImaginary([1.0, 0.0, 0.0]);
    pub const E2: UnitImaginary = UnitImaginary([0.0, 1.0, 0.0]);
    pub const E3: UnitImaginary = UnitImaginary([0.0, 0.0, 1.0]);

    /// Normalizes `v`; fails for the zero vector.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Domain("imaginary unit needs a nonzero direction".into()));
        }
        Ok(UnitImaginary([v[0] / n, v[1] / n, v[2] / n]))
    }

    pub fn direction(self) -> [f64; 3] {
        self.0
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.0[0], self.0[1], self.0[2])
    }

    /// `x + y I`.
    #[inline]
    pub fn point(self, x: f64, y: f64) -> Quaternion {
        Quaternion::new(x, y * self.0[0], y * self.0[1], y * self.0[2])
    }

    /// `e^{It} = cos t + I sin t`.
    #[inline]
    pub fn exp(self, t: f64) -> Quaternion {
        let (s, c) = t.sin_cos();
        self.point(c, s)
    }
}

impl Serialize for UnitImaginary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitImaginary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; 3]>::deserialize(d)?;
        UnitImaginary::new(v).map_err(serde::de::Error::custom)
    }
}

/// `q = x + yI` with `y >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub xcoord: f64,
    pub ycoord: f64,
    pub unit: UnitImaginary,
}

impl SlicePoint {
    pub fn reassemble(&self) -> Quaternion {
        self.unit.point(self.xcoord, self.ycoord)
    }
}

/// Splits `q` into its real part, the modulus of its imaginary part and the
/// imaginary direction. Real input gets `I = e1`.
pub fn slice_decompose(q: Quaternion) -> SlicePoint {
    let y = q.imag_norm();
    let unit = if y == 0.0 {
        UnitImaginary::E1
    } else {
        UnitImaginary([q.x / y, q.y / y, q.z / y])
    };
    SlicePoint {
        xcoord: q.w,
        ycoord: y,
        unit,
    }
}

/// `I(θ) = e1 cos θ1 + e2 sin θ1 cos θ2 + e3 sin θ1 sin θ2`, both angles in `[0, π]`.
pub fn imaginary_from_angles(theta1: f64, theta2: f64) -> Result<UnitImaginary> {
    let range = 0.0..=std::f64::consts::PI;
    if !range.contains(&theta1) || !range.contains(&theta2) {
        return Err(Error::Domain(format!("angles ({theta1}, {theta2}) outside [0, pi]")));
    }
    let (s1, c1) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    Ok(UnitImaginary([c1, s1 * c2, s1 * s2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn basis_products() {
        assert_eq!(Quaternion::E1 * Quaternion::E2, Quaternion::E3);
        assert_eq!(Quaternion::E2 * Quaternion::E1, -Quaternion::E3);
        for e in [Quaternion::E1, Quaternion::E2, Quaternion::E3] {
            assert_eq!(e * e, -Quaternion::ONE);
        }
        let q = Quaternion::new(0.3, -1.0, 2.0, 0.5);
        assert_eq!(Quaternion::ONE * q, q);
    }

    #[test]
    fn distributive_expansion() {
        // (1 + e1)(1 + e2) = 1 + e1 + e2 + e3
        let p = Quaternion::ONE + Quaternion::E1;
        let q = Quaternion::ONE + Quaternion::E2;
        assert_eq!(p * q, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn inverses() {
        assert_eq!(qinv(Quaternion::real(2.0)).unwrap(), Quaternion::real(0.5));
        assert_eq!(qinv(Quaternion::E1).unwrap(), -Quaternion::E1);
        let q = Quaternion::ONE + Quaternion::E1;
        assert!(close(qinv(q).unwrap(), Quaternion::new(0.5, -0.5, 0.0, 0.0), 1e-16));
        assert!(matches!(qinv(Quaternion::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn decomposition_examples() {
        let s = slice_decompose(Quaternion::new(1.0, 0.0, 2.0, 0.0));
        assert_eq!((s.xcoord, s.ycoord, s.unit), (1.0, 2.0, UnitImaginary::E2));

        let s = slice_decompose(Quaternion::real(3.0));
        assert_eq!((s.xcoord, s.ycoord, s.unit), (3.0, 0.0, UnitImaginary::E1));

        let s = slice_decompose(Quaternion::E1 + Quaternion::E2);
        let r = 0.5f64.sqrt();
        assert_eq!(s.xcoord, 0.0);
        assert!((s.ycoord - 2f64.sqrt()).abs() < 1e-15);
        let d = s.unit.direction();
        assert!((d[0] - r).abs() < 1e-15 && (d[1] - r).abs() < 1e-15 && d[2] == 0.0);
    }

    #[test]
    fn angle_parametrization() {
        assert_eq!(imaginary_from_angles(0.0, 1.3).unwrap(), UnitImaginary::E1);
        let i = imaginary_from_angles(FRAC_PI_2, 0.0).unwrap().as_quaternion();
        assert!(close(i, Quaternion::E2, 1e-15));
        let i = imaginary_from_angles(FRAC_PI_2, FRAC_PI_2).unwrap().as_quaternion();
        assert!(close(i, Quaternion::E3, 1e-15));
        assert!(imaginary_from_angles(-0.1, 0.0).is_err());
        assert!(imaginary_from_angles(0.0, PI + 0.1).is_err());
    }

    #[test]
    fn serializes_as_array() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 0.25);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-2.0,0.5,0.25]");
        assert_eq!(serde_json::from_str::<Quaternion>(&s).unwrap(), q);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }

        #[test]
        fn associative_and_distributive(p in quat(), q in quat(), r in quat()) {
            let scale = p.norm() * q.norm() * r.norm() + 1.0;
            prop_assert!(close((p * q) * r, p * (q * r), 1e-12 * scale));
            let scale = p.norm() * (q.norm() + r.norm()) + 1.0;
            prop_assert!(close(p * (q + r), p * q + p * r, 1e-12 * scale));
        }

        #[test]
        fn decompose_reassemble(a in prop::array::uniform4(-1.0f64..1.0)) {
            let q = Quaternion::from_array(a);
            let back = slice_decompose(q).reassemble();
            prop_assert!(close(back, q, 1e-15));
        }

        #[test]
        fn angles_give_square_root_of_minus_one(t1 in 0.0..=PI, t2 in 0.0..=PI) {
            let i = imaginary_from_angles(t1, t2).unwrap().as_quaternion();
            prop_assert!(close(i * i, -Quaternion::ONE, 1e-14));
        }

        #[test]
        fn inverse_both_sides(q in quat()) {
            prop_assume!(q.norm() > 1e-3);
            let inv = q.inv().unwrap();
            prop_assert!(close(inv * q, Quaternion::ONE, 1e-13));
            prop_assert!(close(q * inv, Quaternion::ONE, 1e-13));
        }
    }
}
